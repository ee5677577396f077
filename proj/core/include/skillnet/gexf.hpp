#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skillnet/centrality.hpp"
#include "skillnet/community.hpp"
#include "skillnet/graph.hpp"

namespace skillnet {

/// Escapes text for XML attribute/content positions.
std::string xml_escape(std::string_view text);

/// Writes a GEXF 1.2 document (static, undirected) with skill names as node
/// labels and edge weights preserved. When given, the partition becomes an
/// integer "community" node attribute and each score set a double attribute
/// named after its measure.
void write_gexf(const std::filesystem::path& path, const SkillGraph& graph,
                const Partition* partition = nullptr,
                const std::vector<CentralityScores>& scores = {});

/// Graph export targets understood by the CLI.
enum class ExportFormat { gexf, edgelist_csv, report_json };

/// Parses "gexf", "edgelist-csv" or "report-json".
std::optional<ExportFormat> parse_export_format(std::string_view name);

/// Comma-separated list of the supported format names, for error messages.
std::string_view supported_export_formats();

}  // namespace skillnet
