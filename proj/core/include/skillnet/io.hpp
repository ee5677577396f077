#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "skillnet/centrality.hpp"
#include "skillnet/community.hpp"
#include "skillnet/graph.hpp"
#include "skillnet/matrix.hpp"
#include "skillnet/reports.hpp"

namespace skillnet {

/// Quotes a CSV field when it contains a comma, quote, or newline; embedded
/// quotes are doubled.
std::string csv_escape(std::string_view field);

/// Splits one CSV line into fields, honoring quoted fields with doubled
/// quotes. Throws std::runtime_error on unbalanced quoting.
std::vector<std::string> split_csv_line(std::string_view line);

/// Shortest decimal representation that round-trips the double (matches the
/// JSON serializer), e.g. 0.5 -> "0.5", 1/3 -> "0.3333333333333333".
std::string format_double(double value);

/// 64-bit FNV-1a over a byte sequence / a file's bytes. The file variant
/// throws std::runtime_error when the file cannot be read.
std::uint64_t fnv1a_bytes(std::string_view bytes);
std::uint64_t fnv1a_file(const std::filesystem::path& path);

// --- workdir artifacts -----------------------------------------------------

/// Sparse triplet matrix cache: header `ad_id,skill_canonical,count`, one
/// line per nonzero cell, rows in corpus order, cells in column order.
void write_matrix_csv(const std::filesystem::path& path,
                      const AdSkillMatrix& matrix);

/// Rebuilds the matrix from a triplet cache given the full row and column
/// universes (zero-match ads leave no triplet lines, so the universes must
/// come from the corpus and lexicon caches). Throws on unknown ids/skills,
/// duplicate cells, or counts < 1.
AdSkillMatrix read_matrix_csv(const std::filesystem::path& path,
                              std::vector<std::string> ad_ids,
                              std::vector<std::string> skill_names);

/// Weighted edge list: header `skill_a,skill_b,weight`, skill_a < skill_b
/// lexicographically per line, lines sorted the same way.
void write_edge_list(const std::filesystem::path& path, const SkillGraph& graph);

/// Node list companion: header `skill,occurrence_count`, node id order.
void write_node_list(const std::filesystem::path& path, const SkillGraph& graph);

/// Reconstructs a graph from the edge-list/node-list pair; node ids follow
/// node-list line order, so a round trip reproduces the graph exactly.
SkillGraph read_graph(const std::filesystem::path& edges_path,
                      const std::filesystem::path& nodes_path);

/// Per-measure score file: header `skill,score`, node id order, full
/// precision.
void write_scores_csv(const std::filesystem::path& path, const SkillGraph& graph,
                      const CentralityScores& scores);

/// Reads one score file back for the given graph (names must match node
/// order). The presentation flags are not stored in the file, so the caller
/// supplies the measure; flags default to false.
CentralityScores read_scores_csv(const std::filesystem::path& path,
                                 const SkillGraph& graph,
                                 CentralityMeasure measure);

/// Community assignments: header `skill,community_id`, node id order.
void write_assignments_csv(const std::filesystem::path& path,
                           const SkillGraph& graph, const Partition& partition);

/// Reads assignments back for the given graph (names must match node order).
Partition read_assignments_csv(const std::filesystem::path& path,
                               const SkillGraph& graph);

/// Community label file: `community_id,label` lines; `#` comments, blank
/// lines, and an optional literal header are skipped.
std::map<int, std::string> load_labels(const std::filesystem::path& path);

// --- human-readable tables (values rounded at presentation only) -----------

std::string format_stats_table(const MacroStats& stats);
std::string format_topk_table(const std::vector<CentralityRanking>& rankings);
std::string format_profiles_table(const std::vector<CommunityProfile>& profiles);
std::string format_coverage_table(const CoverageReport& report);
std::string format_trend_table(const TrendReport& report);

}  // namespace skillnet
