#include "skillnet/gexf.hpp"

#include <fstream>
#include <stdexcept>

#include "skillnet/io.hpp"

namespace skillnet {

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

void write_gexf(const std::filesystem::path& path, const SkillGraph& graph,
                const Partition* partition,
                const std::vector<CentralityScores>& scores) {
  if (partition && partition->assignment.size() != graph.node_count()) {
    throw std::invalid_argument("partition does not cover every graph node");
  }
  for (const CentralityScores& score_set : scores) {
    if (score_set.scores.size() != graph.node_count()) {
      throw std::invalid_argument("scores do not cover every graph node");
    }
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
      << "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n";

  const bool has_attributes = partition != nullptr || !scores.empty();
  if (has_attributes) {
    out << "    <attributes class=\"node\">\n";
    int attribute_id = 0;
    if (partition) {
      out << "      <attribute id=\"" << attribute_id++
          << "\" title=\"community\" type=\"integer\"/>\n";
    }
    for (const CentralityScores& score_set : scores) {
      out << "      <attribute id=\"" << attribute_id++ << "\" title=\""
          << to_string(score_set.measure) << "\" type=\"double\"/>\n";
    }
    out << "    </attributes>\n";
  }

  out << "    <nodes>\n";
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    out << "      <node id=\"" << v << "\" label=\"" << xml_escape(graph.names[v])
        << "\"";
    if (!has_attributes) {
      out << "/>\n";
      continue;
    }
    out << ">\n        <attvalues>\n";
    int attribute_id = 0;
    if (partition) {
      out << "          <attvalue for=\"" << attribute_id++ << "\" value=\""
          << partition->assignment[v] << "\"/>\n";
    }
    for (const CentralityScores& score_set : scores) {
      out << "          <attvalue for=\"" << attribute_id++ << "\" value=\""
          << format_double(score_set.scores[v]) << "\"/>\n";
    }
    out << "        </attvalues>\n      </node>\n";
  }
  out << "    </nodes>\n";

  out << "    <edges>\n";
  std::size_t edge_id = 0;
  for (std::size_t u = 0; u < graph.node_count(); ++u) {
    for (const auto& [v, weight] : graph.adjacency[u]) {
      if (static_cast<int>(u) < v) {
        out << "      <edge id=\"" << edge_id++ << "\" source=\"" << u
            << "\" target=\"" << v << "\" weight=\"" << weight << "\"/>\n";
      }
    }
  }
  out << "    </edges>\n  </graph>\n</gexf>\n";

  out.flush();
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

std::optional<ExportFormat> parse_export_format(std::string_view name) {
  if (name == "gexf") return ExportFormat::gexf;
  if (name == "edgelist-csv") return ExportFormat::edgelist_csv;
  if (name == "report-json") return ExportFormat::report_json;
  return std::nullopt;
}

std::string_view supported_export_formats() {
  return "gexf, edgelist-csv, report-json";
}

}  // namespace skillnet
