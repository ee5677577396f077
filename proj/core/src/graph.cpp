#include "skillnet/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace skillnet {
namespace {

constexpr std::size_t kPairWarnThreshold = 200;

std::uint64_t pack_pair(int u, int v) {
  // Callers guarantee u < v.
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

void finish_adjacency(SkillGraph& graph,
                      const std::unordered_map<std::uint64_t, int>& weights) {
  graph.adjacency.assign(graph.names.size(), {});
  for (const auto& [key, weight] : weights) {
    const int u = static_cast<int>(key >> 32);
    const int v = static_cast<int>(key & 0xffffffffu);
    graph.adjacency[static_cast<std::size_t>(u)].push_back({v, weight});
    graph.adjacency[static_cast<std::size_t>(v)].push_back({u, weight});
  }
  for (auto& neighbors : graph.adjacency) {
    std::sort(neighbors.begin(), neighbors.end());
  }
  graph.edge_count = weights.size();
}

}  // namespace

SkillGraph build_graph(const AdSkillMatrix& matrix,
                       const std::function<void(const std::string&)>& warn) {
  SkillGraph graph;

  // Dense node ids for matched columns, preserving lexicon order.
  std::vector<int> node_of_column(matrix.column_count(), -1);
  for (std::size_t c = 0; c < matrix.column_count(); ++c) {
    if (matrix.column_totals[c] > 0) {
      node_of_column[c] = static_cast<int>(graph.names.size());
      graph.names.push_back(matrix.skill_names[c]);
      graph.occurrence_counts.push_back(matrix.column_totals[c]);
    }
  }

  std::unordered_map<std::uint64_t, int> weights;
  std::vector<int> present;  // node ids in the current ad, ascending
  for (std::size_t r = 0; r < matrix.row_count(); ++r) {
    const auto& row = matrix.rows[r];
    present.clear();
    for (const auto& [column, count] : row) {
      (void)count;  // any nonzero count means co-presence
      present.push_back(node_of_column[static_cast<std::size_t>(column)]);
    }
    if (present.size() > kPairWarnThreshold && warn) {
      std::ostringstream msg;
      msg << "ad \"" << matrix.ad_ids[r] << "\" mentions " << present.size()
          << " distinct skills; generating "
          << present.size() * (present.size() - 1) / 2 << " pair updates";
      warn(msg.str());
    }
    for (std::size_t i = 0; i < present.size(); ++i) {
      for (std::size_t j = i + 1; j < present.size(); ++j) {
        ++weights[pack_pair(present[i], present[j])];
      }
    }
  }

  finish_adjacency(graph, weights);
  return graph;
}

SkillGraph make_skill_graph(std::vector<std::string> names,
                            const std::vector<WeightedEdge>& edges,
                            std::vector<std::int64_t> occurrence_counts) {
  SkillGraph graph;
  graph.names = std::move(names);
  if (occurrence_counts.empty()) {
    occurrence_counts.assign(graph.names.size(), 1);
  } else if (occurrence_counts.size() != graph.names.size()) {
    throw std::invalid_argument(
        "make_skill_graph: occurrence_counts size does not match node count");
  }
  graph.occurrence_counts = std::move(occurrence_counts);

  const int n = static_cast<int>(graph.names.size());
  std::unordered_map<std::uint64_t, int> weights;
  for (const WeightedEdge& edge : edges) {
    if (edge.a < 0 || edge.a >= n || edge.b < 0 || edge.b >= n) {
      throw std::invalid_argument("make_skill_graph: node id out of range");
    }
    if (edge.a == edge.b) {
      throw std::invalid_argument("make_skill_graph: self-loops not allowed");
    }
    if (edge.weight < 1) {
      throw std::invalid_argument("make_skill_graph: edge weight must be >= 1");
    }
    const auto key = pack_pair(std::min(edge.a, edge.b), std::max(edge.a, edge.b));
    if (!weights.emplace(key, edge.weight).second) {
      throw std::invalid_argument("make_skill_graph: duplicate edge");
    }
  }
  finish_adjacency(graph, weights);
  return graph;
}

MacroStats macro_measures(const SkillGraph& graph) {
  MacroStats stats;
  stats.node_count = graph.node_count();
  stats.edge_count = graph.edge_count;
  const double n = static_cast<double>(stats.node_count);
  const double e = static_cast<double>(stats.edge_count);
  if (stats.node_count >= 1) {
    stats.average_degree = 2.0 * e / n;
  }
  if (stats.node_count >= 2) {
    stats.density = 2.0 * e / (n * (n - 1.0));
  }
  return stats;
}

}  // namespace skillnet
