#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "skillnet/matrix.hpp"

namespace skillnet {

/// Weighted undirected skill co-occurrence network. Nodes are the skills
/// with at least one corpus occurrence, densely numbered in lexicon order;
/// an edge's weight is the number of ads where both endpoint skills appear.
/// No self-loops; isolated nodes are permitted. Immutable after build.
struct SkillGraph {
  std::vector<std::string> names;                 // node id -> canonical name
  std::vector<std::int64_t> occurrence_counts;    // node id -> total mentions
  // adjacency[v] holds (neighbor, weight) pairs sorted by neighbor id; every
  // edge appears in both endpoint lists with the same weight.
  std::vector<std::vector<std::pair<int, int>>> adjacency;
  std::size_t edge_count = 0;

  std::size_t node_count() const { return names.size(); }
  std::size_t degree(int v) const {
    return adjacency[static_cast<std::size_t>(v)].size();
  }
};

/// Network-level measures: average_degree = 2E/N and density = 2E/(N(N-1)).
/// Both are 0 for graphs too small for the formula (N = 0, resp. N < 2).
struct MacroStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double average_degree = 0.0;
  double density = 0.0;
};

/// An explicit edge for constructing graphs directly (tests, tools).
struct WeightedEdge {
  int a = 0;
  int b = 0;
  int weight = 1;
};

/// Builds the co-occurrence graph: for every ad and every unordered pair of
/// skills present in it, the pair's edge weight gains 1. Ads mentioning more
/// than 200 distinct skills trigger `warn` (quadratic pair blowup) but are
/// still processed. `warn` may be empty.
SkillGraph build_graph(const AdSkillMatrix& matrix,
                       const std::function<void(const std::string&)>& warn = {});

/// Assembles a graph from explicit nodes and edges. Throws
/// std::invalid_argument on self-loops, duplicate edges, out-of-range node
/// ids, or weights < 1. `occurrence_counts` defaults to all-1 when empty.
SkillGraph make_skill_graph(std::vector<std::string> names,
                            const std::vector<WeightedEdge>& edges,
                            std::vector<std::int64_t> occurrence_counts = {});

/// Computes MacroStats with the exact formulas; rounding is left to
/// presentation code.
MacroStats macro_measures(const SkillGraph& graph);

}  // namespace skillnet
