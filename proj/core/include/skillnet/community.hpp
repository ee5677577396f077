#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "skillnet/graph.hpp"

namespace skillnet {

/// A disjoint community assignment over all graph nodes. Community ids are
/// dense integers 0..community_count-1, each id non-empty, numbered by first
/// appearance in node order.
struct Partition {
  std::vector<int> assignment;  // node id -> community id
  int community_count = 0;
  double modularity = 0.0;
};

/// Weighted Newman modularity Q = sum_c [ W_in(c)/W - (S(c)/2W)^2 ] at
/// resolution 1, where W is the total edge weight, W_in(c) the intra-community
/// weight and S(c) the total weighted degree inside c. Community ids in
/// `assignment` may be any non-negative integers. Throws std::invalid_argument
/// on an edgeless graph (W = 0 leaves Q undefined) or an assignment that does
/// not cover every node.
double modularity(const SkillGraph& graph, const std::vector<int>& assignment);

/// Renumbers an arbitrary non-negative assignment densely by first appearance
/// in node order and computes its modularity. Same errors as modularity().
Partition partition_from_assignment(const SkillGraph& graph,
                                    const std::vector<int>& assignment);

namespace louvain_detail {

/// Aggregated weighted graph used between coarsening rounds. Self-loop weight
/// (folded intra-community weight) counts once in total_weight and twice in a
/// node's weighted degree; neighbor lists never contain the node itself.
struct LevelGraph {
  std::vector<std::vector<std::pair<int, double>>> adjacency;
  std::vector<double> self_loops;
  std::vector<double> weighted_degree;
  double total_weight = 0.0;  // W: each edge once, each self-loop once

  std::size_t node_count() const { return adjacency.size(); }
};

/// Lifts a SkillGraph (no self-loops) into level form.
LevelGraph from_graph(const SkillGraph& graph);

/// Modularity of a level graph under `assignment`; self-loops are always
/// intra-community weight.
double level_modularity(const LevelGraph& level,
                        const std::vector<int>& assignment);

/// Collapses every community to a super-node: intra-community weight becomes
/// the super-node's self-loop, inter-community weights are summed.
/// `assignment` must use dense ids 0..community_count-1.
LevelGraph aggregate(const LevelGraph& level, const std::vector<int>& assignment,
                     int community_count);

}  // namespace louvain_detail

/// One accepted relocation during a coarsening round's local-move phase.
struct LouvainMove {
  int node = 0;      // node id within the level graph
  int from = 0;      // community before the move
  int to = 0;        // community after the move
  double gain = 0.0; // incremental modularity gain the algorithm computed
};

struct LouvainOptions {
  /// Number of independent coarsening runs; the best-modularity result wins
  /// (ties: the earliest run). The greedy sweep is order-dependent and a
  /// single visit order can land in a poor local optimum on small graphs, so
  /// a handful of restarts buys a lot of quality for near-zero cost. Must be
  /// >= 1.
  int restarts = 8;

  /// Invoked after every accepted move (in any restart) with the level graph
  /// and the level assignment as it stands after the move. Lets tests
  /// recompute modularity from scratch and confirm the incremental gain.
  /// Leave empty in production; the callback makes each move O(graph).
  std::function<void(const louvain_detail::LevelGraph&, const std::vector<int>&,
                     const LouvainMove&)>
      on_move;
};

/// Two-phase greedy modularity maximization. Phase 1 starts from singleton
/// communities and sweeps nodes in a seed-shuffled order, moving each to the
/// neighboring community with the largest positive modularity gain (ties:
/// keep the current community when it is tied, otherwise the lowest community
/// id) until a full pass moves nothing. Phase 2 aggregates communities to
/// super-nodes. The two phases repeat until aggregation changes nothing. The
/// whole procedure runs `options.restarts` times with successive seed-derived
/// visit orders, and the flattened node-level partition with the highest
/// modularity is returned. Deterministic for a fixed (graph, seed, restarts);
/// single-threaded by contract. Throws std::invalid_argument on an edgeless
/// graph or restarts < 1.
Partition louvain(const SkillGraph& graph, std::uint64_t seed = 42,
                  const LouvainOptions& options = {});

}  // namespace skillnet
