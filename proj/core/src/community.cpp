#include "skillnet/community.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace skillnet {
namespace louvain_detail {

LevelGraph from_graph(const SkillGraph& graph) {
  LevelGraph level;
  const std::size_t n = graph.node_count();
  level.adjacency.assign(n, {});
  level.self_loops.assign(n, 0.0);
  level.weighted_degree.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    double degree = 0.0;
    level.adjacency[v].reserve(graph.adjacency[v].size());
    for (const auto& [u, weight] : graph.adjacency[v]) {
      const double w = static_cast<double>(weight);
      level.adjacency[v].push_back({u, w});
      degree += w;
      if (static_cast<int>(v) < u) {
        level.total_weight += w;
      }
    }
    level.weighted_degree[v] = degree;
  }
  return level;
}

double level_modularity(const LevelGraph& level,
                        const std::vector<int>& assignment) {
  const std::size_t n = level.node_count();
  if (assignment.size() != n) {
    throw std::invalid_argument(
        "modularity: assignment does not cover every node");
  }
  for (int c : assignment) {
    if (c < 0) {
      throw std::invalid_argument("modularity: negative community id");
    }
  }
  const double w = level.total_weight;
  if (w <= 0.0) {
    throw std::invalid_argument(
        "modularity is undefined on an edgeless graph (total weight 0)");
  }

  // Ordered keys keep the final sum's evaluation order deterministic.
  std::map<int, double> degree_sum;
  std::map<int, double> intra_weight;
  for (std::size_t v = 0; v < n; ++v) {
    degree_sum[assignment[v]] += level.weighted_degree[v];
    intra_weight[assignment[v]] += level.self_loops[v];
    for (const auto& [u, weight] : level.adjacency[v]) {
      if (static_cast<int>(v) < u &&
          assignment[v] == assignment[static_cast<std::size_t>(u)]) {
        intra_weight[assignment[v]] += weight;
      }
    }
  }

  double q = 0.0;
  for (const auto& [community, degree] : degree_sum) {
    const double fraction = degree / (2.0 * w);
    q += intra_weight[community] / w - fraction * fraction;
  }
  return q;
}

LevelGraph aggregate(const LevelGraph& level, const std::vector<int>& assignment,
                     int community_count) {
  LevelGraph next;
  next.adjacency.assign(static_cast<std::size_t>(community_count), {});
  next.self_loops.assign(static_cast<std::size_t>(community_count), 0.0);
  next.weighted_degree.assign(static_cast<std::size_t>(community_count), 0.0);

  std::map<std::pair<int, int>, double> cross;
  for (std::size_t v = 0; v < level.node_count(); ++v) {
    const int cv = assignment[v];
    next.self_loops[static_cast<std::size_t>(cv)] += level.self_loops[v];
    for (const auto& [u, weight] : level.adjacency[v]) {
      if (static_cast<int>(v) >= u) {
        continue;  // each edge once
      }
      const int cu = assignment[static_cast<std::size_t>(u)];
      if (cu == cv) {
        next.self_loops[static_cast<std::size_t>(cv)] += weight;
      } else {
        cross[{std::min(cv, cu), std::max(cv, cu)}] += weight;
      }
    }
  }
  for (const auto& [pair, weight] : cross) {
    next.adjacency[static_cast<std::size_t>(pair.first)].push_back(
        {pair.second, weight});
    next.adjacency[static_cast<std::size_t>(pair.second)].push_back(
        {pair.first, weight});
    next.total_weight += weight;
  }
  for (auto& neighbors : next.adjacency) {
    std::sort(neighbors.begin(), neighbors.end());
  }
  for (std::size_t c = 0; c < next.adjacency.size(); ++c) {
    double degree = 2.0 * next.self_loops[c];
    for (const auto& [u, weight] : next.adjacency[c]) {
      (void)u;
      degree += weight;
    }
    next.weighted_degree[c] = degree;
    next.total_weight += next.self_loops[c];
  }
  return next;
}

}  // namespace louvain_detail

namespace {

// Hand-rolled Fisher-Yates with a modulo draw: std::shuffle and the standard
// distributions are implementation-defined, and the visit order must be the
// same on every platform for a given seed.
void shuffle_order(std::vector<int>& order, std::mt19937_64& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
}

std::vector<int> renumber_by_first_appearance(const std::vector<int>& assignment,
                                              int* community_count) {
  std::unordered_map<int, int> remap;
  std::vector<int> dense(assignment.size());
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    const auto [it, inserted] =
        remap.emplace(assignment[v], static_cast<int>(remap.size()));
    (void)inserted;
    dense[v] = it->second;
  }
  *community_count = static_cast<int>(remap.size());
  return dense;
}

struct OneLevelResult {
  std::vector<int> assignment;  // dense ids, first-appearance order
  int community_count = 0;
};

OneLevelResult one_level(const louvain_detail::LevelGraph& level,
                         std::mt19937_64& rng, const LouvainOptions& options) {
  const std::size_t n = level.node_count();
  const double w = level.total_weight;

  std::vector<int> assignment(n);
  std::vector<double> community_degree(n);  // S(c), indexed by community id
  for (std::size_t v = 0; v < n; ++v) {
    assignment[v] = static_cast<int>(v);
    community_degree[v] = level.weighted_degree[v];
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle_order(order, rng);

  bool moved = true;
  while (moved) {
    moved = false;
    for (int v : order) {
      const int old_c = assignment[static_cast<std::size_t>(v)];
      const double d_v = level.weighted_degree[static_cast<std::size_t>(v)];

      // Link weight from v into each adjacent community (self-loops travel
      // with v and cancel out of the gain, so they are not links).
      std::map<int, double> link;
      for (const auto& [u, weight] :
           level.adjacency[static_cast<std::size_t>(v)]) {
        link[assignment[static_cast<std::size_t>(u)]] += weight;
      }

      // Evaluate joins with v removed from its community. Gains are compared
      // through the common-denominator numerator 2w^2 * gain(c) =
      // 2w*link(c) - S(c)*d_v: with integer edge weights every operand is an
      // exactly represented integer (until ~2^53), so equal gains compare
      // equal and the tie rule below is exact. Comparing the divided-out
      // gains instead lets two equal rationals round differently, which
      // accepts zero-gain moves on rounding dust and can cycle this sweep
      // loop forever.
      community_degree[static_cast<std::size_t>(old_c)] -= d_v;
      const auto join_numerator = [&](int community, double link_weight) {
        return 2.0 * w * link_weight -
               community_degree[static_cast<std::size_t>(community)] * d_v;
      };
      const auto old_link = link.find(old_c);
      const double rejoin_numerator = join_numerator(
          old_c, old_link == link.end() ? 0.0 : old_link->second);

      int best_c = old_c;
      double best_numerator = rejoin_numerator;
      // Ascending community-id order plus strict improvement implements the
      // tie rule: equal gain keeps the current community, and among equal
      // newcomers the lowest id is reached first.
      for (const auto& [community, link_weight] : link) {
        if (community == old_c) {
          continue;
        }
        const double numerator = join_numerator(community, link_weight);
        if (numerator > best_numerator) {
          best_numerator = numerator;
          best_c = community;
        }
      }

      community_degree[static_cast<std::size_t>(best_c)] += d_v;
      if (best_c != old_c) {
        assignment[static_cast<std::size_t>(v)] = best_c;
        moved = true;
        if (options.on_move) {
          options.on_move(level, assignment,
                          LouvainMove{v, old_c, best_c,
                                      (best_numerator - rejoin_numerator) /
                                          (2.0 * w * w)});
        }
      }
    }
  }

  OneLevelResult result;
  result.assignment = renumber_by_first_appearance(assignment,
                                                   &result.community_count);
  return result;
}

}  // namespace

double modularity(const SkillGraph& graph, const std::vector<int>& assignment) {
  if (graph.edge_count == 0) {
    throw std::invalid_argument(
        "modularity is undefined on an edgeless graph (total weight 0)");
  }
  return louvain_detail::level_modularity(louvain_detail::from_graph(graph),
                                          assignment);
}

Partition partition_from_assignment(const SkillGraph& graph,
                                    const std::vector<int>& assignment) {
  Partition partition;
  partition.modularity = modularity(graph, assignment);  // validates coverage
  partition.assignment =
      renumber_by_first_appearance(assignment, &partition.community_count);
  return partition;
}

Partition louvain(const SkillGraph& graph, std::uint64_t seed,
                  const LouvainOptions& options) {
  if (graph.edge_count == 0) {
    throw std::invalid_argument(
        "community detection requires a graph with at least one edge");
  }
  if (options.restarts < 1) {
    throw std::invalid_argument("louvain requires restarts >= 1");
  }

  const louvain_detail::LevelGraph base = louvain_detail::from_graph(graph);
  std::mt19937_64 rng(seed);

  Partition best;
  for (int restart = 0; restart < options.restarts; ++restart) {
    louvain_detail::LevelGraph level = base;
    std::vector<int> membership(graph.node_count());
    std::iota(membership.begin(), membership.end(), 0);

    for (;;) {
      const OneLevelResult result = one_level(level, rng, options);
      if (result.community_count == static_cast<int>(level.node_count())) {
        break;  // aggregation would change nothing
      }
      for (int& community : membership) {
        community = result.assignment[static_cast<std::size_t>(community)];
      }
      level = louvain_detail::aggregate(level, result.assignment,
                                        result.community_count);
    }

    Partition candidate = partition_from_assignment(graph, membership);
    if (restart == 0 || candidate.modularity > best.modularity) {
      best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace skillnet
