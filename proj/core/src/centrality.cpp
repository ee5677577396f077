#include "skillnet/centrality.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <thread>

namespace skillnet {
namespace {

// Sources are processed in fixed chunks whose partial results merge in chunk
// order, so floating-point sums are bit-identical for any thread count.
constexpr std::size_t kReductionChunks = 16;

unsigned resolve_threads(unsigned requested) {
  if (requested == 0) {
    requested = std::thread::hardware_concurrency();
  }
  return std::max(1u, requested);
}

void for_each_chunk(std::size_t chunk_count, unsigned threads,
                    const std::function<void(std::size_t)>& run_chunk) {
  threads = std::min<std::size_t>(threads, chunk_count);
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunk_count; ++c) {
      run_chunk(c);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= chunk_count) {
          return;
        }
        run_chunk(c);
      }
    });
  }
  for (std::thread& worker : pool) {
    worker.join();
  }
}

// One Brandes source sweep on hop-count distances; adds dependencies into
// `accum`.
void brandes_source_bfs(const SkillGraph& graph, int source,
                        std::vector<double>& accum) {
  const std::size_t n = graph.node_count();
  std::vector<int> dist(n, -1);
  std::vector<double> sigma(n, 0.0);
  std::vector<double> delta(n, 0.0);
  std::vector<std::vector<int>> pred(n);
  std::vector<int> order;
  order.reserve(n);

  dist[static_cast<std::size_t>(source)] = 0;
  sigma[static_cast<std::size_t>(source)] = 1.0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    order.push_back(u);
    for (const auto& [v, weight] : graph.adjacency[static_cast<std::size_t>(u)]) {
      (void)weight;
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
      if (dist[static_cast<std::size_t>(v)] ==
          dist[static_cast<std::size_t>(u)] + 1) {
        sigma[static_cast<std::size_t>(v)] += sigma[static_cast<std::size_t>(u)];
        pred[static_cast<std::size_t>(v)].push_back(u);
      }
    }
  }

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int w = *it;
    for (int v : pred[static_cast<std::size_t>(w)]) {
      delta[static_cast<std::size_t>(v)] +=
          sigma[static_cast<std::size_t>(v)] / sigma[static_cast<std::size_t>(w)] *
          (1.0 + delta[static_cast<std::size_t>(w)]);
    }
    if (w != source) {
      accum[static_cast<std::size_t>(w)] += delta[static_cast<std::size_t>(w)];
    }
  }
}

// Brandes source sweep on weighted distances (edge distance = 1/weight).
void brandes_source_dijkstra(const SkillGraph& graph, int source,
                             std::vector<double>& accum) {
  const std::size_t n = graph.node_count();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<double> sigma(n, 0.0);
  std::vector<double> delta(n, 0.0);
  std::vector<bool> settled(n, false);
  std::vector<std::vector<int>> pred(n);
  std::vector<int> order;
  order.reserve(n);

  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<std::size_t>(source)] = 0.0;
  sigma[static_cast<std::size_t>(source)] = 1.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[static_cast<std::size_t>(u)]) {
      continue;
    }
    settled[static_cast<std::size_t>(u)] = true;
    order.push_back(u);
    for (const auto& [v, weight] : graph.adjacency[static_cast<std::size_t>(u)]) {
      if (settled[static_cast<std::size_t>(v)]) {
        continue;
      }
      const double candidate = d + 1.0 / static_cast<double>(weight);
      if (candidate < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = candidate;
        sigma[static_cast<std::size_t>(v)] = sigma[static_cast<std::size_t>(u)];
        pred[static_cast<std::size_t>(v)].assign(1, u);
        heap.push({candidate, v});
      } else if (candidate == dist[static_cast<std::size_t>(v)]) {
        sigma[static_cast<std::size_t>(v)] += sigma[static_cast<std::size_t>(u)];
        pred[static_cast<std::size_t>(v)].push_back(u);
      }
    }
  }

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int w = *it;
    for (int v : pred[static_cast<std::size_t>(w)]) {
      delta[static_cast<std::size_t>(v)] +=
          sigma[static_cast<std::size_t>(v)] / sigma[static_cast<std::size_t>(w)] *
          (1.0 + delta[static_cast<std::size_t>(w)]);
    }
    if (w != source) {
      accum[static_cast<std::size_t>(w)] += delta[static_cast<std::size_t>(w)];
    }
  }
}

// Single-source distances; fills `dist` with hop counts (-1 unreachable) or
// weighted distances (inf unreachable), and reports reachable count + sum.
template <bool Weighted>
void closeness_source(const SkillGraph& graph, int source,
                      std::size_t& reachable, double& distance_sum) {
  const std::size_t n = graph.node_count();
  reachable = 0;
  distance_sum = 0.0;
  if constexpr (!Weighted) {
    std::vector<int> dist(n, -1);
    dist[static_cast<std::size_t>(source)] = 0;
    std::deque<int> queue{source};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const auto& [v, weight] : graph.adjacency[static_cast<std::size_t>(u)]) {
        (void)weight;
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] =
              dist[static_cast<std::size_t>(u)] + 1;
          queue.push_back(v);
          ++reachable;
          distance_sum += dist[static_cast<std::size_t>(v)];
        }
      }
    }
  } else {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, kInf);
    std::vector<bool> settled(n, false);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(source)] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (settled[static_cast<std::size_t>(u)]) {
        continue;
      }
      settled[static_cast<std::size_t>(u)] = true;
      if (u != source) {
        ++reachable;
        distance_sum += d;
      }
      for (const auto& [v, weight] : graph.adjacency[static_cast<std::size_t>(u)]) {
        const double candidate = d + 1.0 / static_cast<double>(weight);
        if (!settled[static_cast<std::size_t>(v)] &&
            candidate < dist[static_cast<std::size_t>(v)]) {
          dist[static_cast<std::size_t>(v)] = candidate;
          heap.push({candidate, v});
        }
      }
    }
  }
}

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace

std::string_view to_string(CentralityMeasure measure) {
  switch (measure) {
    case CentralityMeasure::degree:
      return "degree";
    case CentralityMeasure::betweenness:
      return "betweenness";
    case CentralityMeasure::closeness:
      return "closeness";
    case CentralityMeasure::eigenvector:
      return "eigenvector";
  }
  return "unknown";
}

std::optional<CentralityMeasure> parse_measure(std::string_view name) {
  if (name == "degree") return CentralityMeasure::degree;
  if (name == "betweenness") return CentralityMeasure::betweenness;
  if (name == "closeness") return CentralityMeasure::closeness;
  if (name == "eigenvector") return CentralityMeasure::eigenvector;
  return std::nullopt;
}

CentralityScores degree_centrality(const SkillGraph& graph,
                                   const CentralityOptions& options) {
  const std::size_t n = graph.node_count();
  CentralityScores result{CentralityMeasure::degree, std::vector<double>(n, 0.0),
                          options.normalized, false};
  for (std::size_t v = 0; v < n; ++v) {
    result.scores[v] = static_cast<double>(graph.adjacency[v].size());
  }
  if (options.normalized && n >= 2) {
    const double scale = 1.0 / static_cast<double>(n - 1);
    for (double& score : result.scores) {
      score *= scale;
    }
  }
  return result;
}

CentralityScores betweenness_centrality(const SkillGraph& graph,
                                        const CentralityOptions& options) {
  const std::size_t n = graph.node_count();
  CentralityScores result{CentralityMeasure::betweenness,
                          std::vector<double>(n, 0.0), options.normalized,
                          options.weighted_paths};
  if (n == 0) {
    return result;
  }

  const std::size_t chunk_count = std::min(kReductionChunks, n);
  std::vector<std::vector<double>> partial(chunk_count,
                                           std::vector<double>(n, 0.0));
  for_each_chunk(chunk_count, resolve_threads(options.thread_count),
                 [&](std::size_t c) {
                   const std::size_t begin = c * n / chunk_count;
                   const std::size_t end = (c + 1) * n / chunk_count;
                   for (std::size_t s = begin; s < end; ++s) {
                     if (options.weighted_paths) {
                       brandes_source_dijkstra(graph, static_cast<int>(s),
                                               partial[c]);
                     } else {
                       brandes_source_bfs(graph, static_cast<int>(s),
                                          partial[c]);
                     }
                   }
                 });
  for (std::size_t c = 0; c < chunk_count; ++c) {
    for (std::size_t v = 0; v < n; ++v) {
      result.scores[v] += partial[c][v];
    }
  }

  // Each unordered pair was counted from both endpoints.
  for (double& score : result.scores) {
    score *= 0.5;
  }
  if (options.normalized && n >= 3) {
    const double scale =
        2.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    for (double& score : result.scores) {
      score *= scale;
    }
  }
  return result;
}

CentralityScores closeness_centrality(const SkillGraph& graph,
                                      const CentralityOptions& options) {
  const std::size_t n = graph.node_count();
  CentralityScores result{CentralityMeasure::closeness,
                          std::vector<double>(n, 0.0), options.normalized,
                          options.weighted_paths};
  if (n == 0) {
    return result;
  }

  const std::size_t chunk_count = std::min(kReductionChunks, n);
  for_each_chunk(
      chunk_count, resolve_threads(options.thread_count), [&](std::size_t c) {
        const std::size_t begin = c * n / chunk_count;
        const std::size_t end = (c + 1) * n / chunk_count;
        for (std::size_t s = begin; s < end; ++s) {
          std::size_t reachable = 0;
          double distance_sum = 0.0;
          if (options.weighted_paths) {
            closeness_source<true>(graph, static_cast<int>(s), reachable,
                                   distance_sum);
          } else {
            closeness_source<false>(graph, static_cast<int>(s), reachable,
                                    distance_sum);
          }
          if (reachable > 0) {
            double score = static_cast<double>(reachable) / distance_sum;
            if (options.normalized && n >= 2) {
              score *= static_cast<double>(reachable) /
                       static_cast<double>(n - 1);
            }
            result.scores[s] = score;
          }
        }
      });
  return result;
}

CentralityScores eigenvector_centrality(const SkillGraph& graph,
                                        const EigenvectorOptions& options) {
  const std::size_t n = graph.node_count();
  if (graph.edge_count == 0) {
    throw std::invalid_argument(
        "eigenvector centrality requires a graph with at least one edge");
  }

  std::vector<double> current(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> next(n, 0.0);
  double residual = std::numeric_limits<double>::infinity();
  for (int iteration = 0; iteration < options.max_iterations; ++iteration) {
    for (std::size_t v = 0; v < n; ++v) {
      double sum = current[v];  // the +I shift
      for (const auto& [u, weight] : graph.adjacency[v]) {
        sum += static_cast<double>(weight) * current[static_cast<std::size_t>(u)];
      }
      next[v] = sum;
    }
    double norm = 0.0;
    for (double value : next) {
      norm += value * value;
    }
    norm = std::sqrt(norm);
    for (double& value : next) {
      value /= norm;
    }
    residual = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      residual = std::max(residual, std::abs(next[v] - current[v]));
    }
    current.swap(next);
    if (residual < options.tolerance) {
      // Isolation decays only geometrically under the +I shift; make the
      // contract exact.
      bool renormalize = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (graph.adjacency[v].empty() && current[v] != 0.0) {
          current[v] = 0.0;
          renormalize = true;
        }
      }
      if (renormalize) {
        double norm2 = 0.0;
        for (double value : current) {
          norm2 += value * value;
        }
        norm2 = std::sqrt(norm2);
        for (double& value : current) {
          value /= norm2;
        }
      }
      return CentralityScores{CentralityMeasure::eigenvector,
                              std::move(current), false, false};
    }
  }

  std::ostringstream msg;
  msg << "eigenvector centrality did not converge after "
      << options.max_iterations << " iterations (residual " << residual
      << ", tolerance " << options.tolerance << ")";
  throw ConvergenceError(msg.str(), residual, options.max_iterations);
}

CentralityRanking top_k(const SkillGraph& graph, const CentralityScores& scores,
                        int k) {
  if (k < 1) {
    throw std::invalid_argument("top_k: k must be >= 1");
  }
  const std::size_t n = graph.node_count();

  std::vector<int> order(n);
  for (std::size_t v = 0; v < n; ++v) {
    order[v] = static_cast<int>(v);
  }
  std::vector<std::string> folded(n);
  for (std::size_t v = 0; v < n; ++v) {
    folded[v] = ascii_lower(graph.names[v]);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double sa = scores.scores[static_cast<std::size_t>(a)];
    const double sb = scores.scores[static_cast<std::size_t>(b)];
    if (sa != sb) {
      return sa > sb;
    }
    return folded[static_cast<std::size_t>(a)] <
           folded[static_cast<std::size_t>(b)];
  });

  CentralityRanking ranking;
  ranking.measure = scores.measure;
  ranking.clipped = static_cast<std::size_t>(k) > n;
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), n);
  ranking.entries.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    const int v = order[i];
    ranking.entries.push_back(RankedSkill{
        static_cast<int>(i + 1), graph.names[static_cast<std::size_t>(v)],
        scores.scores[static_cast<std::size_t>(v)]});
  }
  return ranking;
}

}  // namespace skillnet
