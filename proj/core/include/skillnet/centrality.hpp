#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "skillnet/graph.hpp"

namespace skillnet {

enum class CentralityMeasure { degree, betweenness, closeness, eigenvector };

/// "degree", "betweenness", "closeness" or "eigenvector".
std::string_view to_string(CentralityMeasure measure);
std::optional<CentralityMeasure> parse_measure(std::string_view name);

/// Scores for every node of a graph under one measure, plus flags recording
/// which conventions produced them.
struct CentralityScores {
  CentralityMeasure measure = CentralityMeasure::degree;
  std::vector<double> scores;   // indexed by node id
  bool normalized = false;      // presentation normalization applied
  bool weighted_paths = false;  // path measures used distance = 1/weight
};

/// Options shared by the path-based measures.
///
/// With `weighted_paths` unset, betweenness and closeness run on hop-count
/// shortest paths; set, they run on weighted shortest paths with edge
/// distance 1/weight (heavier edge = closer). `normalized` divides degree by
/// (n-1), multiplies betweenness by 2/((n-1)(n-2)), and scales closeness by
/// the reachable-set fraction |R(v)|/(n-1). `thread_count` 0 means use the
/// hardware concurrency; any value yields bit-identical results.
struct CentralityOptions {
  bool normalized = false;
  bool weighted_paths = false;
  unsigned thread_count = 0;
};

struct EigenvectorOptions {
  double tolerance = 1e-10;
  int max_iterations = 1000;
};

/// Thrown when power iteration has not met the tolerance within the
/// iteration budget; carries the last successive-iterate residual.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double residual_, int iterations_)
      : std::runtime_error(what), residual(residual_), iterations(iterations_) {}
  double residual = 0.0;
  int iterations = 0;
};

/// score(v) = number of incident edges (unique neighbors, weights ignored).
CentralityScores degree_centrality(const SkillGraph& graph,
                                   const CentralityOptions& options = {});

/// Shortest-path betweenness via single-source dependency accumulation,
/// counting each unordered pair once.
CentralityScores betweenness_centrality(const SkillGraph& graph,
                                        const CentralityOptions& options = {});

/// score(v) = |R(v)| / sum of distances to R(v), where R(v) is the set of
/// nodes reachable from v (excluding v); 0 when nothing is reachable.
CentralityScores closeness_centrality(const SkillGraph& graph,
                                      const CentralityOptions& options = {});

/// Principal eigenvector of the weighted adjacency matrix by power iteration
/// on (A + I), started from the uniform vector and L2-normalized each step.
/// Isolated nodes score 0; the returned vector has unit Euclidean norm.
/// Throws std::invalid_argument on an edgeless graph and ConvergenceError
/// when the budget runs out.
CentralityScores eigenvector_centrality(const SkillGraph& graph,
                                        const EigenvectorOptions& options = {});

struct RankedSkill {
  int rank = 0;  // 1-based position
  std::string skill;
  double score = 0.0;
};

/// Top-k listing of one measure; ties broken by case-folded name ascending.
/// `clipped` records that k exceeded the node count and the whole population
/// was returned instead.
struct CentralityRanking {
  CentralityMeasure measure = CentralityMeasure::degree;
  std::vector<RankedSkill> entries;
  bool clipped = false;
};

/// Picks the k highest-scoring nodes. Throws std::invalid_argument on k < 1.
CentralityRanking top_k(const SkillGraph& graph, const CentralityScores& scores,
                        int k);

}  // namespace skillnet
