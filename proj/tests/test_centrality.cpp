#include "skillnet/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "support.hpp"

using skillnet::betweenness_centrality;
using skillnet::CentralityMeasure;
using skillnet::CentralityOptions;
using skillnet::CentralityScores;
using skillnet::closeness_centrality;
using skillnet::ConvergenceError;
using skillnet::degree_centrality;
using skillnet::eigenvector_centrality;
using skillnet::EigenvectorOptions;
using skillnet::SkillGraph;
using skillnet::top_k;

namespace {

void check_close(const std::vector<double>& actual,
                 const std::vector<double>& expected, double tolerance) {
  REQUIRE(actual.size() == expected.size());
  for (std::size_t i = 0; i < actual.size(); ++i) {
    CAPTURE(i);
    CHECK_MESSAGE(testutil::close_abs(actual[i], expected[i], tolerance),
                  actual[i], " vs ", expected[i]);
  }
}

// Relabels nodes by `perm` (new id of old node v is perm[v]).
SkillGraph permuted(const SkillGraph& graph, const std::vector<int>& perm) {
  std::vector<skillnet::WeightedEdge> edges;
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    for (const auto& [u, w] : graph.adjacency[v]) {
      if (static_cast<std::size_t>(u) > v) {
        edges.push_back({perm[v], perm[static_cast<std::size_t>(u)], w});
      }
    }
  }
  return testutil::graph_from_edges(static_cast<int>(graph.node_count()),
                                    edges);
}

}  // namespace

TEST_CASE("degree counts unique neighbors and ignores weights") {
  const SkillGraph path = testutil::path_graph(3);
  CHECK(degree_centrality(path).scores == std::vector<double>{1, 2, 1});

  const SkillGraph k4 = testutil::complete_graph(4);
  CHECK(degree_centrality(k4).scores == std::vector<double>{3, 3, 3, 3});

  const SkillGraph weighted =
      testutil::graph_from_edges(3, {{0, 1, 9}, {1, 2, 4}});
  CHECK(degree_centrality(weighted).scores == std::vector<double>{1, 2, 1});

  const CentralityScores normalized =
      degree_centrality(k4, CentralityOptions{true, false, 0});
  CHECK(normalized.scores == std::vector<double>{1, 1, 1, 1});
  CHECK(normalized.normalized);
}

TEST_CASE("degree sums to twice the edge count on random graphs") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const SkillGraph graph = testutil::random_graph(rng, 18, 0.25);
    const auto scores = degree_centrality(graph).scores;
    const double sum = std::accumulate(scores.begin(), scores.end(), 0.0);
    CHECK(sum == 2.0 * static_cast<double>(graph.edge_count));
    check_close(scores, oracle::degree(graph, false), 0.0);
  }
}

TEST_CASE("path betweenness is {0, 1, 0}") {
  const auto scores = betweenness_centrality(testutil::path_graph(3)).scores;
  CHECK(scores == std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("star center carries all leaf pairs") {
  const auto scores = betweenness_centrality(testutil::star_graph(4)).scores;
  CHECK(scores[0] == 6.0);  // C(4,2)
  for (std::size_t leaf = 1; leaf <= 4; ++leaf) {
    CHECK(scores[leaf] == 0.0);
  }

  const auto normalized =
      betweenness_centrality(testutil::star_graph(4),
                             CentralityOptions{true, false, 0})
          .scores;
  CHECK(normalized[0] == doctest::Approx(1.0));  // 6 * 2/(4*3)
}

TEST_CASE("betweenness matches the all-pairs oracle, any component shape") {
  std::mt19937_64 rng(31);
  const double densities[] = {0.08, 0.2, 0.5, 0.9};
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 24);
    const SkillGraph graph =
        testutil::random_graph(rng, n, densities[trial % 4]);
    CAPTURE(trial);
    check_close(betweenness_centrality(graph).scores,
                oracle::betweenness(graph, false, false), 1e-9);
    check_close(
        betweenness_centrality(graph, CentralityOptions{true, false, 0}).scores,
        oracle::betweenness(graph, false, true), 1e-9);
  }
}

TEST_CASE("weighted betweenness with dyadic weights is float-exact") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const SkillGraph graph =
        testutil::random_graph(rng, 14, 0.3, {1, 2, 4, 8});
    CAPTURE(trial);
    check_close(
        betweenness_centrality(graph, CentralityOptions{false, true, 0}).scores,
        oracle::betweenness(graph, true, false), 1e-9);
  }
}

TEST_CASE("degree-one nodes have zero betweenness") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const SkillGraph graph = testutil::random_graph(rng, 16, 0.15);
    const auto scores = betweenness_centrality(graph).scores;
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
      if (graph.degree(static_cast<int>(v)) <= 1) {
        CHECK(scores[v] == 0.0);
      }
    }
  }
}

TEST_CASE("path closeness is {2/3, 1, 2/3}") {
  const auto scores = closeness_centrality(testutil::path_graph(3)).scores;
  CHECK(scores[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(scores[1] == 1.0);
  CHECK(scores[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("complete graphs have closeness exactly 1") {
  for (int n : {2, 3, 5, 8}) {
    const auto scores =
        closeness_centrality(testutil::complete_graph(n)).scores;
    for (double score : scores) {
      CHECK(score == 1.0);
    }
  }
}

TEST_CASE("two disjoint edges all score closeness 1") {
  const SkillGraph graph =
      testutil::graph_from_edges(4, {{0, 1, 1}, {2, 3, 1}});
  const auto scores = closeness_centrality(graph).scores;
  CHECK(scores == std::vector<double>{1.0, 1.0, 1.0, 1.0});

  // normalized form scales by |R|/(n-1) = 1/3
  const auto normalized =
      closeness_centrality(graph, CentralityOptions{true, false, 0}).scores;
  for (double score : normalized) {
    CHECK(score == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
}

TEST_CASE("isolated nodes score closeness 0; scores stay in (0,1]") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const SkillGraph graph = testutil::random_graph(rng, 15, 0.12);
    const auto scores = closeness_centrality(graph).scores;
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
      if (graph.degree(static_cast<int>(v)) == 0) {
        CHECK(scores[v] == 0.0);
      } else {
        CHECK(scores[v] > 0.0);
        CHECK(scores[v] <= 1.0);
        // closeness 1 exactly when every reachable node sits at distance 1
        const auto dist = oracle::all_pairs_distances(graph, false);
        bool all_adjacent = true;
        for (std::size_t u = 0; u < graph.node_count(); ++u) {
          if (u != v && std::isfinite(dist[v][u]) && dist[v][u] > 1.0) {
            all_adjacent = false;
          }
        }
        CHECK((scores[v] == 1.0) == all_adjacent);
      }
    }
    check_close(scores, oracle::closeness(graph, false, false), 1e-9);
    check_close(
        closeness_centrality(graph, CentralityOptions{true, false, 0}).scores,
        oracle::closeness(graph, false, true), 1e-9);
  }
}

TEST_CASE("weighted closeness with dyadic weights is float-exact") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const SkillGraph graph =
        testutil::random_graph(rng, 14, 0.3, {1, 2, 4, 8});
    check_close(
        closeness_centrality(graph, CentralityOptions{false, true, 0}).scores,
        oracle::closeness(graph, true, false), 1e-9);
  }
}

TEST_CASE("triangle eigenvector is uniform 1/sqrt(3)") {
  const auto scores =
      eigenvector_centrality(testutil::complete_graph(3)).scores;
  for (double score : scores) {
    CHECK(score == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
  }
}

TEST_CASE("star eigenvector center-to-leaf ratio is sqrt(n)") {
  for (int leaves : {4, 9, 16}) {
    const auto scores =
        eigenvector_centrality(testutil::star_graph(leaves)).scores;
    const double ratio = scores[0] / scores[1];
    CHECK_MESSAGE(
        testutil::close_abs(ratio, std::sqrt(static_cast<double>(leaves)),
                            1e-8),
        "ratio ", ratio, " with ", leaves, " leaves");
  }
}

TEST_CASE("eigenvector output is unit norm with isolated nodes at zero") {
  const SkillGraph graph = testutil::graph_from_edges(
      5, {{0, 1, 2}, {1, 2, 1}, {0, 2, 3}});  // nodes 3, 4 isolated
  const auto result = eigenvector_centrality(graph);
  CHECK(result.scores[3] == 0.0);
  CHECK(result.scores[4] == 0.0);
  double norm = 0.0;
  for (double s : result.scores) {
    norm += s * s;
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(oracle::principal_alignment(graph, result.scores) >= 1.0 - 1e-6);
}

TEST_CASE("edgeless graphs are rejected; tiny budgets fail loudly") {
  CHECK_THROWS_AS(eigenvector_centrality(testutil::graph_from_edges(3, {})),
                  std::invalid_argument);
  try {
    eigenvector_centrality(testutil::path_graph(6),
                           EigenvectorOptions{1e-30, 3});
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& error) {
    CHECK(error.iterations == 3);
    CHECK(error.residual > 0.0);
  }
}

TEST_CASE("eigenvector matches the dense eigensolver on random graphs") {
  std::mt19937_64 rng(51);
  int tested = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const SkillGraph graph =
        testutil::random_graph(rng, 4 + static_cast<int>(rng() % 16), 0.35,
                               {1, 2, 3, 4, 5});
    if (graph.edge_count == 0) {
      continue;
    }
    ++tested;
    const auto result =
        eigenvector_centrality(graph, EigenvectorOptions{1e-12, 50000});
    CAPTURE(trial);
    CHECK(oracle::principal_alignment(graph, result.scores) >= 1.0 - 1e-6);

    // residual invariant: ||(A+I)x - lambda x||_inf < 10 * tolerance
    const std::size_t n = graph.node_count();
    std::vector<double> ax(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      ax[v] = result.scores[v];
      for (const auto& [u, w] : graph.adjacency[v]) {
        ax[v] += static_cast<double>(w) *
                 result.scores[static_cast<std::size_t>(u)];
      }
    }
    double lambda = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      lambda += ax[v] * result.scores[v];
    }
    for (std::size_t v = 0; v < n; ++v) {
      CHECK(std::abs(ax[v] - lambda * result.scores[v]) < 10.0 * 1e-12 * lambda);
    }
  }
  CHECK(tested >= 50);
}

TEST_CASE("argmax node is invariant under uniform weight scaling") {
  std::mt19937_64 rng(52);
  const SkillGraph graph = testutil::random_graph(rng, 12, 0.4, {1, 2, 3});
  std::vector<skillnet::WeightedEdge> scaled_edges;
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    for (const auto& [u, w] : graph.adjacency[v]) {
      if (static_cast<std::size_t>(u) > v) {
        scaled_edges.push_back(
            {static_cast<int>(v), u, w * 7});
      }
    }
  }
  const SkillGraph scaled = testutil::graph_from_edges(12, scaled_edges);
  const auto base = eigenvector_centrality(graph).scores;
  const auto amplified = eigenvector_centrality(scaled).scores;
  const auto argmax = [](const std::vector<double>& s) {
    return std::distance(s.begin(), std::max_element(s.begin(), s.end()));
  };
  CHECK(argmax(base) == argmax(amplified));
}

TEST_CASE("all four measures are permutation-equivariant") {
  std::mt19937_64 rng(61);
  const int n = 10;
  const SkillGraph graph = testutil::random_graph(rng, n, 0.4, {1, 2, 3});
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[rng() % static_cast<std::size_t>(i + 1)]);
  }
  const SkillGraph relabeled = permuted(graph, perm);

  const auto check_equivariant = [&](auto&& compute) {
    const std::vector<double> original = compute(graph);
    const std::vector<double> moved = compute(relabeled);
    for (int v = 0; v < n; ++v) {
      CHECK(original[static_cast<std::size_t>(v)] ==
            doctest::Approx(moved[static_cast<std::size_t>(perm[static_cast<
                std::size_t>(v)])])
                .epsilon(1e-9));
    }
  };
  check_equivariant(
      [](const SkillGraph& g) { return degree_centrality(g).scores; });
  check_equivariant(
      [](const SkillGraph& g) { return betweenness_centrality(g).scores; });
  check_equivariant(
      [](const SkillGraph& g) { return closeness_centrality(g).scores; });
  check_equivariant([](const SkillGraph& g) {
    return eigenvector_centrality(g, EigenvectorOptions{1e-12, 50000}).scores;
  });
}

TEST_CASE("thread count never changes path-measure results") {
  std::mt19937_64 rng(71);
  const SkillGraph graph = testutil::random_graph(rng, 40, 0.2, {1, 2, 4});
  for (unsigned threads : {1u, 2u, 3u, 8u}) {
    const CentralityOptions options{false, false, threads};
    CHECK(betweenness_centrality(graph, options).scores ==
          betweenness_centrality(graph, CentralityOptions{false, false, 1})
              .scores);
    CHECK(closeness_centrality(graph, options).scores ==
          closeness_centrality(graph, CentralityOptions{false, false, 1})
              .scores);
  }
}

TEST_CASE("top_k ranks by score then case-folded name") {
  const SkillGraph graph = skillnet::make_skill_graph(
      {"Delta", "alpha", "Charlie"}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  CentralityScores scores;
  scores.measure = CentralityMeasure::degree;
  scores.scores = {3.0, 1.0, 3.0};

  const auto ranking = top_k(graph, scores, 2);
  REQUIRE(ranking.entries.size() == 2);
  CHECK_FALSE(ranking.clipped);
  CHECK(ranking.entries[0].rank == 1);
  CHECK(ranking.entries[0].skill == "Charlie");  // ties by case-folded name
  CHECK(ranking.entries[1].skill == "Delta");

  const auto full = top_k(graph, scores, 10);
  CHECK(full.clipped);
  REQUIRE(full.entries.size() == 3);
  for (std::size_t i = 1; i < full.entries.size(); ++i) {
    CHECK(full.entries[i - 1].score >= full.entries[i].score);
  }
  CHECK(full.entries[2].skill == "alpha");

  CHECK_THROWS_AS(top_k(graph, scores, 0), std::invalid_argument);
}
