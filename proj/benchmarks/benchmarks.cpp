// Microbenchmarks for the hot paths: phrase matching, graph assembly from a
// sparse ad-skill matrix, and the two most expensive analyses. Input data is
// generated deterministically so numbers are comparable across runs.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "skillnet/centrality.hpp"
#include "skillnet/community.hpp"
#include "skillnet/graph.hpp"
#include "skillnet/lexicon.hpp"
#include "skillnet/matcher.hpp"
#include "skillnet/matrix.hpp"

namespace {

skillnet::SkillLexicon demo_lexicon() {
  return skillnet::SkillLexicon::from_entries({
      {"python", {"py"}},
      {"java", {}},
      {"javascript", {"js", "ecmascript"}},
      {"typescript", {"ts"}},
      {"c++", {"cpp"}},
      {"c#", {"csharp"}},
      {"sql", {}},
      {"mysql", {}},
      {"postgresql", {"postgres"}},
      {"machine learning", {"ml"}},
      {"deep learning", {}},
      {"data analysis", {}},
      {"data engineering", {}},
      {"docker", {}},
      {"kubernetes", {"k8s"}},
      {"terraform", {}},
      {"aws", {"amazon web services"}},
      {"azure", {}},
      {"gcp", {"google cloud"}},
      {"linux", {}},
      {"git", {}},
      {"react", {"react.js", "reactjs"}},
      {"react native", {}},
      {"node.js", {"nodejs", "node"}},
      {"angular", {}},
      {"vue", {"vue.js"}},
      {"spark", {}},
      {"hadoop", {}},
      {"kafka", {}},
      {"redis", {}},
      {"elasticsearch", {}},
      {"mongodb", {"mongo"}},
      {"tensorflow", {}},
      {"pytorch", {}},
      {"pandas", {}},
      {"numpy", {}},
      {"scala", {}},
      {"go", {"golang"}},
      {"rust", {}},
      {"excel", {}},
  });
}

// Ad-like filler: a mix of lexicon phrases, their fragments, and noise words
// so the trie walks both hit and miss paths.
std::string synthetic_ad(std::mt19937_64& rng, std::size_t words) {
  static const std::vector<std::string> pool = {
      "python",   "java",     "javascript", "machine",  "learning",
      "data",     "analysis", "docker",     "k8s",      "aws",
      "senior",   "engineer", "team",       "remote",   "c++",
      "sql",      "node.js",  "react",      "native",   "experience",
      "with",     "and",      "the",        "platform", "services",
      "pipeline", "models",   "golang",     "excel",    "cloud"};
  std::string text;
  for (std::size_t i = 0; i < words; ++i) {
    if (i > 0) {
      text += ' ';
    }
    text += pool[rng() % pool.size()];
  }
  return text;
}

skillnet::SkillGraph random_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint64_t threshold =
      static_cast<std::uint64_t>(p * 4294967296.0);  // p * 2^32
  std::vector<skillnet::WeightedEdge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if ((rng() >> 32) < threshold) {
        edges.push_back({a, b, 1 + static_cast<int>(rng() % 4)});
      }
    }
  }
  std::vector<std::string> names(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    names[static_cast<std::size_t>(v)] = "s" + std::to_string(v);
  }
  return skillnet::make_skill_graph(std::move(names), edges);
}

void BM_matcher(benchmark::State& state) {
  const skillnet::SkillLexicon lexicon = demo_lexicon();
  const skillnet::SkillMatcher matcher(lexicon);
  std::mt19937_64 rng(7);
  std::vector<std::string> ads;
  std::size_t bytes = 0;
  for (int i = 0; i < 200; ++i) {
    ads.push_back(synthetic_ad(rng, static_cast<std::size_t>(state.range(0))));
    bytes += ads.back().size();
  }
  for (auto _ : state) {
    for (const std::string& ad : ads) {
      benchmark::DoNotOptimize(matcher.match(ad));
    }
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(bytes) * state.iterations());
}
BENCHMARK(BM_matcher)->Arg(40)->Arg(160)->Arg(640);

void BM_build_graph(benchmark::State& state) {
  const skillnet::SkillLexicon lexicon = demo_lexicon();
  const skillnet::SkillMatcher matcher(lexicon);
  std::mt19937_64 rng(11);
  skillnet::AdSkillMatrix matrix;
  matrix.skill_names.reserve(lexicon.size());
  for (std::size_t i = 0; i < lexicon.size(); ++i) {
    matrix.skill_names.push_back(lexicon.entry(i).canonical);
  }
  matrix.column_totals.assign(lexicon.size(), 0);
  for (std::int64_t row = 0; row < state.range(0); ++row) {
    matrix.ad_ids.push_back("ad" + std::to_string(row));
    matrix.rows.emplace_back();
    for (const auto& [entry, count] : matcher.match(synthetic_ad(rng, 80))) {
      matrix.rows.back().push_back({entry, count});
      matrix.column_totals[static_cast<std::size_t>(entry)] += count;
    }
    if (matrix.rows.back().empty()) {
      ++matrix.zero_match_ad_count;
    }
  }
  for (std::int64_t total : matrix.column_totals) {
    matrix.matched_skill_count += total > 0 ? 1 : 0;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(skillnet::build_graph(matrix));
  }
  state.SetItemsProcessed(state.range(0) * state.iterations());
}
BENCHMARK(BM_build_graph)->Arg(1000)->Arg(5000);

void BM_betweenness(benchmark::State& state) {
  const skillnet::SkillGraph graph =
      random_graph(static_cast<int>(state.range(0)), 0.05, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(skillnet::betweenness_centrality(graph));
  }
}
BENCHMARK(BM_betweenness)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_louvain(benchmark::State& state) {
  const skillnet::SkillGraph graph =
      random_graph(static_cast<int>(state.range(0)), 0.03, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(skillnet::louvain(graph, 42));
  }
}
BENCHMARK(BM_louvain)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
