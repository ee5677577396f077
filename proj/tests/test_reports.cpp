#include "skillnet/reports.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "skillnet/community.hpp"
#include "skillnet/corpus.hpp"
#include "skillnet/graph.hpp"
#include "skillnet/matrix.hpp"
#include "support.hpp"

using skillnet::ad_coverage;
using skillnet::AdSkillMatrix;
using skillnet::CalendarDate;
using skillnet::community_profiles;
using skillnet::CommunityProfile;
using skillnet::Corpus;
using skillnet::CoverageReport;
using skillnet::JobAd;
using skillnet::Partition;
using skillnet::partition_from_assignment;
using skillnet::SkillGraph;
using skillnet::TrendReport;
using skillnet::yearly_trend;

namespace {

// Assembles a corpus from (id, year-or-0, sparse row) triples, keeping the
// matrix rows aligned with the ads and the corpus bookkeeping consistent.
struct ReportFixture {
  Corpus corpus;
  AdSkillMatrix matrix;
};

struct AdSpec {
  std::string id;
  int year = 0;  // 0 = undated
  std::vector<std::pair<int, int>> cells;
};

ReportFixture make_fixture(std::vector<std::string> columns,
                           const std::vector<AdSpec>& specs) {
  ReportFixture fixture;
  fixture.matrix.skill_names = std::move(columns);
  fixture.matrix.column_totals.assign(fixture.matrix.skill_names.size(), 0);
  std::set<int> matched_columns;
  for (const AdSpec& spec : specs) {
    JobAd ad;
    ad.id = spec.id;
    ad.text = "(not used by reports)";
    if (spec.year != 0) {
      ad.posted_date = CalendarDate{spec.year, 6, 15};
      ++fixture.corpus.dated_count;
      if (!fixture.corpus.min_year || spec.year < *fixture.corpus.min_year) {
        fixture.corpus.min_year = spec.year;
      }
      if (!fixture.corpus.max_year || spec.year > *fixture.corpus.max_year) {
        fixture.corpus.max_year = spec.year;
      }
    }
    fixture.corpus.ads.push_back(std::move(ad));

    fixture.matrix.ad_ids.push_back(spec.id);
    std::vector<std::pair<int, int>> row = spec.cells;
    std::sort(row.begin(), row.end());
    for (const auto& [column, count] : row) {
      fixture.matrix.column_totals[static_cast<std::size_t>(column)] += count;
      matched_columns.insert(column);
    }
    if (row.empty()) {
      ++fixture.matrix.zero_match_ad_count;
    }
    fixture.matrix.rows.push_back(std::move(row));
  }
  fixture.matrix.matched_skill_count = static_cast<int>(matched_columns.size());
  return fixture;
}

// Direct re-count of coverage straight from the fixture definition.
CoverageReport direct_coverage(const ReportFixture& fixture,
                               const SkillGraph& graph,
                               const Partition& partition) {
  std::map<std::string, int> community_of;
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    community_of[graph.names[v]] = partition.assignment[v];
  }
  std::map<int, std::size_t> covered;
  for (int c = 0; c < partition.community_count; ++c) {
    covered[c] = 0;
  }
  std::size_t union_count = 0;
  for (const auto& row : fixture.matrix.rows) {
    std::set<int> touched;
    for (const auto& [column, count] : row) {
      (void)count;
      const auto it = community_of.find(
          fixture.matrix.skill_names[static_cast<std::size_t>(column)]);
      if (it != community_of.end()) {
        touched.insert(it->second);
      }
    }
    for (int c : touched) {
      ++covered[c];
    }
    if (!touched.empty()) {
      ++union_count;
    }
  }
  CoverageReport expected;
  expected.total_ads = fixture.matrix.row_count();
  expected.union_covered_ads = union_count;
  expected.union_ratio = static_cast<double>(union_count) /
                         static_cast<double>(expected.total_ads);
  for (const auto& [community, ads] : covered) {
    expected.communities.push_back(
        {community, ads,
         static_cast<double>(ads) / static_cast<double>(expected.total_ads)});
  }
  return expected;
}

void check_same_coverage(const CoverageReport& actual,
                         const CoverageReport& expected) {
  CHECK(actual.total_ads == expected.total_ads);
  CHECK(actual.union_covered_ads == expected.union_covered_ads);
  CHECK(actual.union_ratio == expected.union_ratio);
  REQUIRE(actual.communities.size() == expected.communities.size());
  for (std::size_t i = 0; i < actual.communities.size(); ++i) {
    CAPTURE(i);
    CHECK(actual.communities[i].community == expected.communities[i].community);
    CHECK(actual.communities[i].covered_ads ==
          expected.communities[i].covered_ads);
    CHECK(actual.communities[i].ratio == expected.communities[i].ratio);
  }
}

}  // namespace

TEST_CASE("profiles sort by size then id and rank members by degree") {
  // alpha: 3 neighbors; Beta, Gamma: 2; delta: 1.
  const SkillGraph graph = skillnet::make_skill_graph(
      {"Beta", "alpha", "Gamma", "delta"},
      {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {1, 3, 1}});
  const Partition partition =
      partition_from_assignment(graph, {0, 0, 0, 1});

  std::vector<std::string> warnings;
  const auto warn = [&](const std::string& message) {
    warnings.push_back(message);
  };
  const std::map<int, std::string> labels = {{0, "core"}, {7, "ghost"}};
  const auto profiles = community_profiles(graph, partition, labels, 15, warn);

  REQUIRE(profiles.size() == 2);
  CHECK(profiles[0].community == 0);
  CHECK(profiles[0].member_count == 3);
  CHECK(profiles[0].percent_of_total == 75.0);
  REQUIRE(profiles[0].label.has_value());
  CHECK(*profiles[0].label == "core");
  // degree desc, ties by case-folded name: alpha(3), Beta(2), Gamma(2)
  CHECK(profiles[0].top_members ==
        std::vector<std::string>{"alpha", "Beta", "Gamma"});

  CHECK(profiles[1].community == 1);
  CHECK(profiles[1].member_count == 1);
  CHECK(profiles[1].percent_of_total == 25.0);
  CHECK_FALSE(profiles[1].label.has_value());
  CHECK(profiles[1].top_members == std::vector<std::string>{"delta"});

  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("7") != std::string::npos);
}

TEST_CASE("profile member lists honor the k cap") {
  const SkillGraph graph = skillnet::make_skill_graph(
      {"Beta", "alpha", "Gamma", "delta"},
      {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {1, 3, 1}});
  const Partition partition =
      partition_from_assignment(graph, {0, 0, 0, 0});
  const auto profiles = community_profiles(graph, partition, {}, 2);
  REQUIRE(profiles.size() == 1);
  CHECK(profiles[0].member_count == 4);
  CHECK(profiles[0].top_members == std::vector<std::string>{"alpha", "Beta"});
}

TEST_CASE("member ranking uses whole-graph degree, not intra-community") {
  const SkillGraph graph = skillnet::make_skill_graph(
      {"Beta", "alpha", "Gamma", "delta"},
      {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {1, 3, 1}});
  const Partition partition =
      partition_from_assignment(graph, {0, 0, 1, 1});
  const auto profiles = community_profiles(graph, partition);
  // Within {Gamma, delta}: Gamma keeps its cross-community degree of 2.
  // Equal-sized communities order by id.
  REQUIRE(profiles.size() == 2);
  CHECK(profiles[0].community == 0);
  CHECK(profiles[1].community == 1);
  CHECK(profiles[1].top_members ==
        std::vector<std::string>{"Gamma", "delta"});
}

TEST_CASE("coverage counts each ad once per touched community") {
  const auto fixture = make_fixture(
      {"a", "b", "c", "d", "e"},
      {
          {"r1", 2019, {{0, 1}, {1, 2}}},  // community 0 twice: one ad
          {"r2", 2019, {{0, 1}, {2, 1}}},  // communities 0 and 1
          {"r3", 0, {{2, 2}}},             // undated, community 1
          {"r4", 2021, {{3, 1}}},          // community 2
          {"r5", 2021, {}},                // zero-match
          {"r6", 2019, {}},                // zero-match
          {"r7", 2021, {{0, 3}}},          // community 0
      });
  const SkillGraph graph = skillnet::make_skill_graph(
      {"a", "b", "c", "d"}, {{0, 1, 2}, {0, 2, 1}});
  const Partition partition =
      partition_from_assignment(graph, {0, 0, 1, 2});

  const CoverageReport report = ad_coverage(fixture.matrix, graph, partition);
  CHECK(report.total_ads == 7);
  REQUIRE(report.communities.size() == 3);
  CHECK(report.communities[0].community == 0);
  CHECK(report.communities[0].covered_ads == 3);  // r1 r2 r7 (r1 counted once)
  CHECK(report.communities[0].ratio == 3.0 / 7.0);
  CHECK(report.communities[1].covered_ads == 2);  // r2 r3
  CHECK(report.communities[2].covered_ads == 1);  // r4
  CHECK(report.union_covered_ads == 5);
  CHECK(report.union_ratio == 5.0 / 7.0);

  check_same_coverage(report, direct_coverage(fixture, graph, partition));
}

TEST_CASE("merging all communities reproduces the union row") {
  const auto fixture = make_fixture(
      {"a", "b", "c", "d"},
      {
          {"r1", 0, {{0, 1}}},
          {"r2", 0, {{1, 1}, {2, 1}}},
          {"r3", 0, {}},
          {"r4", 0, {{3, 4}}},
      });
  const SkillGraph graph = skillnet::make_skill_graph(
      {"a", "b", "c", "d"}, {{0, 1, 1}, {2, 3, 1}});
  const Partition split = partition_from_assignment(graph, {0, 0, 1, 1});
  const Partition merged = partition_from_assignment(graph, {0, 0, 0, 0});

  const CoverageReport split_report = ad_coverage(fixture.matrix, graph, split);
  const CoverageReport merged_report =
      ad_coverage(fixture.matrix, graph, merged);

  REQUIRE(merged_report.communities.size() == 1);
  CHECK(merged_report.communities[0].covered_ads ==
        merged_report.union_covered_ads);
  CHECK(merged_report.union_covered_ads == split_report.union_covered_ads);
  // A merged community covers at least as much as either part.
  for (const auto& part : split_report.communities) {
    CHECK(merged_report.communities[0].covered_ads >= part.covered_ads);
  }
}

TEST_CASE("coverage on randomized fixtures matches direct counting") {
  std::mt19937_64 rng(131);
  const std::vector<std::string> names = {"s0", "s1", "s2", "s3", "s4"};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<AdSpec> specs;
    for (int ad = 0; ad < 40; ++ad) {
      AdSpec spec;
      spec.id = "ad" + std::to_string(ad);
      for (int column = 0; column < 5; ++column) {
        if (rng() % 3 == 0) {
          spec.cells.push_back({column, 1 + static_cast<int>(rng() % 3)});
        }
      }
      specs.push_back(std::move(spec));
    }
    const auto fixture = make_fixture(names, specs);
    const SkillGraph graph = skillnet::make_skill_graph(
        names, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}});
    std::vector<int> assignment(5);
    for (int& c : assignment) {
      c = static_cast<int>(rng() % 3);
    }
    const Partition partition = partition_from_assignment(graph, assignment);
    check_same_coverage(ad_coverage(fixture.matrix, graph, partition),
                        direct_coverage(fixture, graph, partition));
  }
}

TEST_CASE("trend grid spans contiguous years with absent empty-year cells") {
  const auto fixture = make_fixture(
      {"a", "b", "c", "d", "e"},
      {
          {"r1", 2019, {{0, 1}, {1, 2}}},
          {"r2", 2019, {{0, 1}, {2, 1}}},
          {"r3", 0, {{2, 2}}},
          {"r4", 2021, {{3, 1}}},
          {"r5", 2021, {}},
          {"r6", 2019, {}},
          {"r7", 2021, {{0, 3}}},
      });
  const SkillGraph graph = skillnet::make_skill_graph(
      {"a", "b", "c", "d"}, {{0, 1, 2}, {0, 2, 1}});
  const Partition partition =
      partition_from_assignment(graph, {0, 0, 1, 2});

  const TrendReport report =
      yearly_trend(fixture.corpus, fixture.matrix, graph, partition);
  CHECK(report.years == std::vector<int>{2019, 2020, 2021});
  CHECK(report.dated_ads_per_year == std::vector<std::size_t>{3, 0, 3});
  CHECK(report.communities == std::vector<int>{0, 1, 2});
  REQUIRE(report.cells.size() == 3);
  for (const auto& row : report.cells) {
    REQUIRE(row.size() == 3);
    CHECK_FALSE(row[1].has_value());  // 2020 has no dated ads
  }
  CHECK(report.cells[0][0] == 2.0 / 3.0);  // r1 r2 of 2019's three
  CHECK(report.cells[0][2] == 1.0 / 3.0);  // r7
  CHECK(report.cells[1][0] == 1.0 / 3.0);  // r2 (undated r3 excluded)
  CHECK(report.cells[1][2] == 0.0);        // present but empty
  CHECK(report.cells[2][0] == 0.0);
  CHECK(report.cells[2][2] == 1.0 / 3.0);  // r4
}

TEST_CASE("trend cells average back to dated coverage counts") {
  const auto fixture = make_fixture(
      {"a", "b", "c", "d", "e"},
      {
          {"r1", 2019, {{0, 1}, {1, 2}}},
          {"r2", 2019, {{0, 1}, {2, 1}}},
          {"r3", 0, {{2, 2}}},
          {"r4", 2021, {{3, 1}}},
          {"r5", 2021, {}},
          {"r6", 2019, {}},
          {"r7", 2021, {{0, 3}}},
      });
  const SkillGraph graph = skillnet::make_skill_graph(
      {"a", "b", "c", "d"}, {{0, 1, 2}, {0, 2, 1}});
  const Partition partition =
      partition_from_assignment(graph, {0, 0, 1, 2});
  const TrendReport report =
      yearly_trend(fixture.corpus, fixture.matrix, graph, partition);

  // The ratio-weighted year sizes recover each community's dated ad count.
  const std::vector<double> expected_dated_covered = {3.0, 1.0, 1.0};
  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    double recovered = 0.0;
    for (std::size_t y = 0; y < report.years.size(); ++y) {
      if (report.cells[c][y].has_value()) {
        recovered += *report.cells[c][y] *
                     static_cast<double>(report.dated_ads_per_year[y]);
      }
    }
    CHECK_MESSAGE(
        testutil::close_abs(recovered, expected_dated_covered[c], 1e-12),
        recovered, " vs ", expected_dated_covered[c]);
  }
}

TEST_CASE("a single-year corpus collapses the trend to dated coverage") {
  const auto fixture = make_fixture(
      {"a", "b"},
      {
          {"r1", 2020, {{0, 1}}},
          {"r2", 2020, {{1, 1}}},
          {"r3", 2020, {{0, 1}, {1, 1}}},
          {"r4", 2020, {}},
      });
  const SkillGraph graph =
      skillnet::make_skill_graph({"a", "b"}, {{0, 1, 1}});
  const Partition partition = partition_from_assignment(graph, {0, 1});

  const TrendReport trend =
      yearly_trend(fixture.corpus, fixture.matrix, graph, partition);
  const CoverageReport coverage =
      ad_coverage(fixture.matrix, graph, partition);

  REQUIRE(trend.years == std::vector<int>{2020});
  // All four ads are dated, so each cell equals the coverage ratio.
  for (std::size_t c = 0; c < trend.cells.size(); ++c) {
    REQUIRE(trend.cells[c][0].has_value());
    CHECK(*trend.cells[c][0] == coverage.communities[c].ratio);
  }
}

TEST_CASE("trend refuses a corpus with no dated ad") {
  const auto fixture = make_fixture(
      {"a"}, {{"r1", 0, {{0, 1}}}, {"r2", 0, {}}});
  const SkillGraph graph = skillnet::make_skill_graph({"a"}, {});
  // the graph must carry an edge for the partition to exist sensibly; use
  // a two-node graph with the column joined in
  const SkillGraph usable =
      skillnet::make_skill_graph({"a", "b"}, {{0, 1, 1}});
  const Partition partition = partition_from_assignment(usable, {0, 0});
  (void)graph;
  CHECK_THROWS_AS(
      yearly_trend(fixture.corpus, fixture.matrix, usable, partition),
      std::invalid_argument);
}
