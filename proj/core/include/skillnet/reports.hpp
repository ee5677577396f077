#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skillnet/community.hpp"
#include "skillnet/corpus.hpp"
#include "skillnet/graph.hpp"
#include "skillnet/matrix.hpp"

namespace skillnet {

/// Summary of one community: size, share of all nodes, and its best-connected
/// members. Labels are presentation-only metadata and never affect numbers.
struct CommunityProfile {
  int community = 0;
  std::optional<std::string> label;
  std::size_t member_count = 0;
  double percent_of_total = 0.0;       // member_count / node_count * 100
  std::vector<std::string> top_members;  // by whole-graph degree, desc
};

/// Builds one profile per community, sorted by member_count descending
/// (ties: community id ascending). `top_members_k` caps the member list;
/// ranking is by unique-neighbor degree in the whole graph, ties broken by
/// case-folded name. A label keyed by an unknown community id triggers
/// `warn` and is dropped.
std::vector<CommunityProfile> community_profiles(
    const SkillGraph& graph, const Partition& partition,
    const std::map<int, std::string>& labels = {}, std::size_t top_members_k = 15,
    const std::function<void(const std::string&)>& warn = {});

/// Per-community ad coverage: how many ads contain at least one member skill.
struct CommunityCoverage {
  int community = 0;
  std::size_t covered_ads = 0;
  double ratio = 0.0;  // covered_ads / total_ads
};

/// Coverage over the whole corpus. An ad counts toward every community it
/// touches, so ratios may sum past 1. The union row equals the fraction of
/// ads with at least one matched skill.
struct CoverageReport {
  std::vector<CommunityCoverage> communities;  // community id ascending
  std::size_t total_ads = 0;
  std::size_t union_covered_ads = 0;
  double union_ratio = 0.0;
};

/// Counts coverage by joining matrix columns to graph nodes by skill name;
/// columns that never matched (absent from the graph) cannot contribute.
CoverageReport ad_coverage(const AdSkillMatrix& matrix, const SkillGraph& graph,
                           const Partition& partition);

/// Community-by-year coverage ratios over dated ads only. The year axis is
/// the contiguous corpus year range; a year with zero dated ads yields absent
/// cells, never zeros.
struct TrendReport {
  std::vector<int> years;                        // ascending, contiguous
  std::vector<std::size_t> dated_ads_per_year;   // cell denominators
  std::vector<int> communities;                  // community id ascending
  // cells[community index][year index]; ratio of covered dated ads.
  std::vector<std::vector<std::optional<double>>> cells;
};

/// Computes the trend grid. Undated ads are excluded from every cell.
/// Throws std::invalid_argument when the corpus has no dated ad.
TrendReport yearly_trend(const Corpus& corpus, const AdSkillMatrix& matrix,
                         const SkillGraph& graph, const Partition& partition);

}  // namespace skillnet
