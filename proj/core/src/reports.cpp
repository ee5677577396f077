#include "skillnet/reports.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace skillnet {
namespace {

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

void check_partition(const SkillGraph& graph, const Partition& partition) {
  if (partition.assignment.size() != graph.node_count()) {
    throw std::invalid_argument(
        "partition does not cover every graph node");
  }
  for (int c : partition.assignment) {
    if (c < 0 || c >= partition.community_count) {
      throw std::invalid_argument("partition community id out of range");
    }
  }
}

// node id for every matrix column that is a graph node, -1 otherwise.
std::vector<int> column_to_node(const AdSkillMatrix& matrix,
                                const SkillGraph& graph) {
  std::unordered_map<std::string_view, int> node_of_name;
  node_of_name.reserve(graph.node_count());
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    node_of_name.emplace(graph.names[v], static_cast<int>(v));
  }
  std::vector<int> mapping(matrix.column_count(), -1);
  for (std::size_t c = 0; c < matrix.column_count(); ++c) {
    auto it = node_of_name.find(matrix.skill_names[c]);
    if (it != node_of_name.end()) {
      mapping[c] = it->second;
    }
  }
  return mapping;
}

// Distinct communities touched by one matrix row, ascending.
void communities_in_row(const std::vector<std::pair<int, int>>& row,
                        const std::vector<int>& col_to_node,
                        const Partition& partition, std::vector<int>& out) {
  out.clear();
  for (const auto& [column, count] : row) {
    (void)count;
    const int node = col_to_node[static_cast<std::size_t>(column)];
    if (node >= 0) {
      out.push_back(partition.assignment[static_cast<std::size_t>(node)]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace

std::vector<CommunityProfile> community_profiles(
    const SkillGraph& graph, const Partition& partition,
    const std::map<int, std::string>& labels, std::size_t top_members_k,
    const std::function<void(const std::string&)>& warn) {
  check_partition(graph, partition);

  std::vector<std::vector<int>> members(
      static_cast<std::size_t>(partition.community_count));
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    members[static_cast<std::size_t>(partition.assignment[v])].push_back(
        static_cast<int>(v));
  }

  for (const auto& [community, label] : labels) {
    (void)label;
    if (community < 0 || community >= partition.community_count) {
      if (warn) {
        std::ostringstream msg;
        msg << "label for unknown community id " << community << " dropped";
        warn(msg.str());
      }
    }
  }

  std::vector<CommunityProfile> profiles;
  profiles.reserve(members.size());
  for (int c = 0; c < partition.community_count; ++c) {
    CommunityProfile profile;
    profile.community = c;
    auto label = labels.find(c);
    if (label != labels.end()) {
      profile.label = label->second;
    }
    auto& ids = members[static_cast<std::size_t>(c)];
    profile.member_count = ids.size();
    profile.percent_of_total =
        graph.node_count() == 0
            ? 0.0
            : 100.0 * static_cast<double>(ids.size()) /
                  static_cast<double>(graph.node_count());
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      const std::size_t da = graph.degree(a);
      const std::size_t db = graph.degree(b);
      if (da != db) {
        return da > db;
      }
      return ascii_lower(graph.names[static_cast<std::size_t>(a)]) <
             ascii_lower(graph.names[static_cast<std::size_t>(b)]);
    });
    const std::size_t take = std::min(top_members_k, ids.size());
    profile.top_members.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
      profile.top_members.push_back(
          graph.names[static_cast<std::size_t>(ids[i])]);
    }
    profiles.push_back(std::move(profile));
  }

  std::sort(profiles.begin(), profiles.end(),
            [](const CommunityProfile& a, const CommunityProfile& b) {
              if (a.member_count != b.member_count) {
                return a.member_count > b.member_count;
              }
              return a.community < b.community;
            });
  return profiles;
}

CoverageReport ad_coverage(const AdSkillMatrix& matrix, const SkillGraph& graph,
                           const Partition& partition) {
  check_partition(graph, partition);
  const std::vector<int> col_to_node = column_to_node(matrix, graph);

  CoverageReport report;
  report.total_ads = matrix.row_count();
  std::vector<std::size_t> covered(
      static_cast<std::size_t>(partition.community_count), 0);

  std::vector<int> touched;
  for (const auto& row : matrix.rows) {
    communities_in_row(row, col_to_node, partition, touched);
    for (int c : touched) {
      ++covered[static_cast<std::size_t>(c)];
    }
    if (!touched.empty()) {
      ++report.union_covered_ads;
    }
  }

  const double total = static_cast<double>(report.total_ads);
  report.communities.reserve(covered.size());
  for (int c = 0; c < partition.community_count; ++c) {
    CommunityCoverage entry;
    entry.community = c;
    entry.covered_ads = covered[static_cast<std::size_t>(c)];
    entry.ratio = report.total_ads == 0
                      ? 0.0
                      : static_cast<double>(entry.covered_ads) / total;
    report.communities.push_back(entry);
  }
  report.union_ratio =
      report.total_ads == 0
          ? 0.0
          : static_cast<double>(report.union_covered_ads) / total;
  return report;
}

TrendReport yearly_trend(const Corpus& corpus, const AdSkillMatrix& matrix,
                         const SkillGraph& graph, const Partition& partition) {
  check_partition(graph, partition);
  if (corpus.dated_count == 0) {
    throw std::invalid_argument(
        "yearly trend requires at least one dated ad");
  }
  if (corpus.size() != matrix.row_count()) {
    throw std::invalid_argument(
        "matrix rows do not align with the corpus");
  }

  TrendReport report;
  const int first_year = *corpus.min_year;
  const int last_year = *corpus.max_year;
  for (int year = first_year; year <= last_year; ++year) {
    report.years.push_back(year);
  }
  report.dated_ads_per_year.assign(report.years.size(), 0);
  for (int c = 0; c < partition.community_count; ++c) {
    report.communities.push_back(c);
  }

  std::vector<std::vector<std::size_t>> covered(
      static_cast<std::size_t>(partition.community_count),
      std::vector<std::size_t>(report.years.size(), 0));

  const std::vector<int> col_to_node = column_to_node(matrix, graph);
  std::vector<int> touched;
  for (std::size_t r = 0; r < matrix.row_count(); ++r) {
    const JobAd& ad = corpus.ads[r];
    if (!ad.posted_date) {
      continue;
    }
    const std::size_t year_index =
        static_cast<std::size_t>(ad.posted_date->year - first_year);
    ++report.dated_ads_per_year[year_index];
    communities_in_row(matrix.rows[r], col_to_node, partition, touched);
    for (int c : touched) {
      ++covered[static_cast<std::size_t>(c)][year_index];
    }
  }

  report.cells.assign(covered.size(),
                      std::vector<std::optional<double>>(report.years.size()));
  for (std::size_t c = 0; c < covered.size(); ++c) {
    for (std::size_t y = 0; y < report.years.size(); ++y) {
      if (report.dated_ads_per_year[y] > 0) {
        report.cells[c][y] = static_cast<double>(covered[c][y]) /
                             static_cast<double>(report.dated_ads_per_year[y]);
      }
    }
  }
  return report;
}

}  // namespace skillnet
