#include "skillnet/matrix.hpp"

#include "skillnet/matcher.hpp"

namespace skillnet {

AdSkillMatrix build_matrix(const Corpus& corpus, const SkillLexicon& lexicon) {
  const SkillMatcher matcher(lexicon);

  AdSkillMatrix matrix;
  matrix.ad_ids.reserve(corpus.size());
  matrix.skill_names.reserve(lexicon.size());
  for (std::size_t i = 0; i < lexicon.size(); ++i) {
    matrix.skill_names.push_back(lexicon.entry(i).canonical);
  }
  matrix.column_totals.assign(lexicon.size(), 0);
  matrix.rows.reserve(corpus.size());

  for (const JobAd& ad : corpus.ads) {
    matrix.ad_ids.push_back(ad.id);
    std::vector<std::pair<int, int>> row = matcher.match(ad.text);
    for (const auto& [column, count] : row) {
      matrix.column_totals[static_cast<std::size_t>(column)] += count;
    }
    if (row.empty()) {
      ++matrix.zero_match_ad_count;
    }
    matrix.rows.push_back(std::move(row));
  }

  for (std::int64_t total : matrix.column_totals) {
    if (total > 0) {
      ++matrix.matched_skill_count;
    }
  }
  return matrix;
}

}  // namespace skillnet
