#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "skillnet/corpus.hpp"
#include "skillnet/lexicon.hpp"

namespace skillnet {

/// Sparse ad-skill occurrence matrix: rows follow corpus order, columns
/// follow lexicon order. Only nonzero cells are stored, so every stored
/// count is >= 1. Immutable after build.
struct AdSkillMatrix {
  std::vector<std::string> ad_ids;       // row labels, corpus order
  std::vector<std::string> skill_names;  // column labels, lexicon canonicals

  // rows[i] holds (column index, count) pairs sorted by column index.
  std::vector<std::vector<std::pair<int, int>>> rows;

  // Total occurrences per column summed over all ads.
  std::vector<std::int64_t> column_totals;

  // Columns with at least one nonzero cell.
  int matched_skill_count = 0;

  // Rows with no nonzero cell.
  std::size_t zero_match_ad_count = 0;

  std::size_t row_count() const { return rows.size(); }
  std::size_t column_count() const { return skill_names.size(); }
};

/// Runs the matcher over every ad and assembles the sparse matrix.
/// Deterministic for fixed inputs; each row depends only on its own ad.
AdSkillMatrix build_matrix(const Corpus& corpus, const SkillLexicon& lexicon);

}  // namespace skillnet
