#include "skillnet/matcher.hpp"

#include <algorithm>
#include <cassert>

#include "skillnet/text.hpp"

namespace skillnet {

SkillMatcher::SkillMatcher(const SkillLexicon& lexicon) {
  nodes_.emplace_back();  // root
  for (int i = 0; i < static_cast<int>(lexicon.size()); ++i) {
    const SkillEntry& entry = lexicon.entry(static_cast<std::size_t>(i));
    insert_phrase(entry.canonical, i);
    for (const std::string& alias : entry.aliases) {
      insert_phrase(alias, i);
    }
  }
}

int SkillMatcher::intern(std::string_view token) {
  auto it = token_ids_.find(token);
  if (it != token_ids_.end()) {
    return it->second;
  }
  const int id = static_cast<int>(token_ids_.size());
  token_ids_.emplace(std::string(token), id);
  return id;
}

int SkillMatcher::token_id(std::string_view token) const {
  auto it = token_ids_.find(token);
  return it == token_ids_.end() ? -1 : it->second;
}

void SkillMatcher::insert_phrase(std::string_view phrase, int entry_index) {
  int node = 0;
  for (std::string_view token : split_tokens(phrase)) {
    const int id = intern(token);
    auto& next = nodes_[static_cast<std::size_t>(node)].next;
    auto it = std::lower_bound(
        next.begin(), next.end(), id,
        [](const std::pair<int, int>& edge, int key) { return edge.first < key; });
    if (it != next.end() && it->first == id) {
      node = it->second;
    } else {
      const int child = static_cast<int>(nodes_.size());
      next.insert(it, {id, child});
      nodes_.emplace_back();
      node = child;
    }
  }
  // Lexicon validation rejects duplicate phrases, so each accepting node
  // belongs to exactly one entry.
  assert(nodes_[static_cast<std::size_t>(node)].entry == -1);
  nodes_[static_cast<std::size_t>(node)].entry = entry_index;
}

std::vector<std::pair<int, int>> SkillMatcher::match(
    std::string_view text) const {
  const std::string normalized = normalize_text(text);
  const std::vector<std::string_view> tokens = split_tokens(normalized);

  std::vector<int> ids(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    ids[i] = token_id(tokens[i]);
  }

  std::map<int, int> counts;
  std::size_t pos = 0;
  while (pos < ids.size()) {
    int node = 0;
    int best_entry = -1;
    std::size_t best_len = 0;
    for (std::size_t j = pos; j < ids.size(); ++j) {
      if (ids[j] < 0) {
        break;  // token unseen in the lexicon; no phrase continues through it
      }
      const auto& next = nodes_[static_cast<std::size_t>(node)].next;
      auto it = std::lower_bound(next.begin(), next.end(), ids[j],
                                 [](const std::pair<int, int>& edge, int key) {
                                   return edge.first < key;
                                 });
      if (it == next.end() || it->first != ids[j]) {
        break;
      }
      node = it->second;
      const int entry = nodes_[static_cast<std::size_t>(node)].entry;
      if (entry >= 0) {
        best_entry = entry;
        best_len = j - pos + 1;
      }
    }
    if (best_entry >= 0) {
      ++counts[best_entry];
      pos += best_len;
    } else {
      ++pos;
    }
  }
  return {counts.begin(), counts.end()};
}

std::map<std::string, int> match_skills(std::string_view ad_text,
                                        const SkillLexicon& lexicon) {
  const SkillMatcher matcher(lexicon);
  std::map<std::string, int> result;
  for (const auto& [entry_index, count] : matcher.match(ad_text)) {
    result.emplace(lexicon.entry(static_cast<std::size_t>(entry_index)).canonical,
                   count);
  }
  return result;
}

}  // namespace skillnet
