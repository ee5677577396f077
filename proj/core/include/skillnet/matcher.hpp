#pragma once

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "skillnet/lexicon.hpp"

namespace skillnet {

/// Finds lexicon skills inside ad text as whole-token phrases.
///
/// Construction interns every token of every canonical name and alias and
/// builds a trie over the resulting token-id sequences, so matching a text is
/// linear in its token count times the longest phrase length. Scanning is
/// left to right with maximal munch: at each position the longest phrase that
/// matches wins, its tokens are consumed, and the scan resumes after them.
/// Alias hits accrue to the canonical entry.
class SkillMatcher {
 public:
  explicit SkillMatcher(const SkillLexicon& lexicon);

  /// Matches against `text` (normalized on the fly; normalization is
  /// idempotent, so already-normalized input is fine). Returns (entry index,
  /// count) pairs sorted by entry index; only matched entries appear.
  std::vector<std::pair<int, int>> match(std::string_view text) const;

 private:
  struct TrieNode {
    // Outgoing transitions as (token id, node index), sorted by token id.
    std::vector<std::pair<int, int>> next;
    // Lexicon entry completed at this node, or -1.
    int entry = -1;
  };

  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view text) const noexcept {
      return std::hash<std::string_view>{}(text);
    }
  };

  int intern(std::string_view token);
  int token_id(std::string_view token) const;
  void insert_phrase(std::string_view phrase, int entry_index);

  std::unordered_map<std::string, int, StringHash, std::equal_to<>> token_ids_;
  std::vector<TrieNode> nodes_;
};

/// One-shot convenience over SkillMatcher: returns canonical name -> count
/// for every skill found in `ad_text`. Builds a matcher per call; prefer
/// constructing a SkillMatcher once when processing many ads.
std::map<std::string, int> match_skills(std::string_view ad_text,
                                        const SkillLexicon& lexicon);

}  // namespace skillnet
