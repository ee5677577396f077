#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace skillnet {

// One skill: a canonical name plus aliases, all stored in normalized form.
struct SkillEntry {
  std::string canonical;
  std::vector<std::string> aliases;
};

// Ordered skill list. Entry order is load order and fixes the column/node
// numbering used everywhere downstream.
class SkillLexicon {
 public:
  SkillLexicon() = default;

  // Normalizes and validates the entries. Throws std::runtime_error on a
  // name collision or an entry that normalizes to nothing.
  static SkillLexicon from_entries(std::vector<SkillEntry> entries);

  const std::vector<SkillEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const SkillEntry& entry(std::size_t i) const { return entries_[i]; }

  // Index of a canonical name, -1 if absent. The argument must already be
  // normalized.
  int find_canonical(std::string_view name) const;

 private:
  std::vector<SkillEntry> entries_;
  std::unordered_map<std::string, int> canonical_index_;

  friend SkillLexicon load_lexicon(const std::filesystem::path&);
};

// Reads a lexicon file: UTF-8, one entry per line, aliases appended after
// '|' separators ("JavaScript|JS|ECMAScript"), '#' lines are comments.
// Throws std::runtime_error naming the offending lines on duplicate names
// (canonical or alias, compared after normalization) and on empty files.
SkillLexicon load_lexicon(const std::filesystem::path& path);

}  // namespace skillnet
