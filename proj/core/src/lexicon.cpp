#include "skillnet/lexicon.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "skillnet/text.hpp"

namespace skillnet {

namespace {

// Tracks every name seen so far so any collision can report both sources.
struct NameRegistry {
  struct Origin {
    std::string where;  // "line 12" or "entry 3"
    bool is_alias;
  };
  std::unordered_map<std::string, Origin> seen;

  void add(const std::string& name, const std::string& where, bool is_alias) {
    auto [it, inserted] = seen.emplace(name, Origin{where, is_alias});
    if (!inserted) {
      const Origin& first = it->second;
      std::ostringstream msg;
      msg << "lexicon: duplicate skill name \"" << name << "\" after "
          << "normalization: " << (first.is_alias ? "alias" : "canonical")
          << " at " << first.where << " collides with "
          << (is_alias ? "alias" : "canonical") << " at " << where;
      throw std::runtime_error(msg.str());
    }
  }
};

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

int SkillLexicon::find_canonical(std::string_view name) const {
  auto it = canonical_index_.find(std::string(name));
  return it == canonical_index_.end() ? -1 : it->second;
}

SkillLexicon SkillLexicon::from_entries(std::vector<SkillEntry> entries) {
  SkillLexicon lex;
  NameRegistry registry;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    SkillEntry e;
    e.canonical = normalize_text(entries[i].canonical);
    if (e.canonical.empty()) {
      throw std::runtime_error("lexicon: entry " + std::to_string(i) +
                               " has an empty canonical name");
    }
    std::string where = "entry " + std::to_string(i);
    registry.add(e.canonical, where, /*is_alias=*/false);
    for (const std::string& alias : entries[i].aliases) {
      std::string a = normalize_text(alias);
      if (a.empty()) {
        throw std::runtime_error("lexicon: entry " + std::to_string(i) +
                                 " has an empty alias");
      }
      registry.add(a, where, /*is_alias=*/true);
      e.aliases.push_back(std::move(a));
    }
    lex.canonical_index_.emplace(e.canonical, static_cast<int>(lex.entries_.size()));
    lex.entries_.push_back(std::move(e));
  }
  return lex;
}

SkillLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("lexicon: cannot open " + path.string());
  }

  SkillLexicon lex;
  NameRegistry registry;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;

    SkillEntry entry;
    std::string where = path.filename().string() + ":" + std::to_string(line_no);
    std::size_t start = 0;
    bool first = true;
    while (start <= stripped.size()) {
      std::size_t sep = stripped.find('|', start);
      std::string field = stripped.substr(
          start, sep == std::string::npos ? std::string::npos : sep - start);
      std::string name = normalize_text(trim(field));
      if (name.empty()) {
        throw std::runtime_error("lexicon: empty " +
                                 std::string(first ? "skill name" : "alias") +
                                 " at " + where);
      }
      registry.add(name, where, /*is_alias=*/!first);
      if (first) {
        entry.canonical = std::move(name);
        first = false;
      } else {
        entry.aliases.push_back(std::move(name));
      }
      if (sep == std::string::npos) break;
      start = sep + 1;
    }
    lex.canonical_index_.emplace(entry.canonical,
                                 static_cast<int>(lex.entries_.size()));
    lex.entries_.push_back(std::move(entry));
  }

  if (lex.entries_.empty()) {
    throw std::runtime_error("lexicon: no entries in " + path.string());
  }
  return lex;
}

}  // namespace skillnet
