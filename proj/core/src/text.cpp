#include "skillnet/text.hpp"

#include <cctype>

namespace skillnet {

bool is_word_char(unsigned char c) {
  return std::isalnum(c) != 0 || c >= 0x80;
}

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

}  // namespace

std::string normalize_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());

  // True while the last emitted character belongs to the current word, i.e.
  // a word character or a '+'/'#' kept behind one.
  bool tail_of_word = false;

  auto emit_space = [&] {
    if (!out.empty() && out.back() != ' ') out.push_back(' ');
    tail_of_word = false;
  };

  for (std::size_t i = 0; i < raw.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(raw[i]);
    if (is_word_char(c)) {
      out.push_back(static_cast<char>(std::tolower(c)));
      tail_of_word = true;
    } else if ((c == '+' || c == '#') && tail_of_word) {
      out.push_back(static_cast<char>(c));
    } else if (c == '.' && i + 1 < raw.size() &&
               is_word_char(static_cast<unsigned char>(raw[i + 1]))) {
      out.push_back('.');
      tail_of_word = false;
    } else if (is_space(c)) {
      emit_space();
    } else {
      emit_space();
    }
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::vector<std::string_view> split_tokens(std::string_view normalized) {
  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  while (start < normalized.size()) {
    std::size_t end = normalized.find(' ', start);
    if (end == std::string_view::npos) end = normalized.size();
    if (end > start) tokens.push_back(normalized.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

}  // namespace skillnet
