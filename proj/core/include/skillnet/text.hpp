#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace skillnet {

// Canonical text form used for all skill matching.
//
// ASCII letters are lowercased and every punctuation character becomes a
// single space, with three exceptions chosen so common skill tokens survive:
//   '+' and '#'  kept when they extend a word to its right ("c++", "c#")
//   '.'          kept when a word character follows it (".net", "node.js")
// Runs of whitespace collapse to one space; the result carries no leading or
// trailing space. Bytes >= 0x80 pass through untouched, so UTF-8 input stays
// intact. The function is idempotent.
std::string normalize_text(std::string_view raw);

// Splits an already-normalized string on its single spaces. Views point into
// the argument.
std::vector<std::string_view> split_tokens(std::string_view normalized);

// True for characters that form words after normalization: ASCII
// alphanumerics and any byte >= 0x80.
bool is_word_char(unsigned char c);

}  // namespace skillnet
