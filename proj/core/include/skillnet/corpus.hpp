#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skillnet {

/// A calendar date validated against the real calendar (leap years included).
struct CalendarDate {
  int year = 0;
  int month = 0;  // 1..12
  int day = 0;    // 1..days in month

  friend bool operator==(const CalendarDate&, const CalendarDate&) = default;
};

/// Parses a strict ISO-8601 calendar date ("YYYY-MM-DD"). Returns nullopt for
/// anything else: wrong shape, stray characters, out-of-range month or day,
/// and impossible dates such as Feb 29 in a non-leap year.
std::optional<CalendarDate> parse_iso_date(std::string_view text);

/// One job advertisement: an opaque unique id, the free-text body (title and
/// description concatenated upstream), and the posting date when one parsed.
struct JobAd {
  std::string id;
  std::string text;
  std::optional<CalendarDate> posted_date;
};

/// An ordered collection of job ads plus bookkeeping gathered at load time.
///
/// date_warning_count tallies records whose date field was non-empty yet
/// unparseable; such ads are kept with posted_date absent. min_year/max_year
/// span the dated ads only and are absent when no ad carries a date.
struct Corpus {
  std::vector<JobAd> ads;
  std::size_t dated_count = 0;
  std::size_t date_warning_count = 0;
  std::optional<int> min_year;
  std::optional<int> max_year;

  std::size_t size() const { return ads.size(); }
};

/// Loads a corpus from a JSON-lines file: one flat object per line with
/// string fields "id", "text" and "date" (ISO-8601, or empty for undated).
/// Blank lines are skipped. Throws std::runtime_error on an unreadable file,
/// a malformed record, a duplicate or empty id, or a file with zero records;
/// messages carry the offending line number.
Corpus load_corpus(const std::filesystem::path& path);

}  // namespace skillnet
