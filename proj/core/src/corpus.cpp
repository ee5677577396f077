#include "skillnet/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include <nlohmann/json.hpp>

namespace skillnet {
namespace {

bool all_digits(std::string_view text) {
  if (text.empty()) {
    return false;
  }
  for (char c : text) {
    if (c < '0' || c > '9') {
      return false;
    }
  }
  return true;
}

int digits_to_int(std::string_view text) {
  int value = 0;
  for (char c : text) {
    value = value * 10 + (c - '0');
  }
  return value;
}

bool is_leap_year(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
  static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30,
                                    31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap_year(year)) {
    return 29;
  }
  return kDays[month - 1];
}

[[noreturn]] void fail_record(const std::filesystem::path& path,
                              std::size_t line_no, const std::string& what) {
  std::ostringstream msg;
  msg << "corpus: " << path.string() << ":" << line_no << ": " << what;
  throw std::runtime_error(msg.str());
}

std::string require_string_field(const nlohmann::json& record, const char* key,
                                 const std::filesystem::path& path,
                                 std::size_t line_no) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    fail_record(path, line_no,
                std::string("record needs a string \"") + key + "\" field");
  }
  return it->get<std::string>();
}

}  // namespace

std::optional<CalendarDate> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    return std::nullopt;
  }
  const std::string_view year_part = text.substr(0, 4);
  const std::string_view month_part = text.substr(5, 2);
  const std::string_view day_part = text.substr(8, 2);
  if (!all_digits(year_part) || !all_digits(month_part) ||
      !all_digits(day_part)) {
    return std::nullopt;
  }
  CalendarDate date{digits_to_int(year_part), digits_to_int(month_part),
                    digits_to_int(day_part)};
  if (date.year < 1 || date.month < 1 || date.month > 12) {
    return std::nullopt;
  }
  if (date.day < 1 || date.day > days_in_month(date.year, date.month)) {
    return std::nullopt;
  }
  return date;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("corpus: cannot open " + path.string());
  }

  Corpus corpus;
  std::unordered_map<std::string, std::size_t> first_line_of_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }

    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& err) {
      fail_record(path, line_no, std::string("invalid JSON: ") + err.what());
    }
    if (!record.is_object()) {
      fail_record(path, line_no, "record is not a JSON object");
    }

    JobAd ad;
    ad.id = require_string_field(record, "id", path, line_no);
    ad.text = require_string_field(record, "text", path, line_no);
    const std::string date_text =
        require_string_field(record, "date", path, line_no);

    if (ad.id.empty()) {
      fail_record(path, line_no, "record has an empty \"id\"");
    }
    auto [it, inserted] = first_line_of_id.emplace(ad.id, line_no);
    if (!inserted) {
      std::ostringstream msg;
      msg << "duplicate ad id \"" << ad.id << "\": first seen at line "
          << it->second << ", repeated at line " << line_no;
      fail_record(path, line_no, msg.str());
    }

    if (!date_text.empty()) {
      ad.posted_date = parse_iso_date(date_text);
      if (!ad.posted_date) {
        ++corpus.date_warning_count;
      }
    }
    if (ad.posted_date) {
      ++corpus.dated_count;
      const int year = ad.posted_date->year;
      if (!corpus.min_year || year < *corpus.min_year) {
        corpus.min_year = year;
      }
      if (!corpus.max_year || year > *corpus.max_year) {
        corpus.max_year = year;
      }
    }
    corpus.ads.push_back(std::move(ad));
  }

  if (corpus.ads.empty()) {
    throw std::runtime_error("corpus: " + path.string() +
                             " contains no records");
  }
  return corpus;
}

}  // namespace skillnet
