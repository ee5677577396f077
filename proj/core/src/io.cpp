#include "skillnet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace skillnet {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

// Full-file CSV parser honoring quoted fields (doubled quotes, embedded
// separators and newlines). Records that are a single empty field (blank
// lines) are dropped.
std::vector<std::vector<std::string>> parse_csv(std::string_view content,
                                                const std::string& origin) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  std::size_t i = 0;

  auto end_field = [&] {
    fields.push_back(std::move(current));
    current.clear();
  };
  auto end_record = [&] {
    end_field();
    if (!(fields.size() == 1 && fields[0].empty())) {
      records.push_back(std::move(fields));
    }
    fields.clear();
  };

  while (i < content.size()) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          current.push_back('"');
          i += 2;
        } else {
          in_quotes = false;
          ++i;
        }
      } else {
        current.push_back(c);
        ++i;
      }
    } else if (c == '"') {
      in_quotes = true;
      ++i;
    } else if (c == ',') {
      end_field();
      ++i;
    } else if (c == '\n') {
      end_record();
      ++i;
    } else if (c == '\r') {
      end_record();
      if (i + 1 < content.size() && content[i + 1] == '\n') {
        ++i;
      }
      ++i;
    } else {
      current.push_back(c);
      ++i;
    }
  }
  if (in_quotes) {
    throw std::runtime_error(origin + ": unbalanced quote in CSV data");
  }
  if (!current.empty() || !fields.empty()) {
    end_record();
  }
  return records;
}

std::vector<std::vector<std::string>> read_csv_file(
    const std::filesystem::path& path, const std::string& expected_header) {
  auto records = parse_csv(read_file(path), path.string());
  if (records.empty()) {
    throw std::runtime_error(path.string() + ": empty CSV file");
  }
  std::string header;
  for (std::size_t i = 0; i < records[0].size(); ++i) {
    if (i > 0) {
      header += ',';
    }
    header += records[0][i];
  }
  if (header != expected_header) {
    throw std::runtime_error(path.string() + ": expected header \"" +
                             expected_header + "\", found \"" + header + "\"");
  }
  records.erase(records.begin());
  return records;
}

std::int64_t parse_int64(const std::string& field, const std::string& origin) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::runtime_error(origin + ": expected integer, found \"" + field +
                             "\"");
  }
  return value;
}

std::string percent_1dp(double ratio) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.1f%%", ratio * 100.0);
  return buffer;
}

std::string fixed_decimals(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

// Left-justified plain-text table with a dashed rule under the header.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) {
    return "";
  }
  std::size_t columns = 0;
  for (const auto& row : rows) {
    columns = std::max(columns, row.size());
  }
  std::vector<std::size_t> widths(columns, 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }

  std::string out;
  auto emit_row = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) {
        line.append(widths[c] - row[c].size() + 2, ' ');
      }
    }
    out += line;
    out += '\n';
  };

  emit_row(rows[0]);
  std::vector<std::string> rule(rows[0].size());
  for (std::size_t c = 0; c < rule.size(); ++c) {
    rule[c] = std::string(widths[c], '-');
  }
  emit_row(rule);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    emit_row(rows[r]);
  }
  return out;
}

std::string measure_heading(CentralityMeasure measure) {
  std::string name(to_string(measure));
  if (!name.empty()) {
    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  }
  return name;
}

}  // namespace

std::string csv_escape(std::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += "\"\"";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  auto records = parse_csv(line, "csv line");
  if (records.empty()) {
    return {""};
  }
  if (records.size() > 1) {
    throw std::runtime_error("csv line: unexpected newline inside line");
  }
  return records[0];
}

std::string format_double(double value) {
  return nlohmann::json(value).dump();
}

std::uint64_t fnv1a_bytes(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;  // FNV-1a 64-bit offset basis
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;  // FNV-1a 64-bit prime
  }
  return hash;
}

std::uint64_t fnv1a_file(const std::filesystem::path& path) {
  return fnv1a_bytes(read_file(path));
}

void write_matrix_csv(const std::filesystem::path& path,
                      const AdSkillMatrix& matrix) {
  std::ofstream out = open_output(path);
  out << "ad_id,skill_canonical,count\n";
  for (std::size_t r = 0; r < matrix.row_count(); ++r) {
    for (const auto& [column, count] : matrix.rows[r]) {
      out << csv_escape(matrix.ad_ids[r]) << ','
          << csv_escape(matrix.skill_names[static_cast<std::size_t>(column)])
          << ',' << count << '\n';
    }
  }
  finish_output(out, path);
}

AdSkillMatrix read_matrix_csv(const std::filesystem::path& path,
                              std::vector<std::string> ad_ids,
                              std::vector<std::string> skill_names) {
  AdSkillMatrix matrix;
  matrix.ad_ids = std::move(ad_ids);
  matrix.skill_names = std::move(skill_names);
  matrix.rows.assign(matrix.ad_ids.size(), {});
  matrix.column_totals.assign(matrix.skill_names.size(), 0);

  std::unordered_map<std::string_view, int> row_of_id;
  row_of_id.reserve(matrix.ad_ids.size());
  for (std::size_t r = 0; r < matrix.ad_ids.size(); ++r) {
    row_of_id.emplace(matrix.ad_ids[r], static_cast<int>(r));
  }
  std::unordered_map<std::string_view, int> column_of_name;
  column_of_name.reserve(matrix.skill_names.size());
  for (std::size_t c = 0; c < matrix.skill_names.size(); ++c) {
    column_of_name.emplace(matrix.skill_names[c], static_cast<int>(c));
  }

  for (const auto& record :
       read_csv_file(path, "ad_id,skill_canonical,count")) {
    if (record.size() != 3) {
      throw std::runtime_error(path.string() +
                               ": matrix line needs 3 fields");
    }
    const auto row = row_of_id.find(record[0]);
    if (row == row_of_id.end()) {
      throw std::runtime_error(path.string() + ": unknown ad id \"" +
                               record[0] + "\"");
    }
    const auto column = column_of_name.find(record[1]);
    if (column == column_of_name.end()) {
      throw std::runtime_error(path.string() + ": unknown skill \"" +
                               record[1] + "\"");
    }
    const std::int64_t count = parse_int64(record[2], path.string());
    if (count < 1) {
      throw std::runtime_error(path.string() + ": cell count must be >= 1");
    }
    matrix.rows[static_cast<std::size_t>(row->second)].push_back(
        {column->second, static_cast<int>(count)});
    matrix.column_totals[static_cast<std::size_t>(column->second)] += count;
  }

  for (auto& row : matrix.rows) {
    std::sort(row.begin(), row.end());
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i].first == row[i - 1].first) {
        throw std::runtime_error(path.string() + ": duplicate matrix cell");
      }
    }
    if (row.empty()) {
      ++matrix.zero_match_ad_count;
    }
  }
  for (std::int64_t total : matrix.column_totals) {
    if (total > 0) {
      ++matrix.matched_skill_count;
    }
  }
  return matrix;
}

void write_edge_list(const std::filesystem::path& path,
                     const SkillGraph& graph) {
  struct Line {
    std::string_view a;
    std::string_view b;
    int weight;
  };
  std::vector<Line> lines;
  lines.reserve(graph.edge_count);
  for (std::size_t u = 0; u < graph.node_count(); ++u) {
    for (const auto& [v, weight] : graph.adjacency[u]) {
      if (static_cast<int>(u) < v) {
        std::string_view first = graph.names[u];
        std::string_view second = graph.names[static_cast<std::size_t>(v)];
        if (second < first) {
          std::swap(first, second);
        }
        lines.push_back({first, second, weight});
      }
    }
  }
  std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
    if (x.a != y.a) {
      return x.a < y.a;
    }
    return x.b < y.b;
  });

  std::ofstream out = open_output(path);
  out << "skill_a,skill_b,weight\n";
  for (const Line& line : lines) {
    out << csv_escape(line.a) << ',' << csv_escape(line.b) << ',' << line.weight
        << '\n';
  }
  finish_output(out, path);
}

void write_node_list(const std::filesystem::path& path,
                     const SkillGraph& graph) {
  std::ofstream out = open_output(path);
  out << "skill,occurrence_count\n";
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    out << csv_escape(graph.names[v]) << ',' << graph.occurrence_counts[v]
        << '\n';
  }
  finish_output(out, path);
}

SkillGraph read_graph(const std::filesystem::path& edges_path,
                      const std::filesystem::path& nodes_path) {
  std::vector<std::string> names;
  std::vector<std::int64_t> occurrence_counts;
  for (const auto& record :
       read_csv_file(nodes_path, "skill,occurrence_count")) {
    if (record.size() != 2) {
      throw std::runtime_error(nodes_path.string() +
                               ": node line needs 2 fields");
    }
    names.push_back(record[0]);
    occurrence_counts.push_back(parse_int64(record[1], nodes_path.string()));
  }

  std::unordered_map<std::string_view, int> node_of_name;
  node_of_name.reserve(names.size());
  for (std::size_t v = 0; v < names.size(); ++v) {
    if (!node_of_name.emplace(names[v], static_cast<int>(v)).second) {
      throw std::runtime_error(nodes_path.string() + ": duplicate skill \"" +
                               names[v] + "\"");
    }
  }

  std::vector<WeightedEdge> edges;
  for (const auto& record : read_csv_file(edges_path, "skill_a,skill_b,weight")) {
    if (record.size() != 3) {
      throw std::runtime_error(edges_path.string() +
                               ": edge line needs 3 fields");
    }
    const auto a = node_of_name.find(record[0]);
    const auto b = node_of_name.find(record[1]);
    if (a == node_of_name.end() || b == node_of_name.end()) {
      throw std::runtime_error(edges_path.string() +
                               ": edge references unknown skill");
    }
    const std::int64_t weight = parse_int64(record[2], edges_path.string());
    edges.push_back(
        {a->second, b->second, static_cast<int>(weight)});
  }
  return make_skill_graph(std::move(names), edges, std::move(occurrence_counts));
}

void write_scores_csv(const std::filesystem::path& path, const SkillGraph& graph,
                      const CentralityScores& scores) {
  if (scores.scores.size() != graph.node_count()) {
    throw std::invalid_argument("scores do not cover every graph node");
  }
  std::ofstream out = open_output(path);
  out << "skill,score\n";
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    out << csv_escape(graph.names[v]) << ',' << format_double(scores.scores[v])
        << '\n';
  }
  finish_output(out, path);
}

CentralityScores read_scores_csv(const std::filesystem::path& path,
                                 const SkillGraph& graph,
                                 CentralityMeasure measure) {
  const auto records = read_csv_file(path, "skill,score");
  if (records.size() != graph.node_count()) {
    throw std::runtime_error(path.string() +
                             ": scores do not cover every graph node");
  }
  CentralityScores scores;
  scores.measure = measure;
  scores.scores.resize(graph.node_count());
  for (std::size_t v = 0; v < records.size(); ++v) {
    if (records[v].size() != 2) {
      throw std::runtime_error(path.string() + ": score line needs 2 fields");
    }
    if (records[v][0] != graph.names[v]) {
      throw std::runtime_error(path.string() + ": skill \"" + records[v][0] +
                               "\" does not match graph node order");
    }
    const std::string& field = records[v][1];
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw std::runtime_error(path.string() + ": expected real, found \"" +
                               field + "\"");
    }
    scores.scores[v] = value;
  }
  return scores;
}

void write_assignments_csv(const std::filesystem::path& path,
                           const SkillGraph& graph, const Partition& partition) {
  if (partition.assignment.size() != graph.node_count()) {
    throw std::invalid_argument("partition does not cover every graph node");
  }
  std::ofstream out = open_output(path);
  out << "skill,community_id\n";
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    out << csv_escape(graph.names[v]) << ',' << partition.assignment[v] << '\n';
  }
  finish_output(out, path);
}

Partition read_assignments_csv(const std::filesystem::path& path,
                               const SkillGraph& graph) {
  const auto records = read_csv_file(path, "skill,community_id");
  if (records.size() != graph.node_count()) {
    throw std::runtime_error(path.string() +
                             ": assignments do not cover every graph node");
  }
  std::vector<int> assignment(graph.node_count());
  for (std::size_t v = 0; v < records.size(); ++v) {
    if (records[v].size() != 2) {
      throw std::runtime_error(path.string() +
                               ": assignment line needs 2 fields");
    }
    if (records[v][0] != graph.names[v]) {
      throw std::runtime_error(path.string() + ": skill \"" + records[v][0] +
                               "\" does not match graph node order");
    }
    const std::int64_t community = parse_int64(records[v][1], path.string());
    if (community < 0) {
      throw std::runtime_error(path.string() + ": negative community id");
    }
    assignment[v] = static_cast<int>(community);
  }
  return partition_from_assignment(graph, assignment);
}

std::map<int, std::string> load_labels(const std::filesystem::path& path) {
  std::map<int, std::string> labels;
  for (const auto& record : parse_csv(read_file(path), path.string())) {
    if (!record.empty() && !record[0].empty() && record[0][0] == '#') {
      continue;
    }
    if (record.size() == 2 && record[0] == "community_id" &&
        record[1] == "label") {
      continue;  // optional header
    }
    if (record.size() != 2) {
      throw std::runtime_error(path.string() +
                               ": label line needs 2 fields (community_id,label)");
    }
    const std::int64_t community = parse_int64(record[0], path.string());
    if (!labels.emplace(static_cast<int>(community), record[1]).second) {
      throw std::runtime_error(path.string() +
                               ": duplicate label for community " + record[0]);
    }
  }
  return labels;
}

std::string format_stats_table(const MacroStats& stats) {
  return render_table({{"Measure", "Value"},
                       {"Nodes", std::to_string(stats.node_count)},
                       {"Edges", std::to_string(stats.edge_count)},
                       {"Average Degree", fixed_decimals(stats.average_degree, 3)},
                       {"Density", fixed_decimals(stats.density, 3)}});
}

std::string format_topk_table(const std::vector<CentralityRanking>& rankings) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"Rank"};
  std::size_t depth = 0;
  for (const CentralityRanking& ranking : rankings) {
    header.push_back(measure_heading(ranking.measure));
    depth = std::max(depth, ranking.entries.size());
  }
  rows.push_back(std::move(header));
  for (std::size_t i = 0; i < depth; ++i) {
    std::vector<std::string> row{std::to_string(i + 1)};
    for (const CentralityRanking& ranking : rankings) {
      row.push_back(i < ranking.entries.size() ? ranking.entries[i].skill : "");
    }
    rows.push_back(std::move(row));
  }
  return render_table(rows);
}

std::string format_profiles_table(
    const std::vector<CommunityProfile>& profiles) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Community", "Label", "Members", "Percent", "Top Members"});
  for (const CommunityProfile& profile : profiles) {
    std::string members;
    for (std::size_t i = 0; i < profile.top_members.size(); ++i) {
      if (i > 0) {
        members += ", ";
      }
      members += profile.top_members[i];
    }
    rows.push_back({std::to_string(profile.community),
                    profile.label.value_or("-"),
                    std::to_string(profile.member_count),
                    fixed_decimals(profile.percent_of_total, 1), members});
  }
  return render_table(rows);
}

std::string format_coverage_table(const CoverageReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Community", "Covered Ads", "Coverage"});
  for (const CommunityCoverage& entry : report.communities) {
    rows.push_back({std::to_string(entry.community),
                    std::to_string(entry.covered_ads), percent_1dp(entry.ratio)});
  }
  rows.push_back({"all (union)", std::to_string(report.union_covered_ads),
                  percent_1dp(report.union_ratio)});
  return render_table(rows);
}

std::string format_trend_table(const TrendReport& report) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"Community"};
  for (int year : report.years) {
    header.push_back(std::to_string(year));
  }
  rows.push_back(std::move(header));
  for (std::size_t c = 0; c < report.communities.size(); ++c) {
    std::vector<std::string> row{std::to_string(report.communities[c])};
    for (std::size_t y = 0; y < report.years.size(); ++y) {
      row.push_back(report.cells[c][y] ? percent_1dp(*report.cells[c][y]) : "-");
    }
    rows.push_back(std::move(row));
  }
  return render_table(rows);
}

}  // namespace skillnet
