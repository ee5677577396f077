#include "skillnet/pipeline.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "skillnet/io.hpp"
#include "skillnet/reports.hpp"
#include "skillnet/text.hpp"

namespace skillnet {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << content;
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

void write_json_file(const std::filesystem::path& path,
                     const nlohmann::json& document) {
  write_text_file(path, document.dump(2) + "\n");
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t' ||
                           text.front() == '\r')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\r')) {
    text.remove_suffix(1);
  }
  return text;
}

std::string hex64(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

std::string iso_date(const CalendarDate& date) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02d", date.year, date.month,
                date.day);
  return buffer;
}

std::string measures_to_string(const std::vector<CentralityMeasure>& measures) {
  std::string out;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += to_string(measures[i]);
  }
  return out;
}

bool parse_bool(std::string_view value, const std::string& where) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw PipelineError(Stage::config,
                      where + ": expected true or false, found \"" +
                          std::string(value) + "\"");
}

template <typename T>
T parse_number(std::string_view value, const std::string& where) {
  T out{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw PipelineError(Stage::config, where + ": invalid number \"" +
                                           std::string(value) + "\"");
  }
  return out;
}

nlohmann::json json_or_null(const std::optional<int>& value) {
  if (value) {
    return *value;
  }
  return nullptr;
}

}  // namespace

std::vector<CentralityMeasure> parse_measure_list(std::string_view text,
                                                  const std::string& where) {
  std::vector<CentralityMeasure> measures;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = trim(
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                           : comma - start));
    if (!item.empty()) {
      const auto measure = parse_measure(item);
      if (!measure) {
        throw PipelineError(Stage::config,
                            where + ": unknown measure \"" + std::string(item) +
                                "\" (expected degree, betweenness, closeness, "
                                "eigenvector)");
      }
      for (CentralityMeasure seen : measures) {
        if (seen == *measure) {
          throw PipelineError(Stage::config, where + ": duplicate measure \"" +
                                                 std::string(item) + "\"");
        }
      }
      measures.push_back(*measure);
    }
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  if (measures.empty()) {
    throw PipelineError(Stage::config, where + ": measure list is empty");
  }
  return measures;
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::config:
      return "config";
    case Stage::ingest:
      return "ingest";
    case Stage::build:
      return "build";
    case Stage::stats:
      return "stats";
    case Stage::centrality:
      return "centrality";
    case Stage::communities:
      return "communities";
    case Stage::coverage:
      return "coverage";
    case Stage::trend:
      return "trend";
    case Stage::export_graph:
      return "export";
  }
  return "unknown";
}

int stage_exit_code(Stage stage) {
  switch (stage) {
    case Stage::config:
      return 1;
    case Stage::ingest:
      return 2;
    case Stage::build:
      return 3;
    case Stage::stats:
      return 4;
    case Stage::centrality:
      return 5;
    case Stage::communities:
      return 6;
    case Stage::coverage:
      return 7;
    case Stage::trend:
      return 8;
    case Stage::export_graph:
      return 9;
  }
  return 1;
}

void merge_config_file(PipelineConfig& config,
                       const std::filesystem::path& path) {
  std::string content;
  try {
    content = read_file(path);
  } catch (const std::exception& e) {
    throw PipelineError(Stage::config, e.what());
  }

  std::istringstream lines(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') {
      continue;
    }
    const std::string where = path.string() + ":" + std::to_string(line_no);
    const std::size_t eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw PipelineError(Stage::config,
                          where + ": expected key = value, found \"" +
                              std::string(text) + "\"");
    }
    const std::string key(trim(text.substr(0, eq)));
    const std::string value(trim(text.substr(eq + 1)));

    if (key == "lexicon") {
      config.lexicon_path = value;
    } else if (key == "corpus") {
      config.corpus_path = value;
    } else if (key == "workdir") {
      config.workdir = value;
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(value, where);
    } else if (key == "measures") {
      config.measures = parse_measure_list(value, where);
    } else if (key == "top_k") {
      config.top_k = parse_number<int>(value, where);
    } else if (key == "weighted_paths") {
      config.weighted_paths = parse_bool(value, where);
    } else if (key == "normalized") {
      config.normalized = parse_bool(value, where);
    } else if (key == "eigenvector_tolerance") {
      config.eigenvector_tolerance = parse_number<double>(value, where);
    } else if (key == "eigenvector_max_iterations") {
      config.eigenvector_max_iterations = parse_number<int>(value, where);
    } else if (key == "labels") {
      if (value.empty()) {
        config.label_path.reset();
      } else {
        config.label_path = value;
      }
    } else {
      throw PipelineError(Stage::config,
                          where + ": unknown config key \"" + key + "\"");
    }
  }
}

std::string serialize_config(const PipelineConfig& config) {
  std::ostringstream out;
  out << "# effective pipeline configuration (workdir supplied per invocation)\n";
  out << "lexicon = " << config.lexicon_path.string() << "\n";
  out << "corpus = " << config.corpus_path.string() << "\n";
  out << "seed = " << config.seed << "\n";
  out << "measures = " << measures_to_string(config.measures) << "\n";
  out << "top_k = " << config.top_k << "\n";
  out << "weighted_paths = " << (config.weighted_paths ? "true" : "false")
      << "\n";
  out << "normalized = " << (config.normalized ? "true" : "false") << "\n";
  out << "eigenvector_tolerance = " << format_double(config.eigenvector_tolerance)
      << "\n";
  out << "eigenvector_max_iterations = " << config.eigenvector_max_iterations
      << "\n";
  if (config.label_path) {
    out << "labels = " << config.label_path->string() << "\n";
  }
  return std::move(out).str();
}

// --- WorkdirLock ------------------------------------------------------------

void Pipeline::WorkdirLock::acquire(const std::filesystem::path& path) {
  fd_ = ::open(path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd_ < 0) {
    if (errno == EEXIST) {
      throw PipelineError(Stage::config,
                          "workdir is locked by another run: " + path.string() +
                              " exists (remove it if stale)");
    }
    throw PipelineError(Stage::config,
                        "cannot create lock file " + path.string());
  }
  path_ = path;
  const std::string pid = std::to_string(::getpid()) + "\n";
  if (::write(fd_, pid.data(), pid.size()) < 0) {
    // The lock still holds; the pid note is best-effort diagnostics.
  }
}

Pipeline::WorkdirLock::~WorkdirLock() {
  if (fd_ >= 0) {
    ::close(fd_);
    ::unlink(path_.c_str());
  }
}

// --- Pipeline ----------------------------------------------------------------

Pipeline::Pipeline(PipelineConfig config, std::ostream* log)
    : config_(std::move(config)), log_(log) {
  if (config_.workdir.empty()) {
    throw PipelineError(Stage::config, "workdir not set");
  }
  if (config_.top_k < 1) {
    throw PipelineError(Stage::config, "top_k must be >= 1");
  }
  if (config_.measures.empty()) {
    throw PipelineError(Stage::config, "measure list is empty");
  }
  if (!(config_.eigenvector_tolerance > 0.0)) {
    throw PipelineError(Stage::config, "eigenvector_tolerance must be > 0");
  }
  if (config_.eigenvector_max_iterations < 1) {
    throw PipelineError(Stage::config,
                        "eigenvector_max_iterations must be >= 1");
  }

  std::error_code ec;
  std::filesystem::create_directories(config_.workdir, ec);
  if (ec) {
    throw PipelineError(Stage::config, "cannot create workdir " +
                                           config_.workdir.string() + ": " +
                                           ec.message());
  }
  lock_.acquire(config_.workdir / ".lock");
  load_manifest();
  try {
    write_text_file(artifact("config.txt"), serialize_config(config_));
  } catch (const std::exception& e) {
    throw PipelineError(Stage::config, e.what());
  }
}

Pipeline::~Pipeline() = default;

std::filesystem::path Pipeline::artifact(std::string_view name) const {
  return config_.workdir / name;
}

std::string Pipeline::hash_input(Stage stage,
                                 const std::filesystem::path& path) const {
  try {
    return hex64(fnv1a_file(path));
  } catch (const std::exception& e) {
    throw PipelineError(stage, e.what());
  }
}

bool Pipeline::is_fresh(const std::string& stage_name,
                        const StageRecord& record) const {
  const auto it = manifest_.find(stage_name);
  if (it == manifest_.end() || it->second.inputs != record.inputs ||
      it->second.params != record.params ||
      it->second.outputs != record.outputs) {
    return false;
  }
  for (const std::string& output : record.outputs) {
    if (!std::filesystem::exists(artifact(output))) {
      return false;
    }
  }
  return true;
}

void Pipeline::commit(const std::string& stage_name, const StageRecord& record) {
  manifest_[stage_name] = record;
  save_manifest();
}

void Pipeline::load_manifest() {
  const std::filesystem::path path = artifact("manifest.json");
  if (!std::filesystem::exists(path)) {
    return;
  }
  try {
    const nlohmann::json document = nlohmann::json::parse(read_file(path));
    for (const auto& [name, entry] : document.at("stages").items()) {
      StageRecord record;
      for (const auto& [label, hash] : entry.at("inputs").items()) {
        record.inputs[label] = hash.get<std::string>();
      }
      record.params = entry.at("params").get<std::string>();
      record.outputs = entry.at("outputs").get<std::vector<std::string>>();
      manifest_[name] = std::move(record);
    }
  } catch (const std::exception&) {
    manifest_.clear();
    note("[manifest] unreadable; all stages will rebuild");
  }
}

void Pipeline::save_manifest() const {
  nlohmann::json stages = nlohmann::json::object();
  for (const auto& [name, record] : manifest_) {
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& [label, hash] : record.inputs) {
      inputs[label] = hash;
    }
    stages[name] = {{"inputs", std::move(inputs)},
                    {"params", record.params},
                    {"outputs", record.outputs}};
  }
  write_json_file(artifact("manifest.json"), {{"stages", std::move(stages)}});
}

void Pipeline::note(const std::string& line) const {
  if (log_) {
    *log_ << line << '\n';
  }
}

// --- lazy accessors -----------------------------------------------------------

const SkillLexicon& Pipeline::lexicon() {
  if (!lexicon_) {
    lexicon_ = load_lexicon(artifact("lexicon.cache.txt"));
  }
  return *lexicon_;
}

const Corpus& Pipeline::corpus() {
  if (!corpus_) {
    corpus_ = load_corpus(artifact("corpus.cache.jsonl"));
  }
  return *corpus_;
}

const AdSkillMatrix& Pipeline::matrix() {
  if (!matrix_) {
    std::vector<std::string> ad_ids;
    ad_ids.reserve(corpus().size());
    for (const JobAd& ad : corpus().ads) {
      ad_ids.push_back(ad.id);
    }
    std::vector<std::string> skill_names;
    skill_names.reserve(lexicon().size());
    for (std::size_t i = 0; i < lexicon().size(); ++i) {
      skill_names.push_back(lexicon().entry(i).canonical);
    }
    matrix_ = read_matrix_csv(artifact("matrix.csv"), std::move(ad_ids),
                              std::move(skill_names));
  }
  return *matrix_;
}

const SkillGraph& Pipeline::graph() {
  if (!graph_) {
    graph_ = read_graph(artifact("edges.csv"), artifact("nodes.csv"));
  }
  return *graph_;
}

const Partition& Pipeline::partition() {
  if (!partition_) {
    partition_ = read_assignments_csv(artifact("communities.csv"), graph());
  }
  return *partition_;
}

const CentralityScores& Pipeline::scores(CentralityMeasure measure) {
  auto it = scores_.find(measure);
  if (it == scores_.end()) {
    CentralityScores loaded = read_scores_csv(
        artifact(std::string("centrality_") + std::string(to_string(measure)) +
                 ".csv"),
        graph(), measure);
    loaded.normalized = config_.normalized;
    loaded.weighted_paths = config_.weighted_paths;
    it = scores_.emplace(measure, std::move(loaded)).first;
  }
  return it->second;
}

// --- stages -------------------------------------------------------------------

void Pipeline::ensure_ingest() {
  if (already_verified(Stage::ingest)) {
    return;
  }

  if (config_.lexicon_path.empty()) {
    throw PipelineError(Stage::ingest, "lexicon path not configured");
  }
  if (config_.corpus_path.empty()) {
    throw PipelineError(Stage::ingest, "corpus path not configured");
  }

  StageRecord record;
  record.inputs["corpus"] = hash_input(Stage::ingest, config_.corpus_path);
  record.inputs["lexicon"] = hash_input(Stage::ingest, config_.lexicon_path);
  record.outputs = {"corpus.cache.jsonl", "ingest.json", "lexicon.cache.txt"};
  if (is_fresh("ingest", record)) {
    note("[ingest] up to date");
    verified_.insert(Stage::ingest);
    return;
  }

  try {
    lexicon_ = load_lexicon(config_.lexicon_path);
    corpus_ = load_corpus(config_.corpus_path);
    if (corpus_->date_warning_count > 0) {
      note("[ingest] warning: " + std::to_string(corpus_->date_warning_count) +
           " record(s) with unparseable dates kept as undated");
    }

    std::string lexicon_cache;
    for (std::size_t i = 0; i < lexicon_->size(); ++i) {
      const SkillEntry& entry = lexicon_->entry(i);
      lexicon_cache += entry.canonical;
      for (const std::string& alias : entry.aliases) {
        lexicon_cache += '|';
        lexicon_cache += alias;
      }
      lexicon_cache += '\n';
    }
    write_text_file(artifact("lexicon.cache.txt"), lexicon_cache);

    std::string corpus_cache;
    for (const JobAd& ad : corpus_->ads) {
      const nlohmann::json record_json = {
          {"date", ad.posted_date ? iso_date(*ad.posted_date) : ""},
          {"id", ad.id},
          {"text", normalize_text(ad.text)}};
      corpus_cache += record_json.dump();
      corpus_cache += '\n';
    }
    write_text_file(artifact("corpus.cache.jsonl"), corpus_cache);

    write_json_file(artifact("ingest.json"),
                    {{"corpus_records", corpus_->size()},
                     {"date_warnings", corpus_->date_warning_count},
                     {"dated_records", corpus_->dated_count},
                     {"lexicon_entries", lexicon_->size()},
                     {"max_year", json_or_null(corpus_->max_year)},
                     {"min_year", json_or_null(corpus_->min_year)}});
  } catch (const std::exception& e) {
    throw PipelineError(Stage::ingest, e.what());
  }
  commit("ingest", record);
  note("[ingest] done");
  verified_.insert(Stage::ingest);
}

void Pipeline::ensure_build() {
  if (already_verified(Stage::build)) {
    return;
  }

  ensure_ingest();

  StageRecord record;
  record.inputs["corpus_cache"] =
      hash_input(Stage::build, artifact("corpus.cache.jsonl"));
  record.inputs["lexicon_cache"] =
      hash_input(Stage::build, artifact("lexicon.cache.txt"));
  record.outputs = {"build.json", "edges.csv", "matrix.csv", "nodes.csv"};
  if (is_fresh("build", record)) {
    note("[build] up to date");
    verified_.insert(Stage::build);
    return;
  }

  try {
    matrix_ = build_matrix(corpus(), lexicon());
    graph_ = build_graph(*matrix_, [this](const std::string& warning) {
      note("[build] warning: " + warning);
    });

    write_matrix_csv(artifact("matrix.csv"), *matrix_);
    write_edge_list(artifact("edges.csv"), *graph_);
    write_node_list(artifact("nodes.csv"), *graph_);

    std::size_t nonzero_cells = 0;
    for (const auto& row : matrix_->rows) {
      nonzero_cells += row.size();
    }
    write_json_file(artifact("build.json"),
                    {{"ads_processed", matrix_->row_count()},
                     {"columns", matrix_->column_count()},
                     {"matched_skills", matrix_->matched_skill_count},
                     {"nonzero_cells", nonzero_cells},
                     {"zero_match_ads", matrix_->zero_match_ad_count}});
  } catch (const std::exception& e) {
    throw PipelineError(Stage::build, e.what());
  }
  commit("build", record);
  note("[build] done");
  verified_.insert(Stage::build);
}

void Pipeline::ensure_stats() {
  if (already_verified(Stage::stats)) {
    return;
  }

  ensure_build();

  StageRecord record;
  record.inputs["edges"] = hash_input(Stage::stats, artifact("edges.csv"));
  record.inputs["nodes"] = hash_input(Stage::stats, artifact("nodes.csv"));
  record.outputs = {"stats.json", "stats.txt"};
  if (is_fresh("stats", record)) {
    note("[stats] up to date");
    verified_.insert(Stage::stats);
    return;
  }

  try {
    const MacroStats stats = macro_measures(graph());
    write_json_file(artifact("stats.json"),
                    {{"average_degree", stats.average_degree},
                     {"density", stats.density},
                     {"edges", stats.edge_count},
                     {"nodes", stats.node_count}});
    write_text_file(artifact("stats.txt"), format_stats_table(stats));
  } catch (const std::exception& e) {
    throw PipelineError(Stage::stats, e.what());
  }
  commit("stats", record);
  note("[stats] done");
  verified_.insert(Stage::stats);
}

void Pipeline::ensure_centrality() {
  if (already_verified(Stage::centrality)) {
    return;
  }

  ensure_build();

  StageRecord record;
  record.inputs["edges"] = hash_input(Stage::centrality, artifact("edges.csv"));
  record.inputs["nodes"] = hash_input(Stage::centrality, artifact("nodes.csv"));
  {
    std::ostringstream params;
    params << "measures=" << measures_to_string(config_.measures)
           << ";top_k=" << config_.top_k
           << ";weighted_paths=" << (config_.weighted_paths ? 1 : 0)
           << ";normalized=" << (config_.normalized ? 1 : 0)
           << ";eig_tol=" << format_double(config_.eigenvector_tolerance)
           << ";eig_iter=" << config_.eigenvector_max_iterations;
    record.params = std::move(params).str();
  }
  for (CentralityMeasure measure : config_.measures) {
    record.outputs.push_back(std::string("centrality_") +
                             std::string(to_string(measure)) + ".csv");
  }
  record.outputs.push_back("rankings.json");
  record.outputs.push_back("topk.txt");
  if (is_fresh("centrality", record)) {
    note("[centrality] up to date");
    verified_.insert(Stage::centrality);
    return;
  }

  try {
    const CentralityOptions options{config_.normalized, config_.weighted_paths,
                                    0};
    std::vector<CentralityRanking> rankings;
    nlohmann::json measures_json = nlohmann::json::object();
    for (CentralityMeasure measure : config_.measures) {
      CentralityScores result;
      switch (measure) {
        case CentralityMeasure::degree:
          result = degree_centrality(graph(), options);
          break;
        case CentralityMeasure::betweenness:
          result = betweenness_centrality(graph(), options);
          break;
        case CentralityMeasure::closeness:
          result = closeness_centrality(graph(), options);
          break;
        case CentralityMeasure::eigenvector:
          result = eigenvector_centrality(
              graph(), EigenvectorOptions{config_.eigenvector_tolerance,
                                          config_.eigenvector_max_iterations});
          break;
      }
      write_scores_csv(artifact(std::string("centrality_") +
                                std::string(to_string(measure)) + ".csv"),
                       graph(), result);
      CentralityRanking ranking = top_k(graph(), result, config_.top_k);
      if (ranking.clipped) {
        note(std::string("[centrality] note: top_k exceeds node count; "
                         "full population listed for ") +
             std::string(to_string(measure)));
      }
      nlohmann::json entries = nlohmann::json::array();
      for (const RankedSkill& entry : ranking.entries) {
        entries.push_back({{"rank", entry.rank},
                           {"score", entry.score},
                           {"skill", entry.skill}});
      }
      measures_json[std::string(to_string(measure))] = {
          {"clipped", ranking.clipped}, {"entries", std::move(entries)}};
      rankings.push_back(std::move(ranking));
      scores_[measure] = std::move(result);
    }
    write_json_file(artifact("rankings.json"),
                    {{"k", config_.top_k}, {"measures", std::move(measures_json)}});
    write_text_file(artifact("topk.txt"), format_topk_table(rankings));
  } catch (const std::exception& e) {
    throw PipelineError(Stage::centrality, e.what());
  }
  commit("centrality", record);
  note("[centrality] done");
  verified_.insert(Stage::centrality);
}

void Pipeline::ensure_communities() {
  if (already_verified(Stage::communities)) {
    return;
  }

  ensure_build();

  StageRecord record;
  record.inputs["edges"] =
      hash_input(Stage::communities, artifact("edges.csv"));
  record.inputs["nodes"] =
      hash_input(Stage::communities, artifact("nodes.csv"));
  if (config_.label_path) {
    record.inputs["labels"] =
        hash_input(Stage::communities, *config_.label_path);
  }
  record.params = "seed=" + std::to_string(config_.seed);
  record.outputs = {"communities.csv", "profiles.json", "profiles.txt"};
  if (is_fresh("communities", record)) {
    note("[communities] up to date");
    verified_.insert(Stage::communities);
    return;
  }

  try {
    partition_ = louvain(graph(), config_.seed);

    std::map<int, std::string> labels;
    if (config_.label_path) {
      labels = load_labels(*config_.label_path);
    }
    const std::vector<CommunityProfile> profiles = community_profiles(
        graph(), *partition_, labels, 15, [this](const std::string& warning) {
          note("[communities] warning: " + warning);
        });

    write_assignments_csv(artifact("communities.csv"), graph(), *partition_);

    nlohmann::json profiles_json = nlohmann::json::array();
    for (const CommunityProfile& profile : profiles) {
      profiles_json.push_back(
          {{"community", profile.community},
           {"label", profile.label ? nlohmann::json(*profile.label)
                                   : nlohmann::json(nullptr)},
           {"member_count", profile.member_count},
           {"percent_of_total", profile.percent_of_total},
           {"top_members", profile.top_members}});
    }
    write_json_file(artifact("profiles.json"),
                    {{"communities", std::move(profiles_json)},
                     {"community_count", partition_->community_count},
                     {"modularity", partition_->modularity}});

    char modularity_line[64];
    std::snprintf(modularity_line, sizeof(modularity_line), "%.6f",
                  partition_->modularity);
    write_text_file(artifact("profiles.txt"),
                    format_profiles_table(profiles) + "\nCommunities: " +
                        std::to_string(partition_->community_count) +
                        "\nModularity: " + modularity_line + "\n");
  } catch (const std::exception& e) {
    throw PipelineError(Stage::communities, e.what());
  }
  commit("communities", record);
  note("[communities] done");
  verified_.insert(Stage::communities);
}

void Pipeline::ensure_coverage() {
  if (already_verified(Stage::coverage)) {
    return;
  }

  ensure_communities();

  StageRecord record;
  record.inputs["assignments"] =
      hash_input(Stage::coverage, artifact("communities.csv"));
  record.inputs["corpus_cache"] =
      hash_input(Stage::coverage, artifact("corpus.cache.jsonl"));
  record.inputs["matrix"] = hash_input(Stage::coverage, artifact("matrix.csv"));
  record.outputs = {"coverage.json", "coverage.txt"};
  if (is_fresh("coverage", record)) {
    note("[coverage] up to date");
    verified_.insert(Stage::coverage);
    return;
  }

  try {
    const CoverageReport report = ad_coverage(matrix(), graph(), partition());
    nlohmann::json communities_json = nlohmann::json::array();
    for (const CommunityCoverage& entry : report.communities) {
      communities_json.push_back({{"community", entry.community},
                                  {"covered_ads", entry.covered_ads},
                                  {"ratio", entry.ratio}});
    }
    write_json_file(artifact("coverage.json"),
                    {{"communities", std::move(communities_json)},
                     {"total_ads", report.total_ads},
                     {"union",
                      {{"covered_ads", report.union_covered_ads},
                       {"ratio", report.union_ratio}}}});
    write_text_file(artifact("coverage.txt"), format_coverage_table(report));
  } catch (const std::exception& e) {
    throw PipelineError(Stage::coverage, e.what());
  }
  commit("coverage", record);
  note("[coverage] done");
  verified_.insert(Stage::coverage);
}

void Pipeline::ensure_trend() {
  if (already_verified(Stage::trend)) {
    return;
  }

  ensure_communities();

  StageRecord record;
  record.inputs["assignments"] =
      hash_input(Stage::trend, artifact("communities.csv"));
  record.inputs["corpus_cache"] =
      hash_input(Stage::trend, artifact("corpus.cache.jsonl"));
  record.inputs["matrix"] = hash_input(Stage::trend, artifact("matrix.csv"));
  record.outputs = {"trend.json", "trend.txt"};
  if (is_fresh("trend", record)) {
    note("[trend] up to date");
    verified_.insert(Stage::trend);
    return;
  }

  try {
    const TrendReport report =
        yearly_trend(corpus(), matrix(), graph(), partition());
    nlohmann::json communities_json = nlohmann::json::array();
    for (std::size_t c = 0; c < report.communities.size(); ++c) {
      nlohmann::json cells = nlohmann::json::array();
      for (const std::optional<double>& cell : report.cells[c]) {
        cells.push_back(cell ? nlohmann::json(*cell) : nlohmann::json(nullptr));
      }
      communities_json.push_back(
          {{"cells", std::move(cells)}, {"community", report.communities[c]}});
    }
    write_json_file(artifact("trend.json"),
                    {{"communities", std::move(communities_json)},
                     {"dated_ads_per_year", report.dated_ads_per_year},
                     {"years", report.years}});
    write_text_file(artifact("trend.txt"), format_trend_table(report));
  } catch (const std::exception& e) {
    throw PipelineError(Stage::trend, e.what());
  }
  commit("trend", record);
  note("[trend] done");
  verified_.insert(Stage::trend);
}

void Pipeline::ensure_export() {
  if (already_verified(Stage::export_graph)) {
    return;
  }

  ensure_centrality();
  ensure_communities();

  StageRecord record;
  record.inputs["assignments"] =
      hash_input(Stage::export_graph, artifact("communities.csv"));
  record.inputs["edges"] = hash_input(Stage::export_graph, artifact("edges.csv"));
  record.inputs["nodes"] = hash_input(Stage::export_graph, artifact("nodes.csv"));
  for (CentralityMeasure measure : config_.measures) {
    const std::string name =
        std::string("centrality_") + std::string(to_string(measure)) + ".csv";
    record.inputs["scores_" + std::string(to_string(measure))] =
        hash_input(Stage::export_graph, artifact(name));
  }
  record.params = "measures=" + measures_to_string(config_.measures);
  record.outputs = {"graph.gexf"};
  if (is_fresh("export", record)) {
    note("[export] up to date");
    verified_.insert(Stage::export_graph);
    return;
  }

  try {
    std::vector<CentralityScores> score_sets;
    score_sets.reserve(config_.measures.size());
    for (CentralityMeasure measure : config_.measures) {
      score_sets.push_back(scores(measure));
    }
    write_gexf(artifact("graph.gexf"), graph(), &partition(), score_sets);
  } catch (const std::exception& e) {
    throw PipelineError(Stage::export_graph, e.what());
  }
  commit("export", record);
  note("[export] done");
  verified_.insert(Stage::export_graph);
}

void Pipeline::run_all() {
  ensure_ingest();
  ensure_build();
  ensure_stats();
  ensure_centrality();
  ensure_communities();
  ensure_coverage();
  ensure_trend();
  ensure_export();
  note("[run] complete");
}

void Pipeline::export_to(ExportFormat format,
                         const std::filesystem::path& out_path) {
  switch (format) {
    case ExportFormat::gexf: {
      ensure_centrality();
      ensure_communities();
      try {
        std::vector<CentralityScores> score_sets;
        for (CentralityMeasure measure : config_.measures) {
          score_sets.push_back(scores(measure));
        }
        write_gexf(out_path, graph(), &partition(), score_sets);
      } catch (const std::exception& e) {
        throw PipelineError(Stage::export_graph, e.what());
      }
      return;
    }
    case ExportFormat::edgelist_csv: {
      ensure_build();
      try {
        write_edge_list(out_path, graph());
      } catch (const std::exception& e) {
        throw PipelineError(Stage::export_graph, e.what());
      }
      return;
    }
    case ExportFormat::report_json: {
      ensure_stats();
      ensure_centrality();
      ensure_communities();
      try {
        const nlohmann::json bundle = {
            {"macro_stats",
             nlohmann::json::parse(read_file(artifact("stats.json")))},
            {"profiles",
             nlohmann::json::parse(read_file(artifact("profiles.json")))},
            {"rankings",
             nlohmann::json::parse(read_file(artifact("rankings.json")))}};
        write_json_file(out_path, bundle);
      } catch (const std::exception& e) {
        throw PipelineError(Stage::export_graph, e.what());
      }
      return;
    }
  }
  throw PipelineError(Stage::export_graph, "unknown export format");
}

}  // namespace skillnet
