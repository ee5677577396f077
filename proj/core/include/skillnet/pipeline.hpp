#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "skillnet/centrality.hpp"
#include "skillnet/community.hpp"
#include "skillnet/corpus.hpp"
#include "skillnet/gexf.hpp"
#include "skillnet/graph.hpp"
#include "skillnet/lexicon.hpp"
#include "skillnet/matrix.hpp"

namespace skillnet {

/// Everything a pipeline run needs. Loadable from a flat key=value config
/// file; command-line flags override file values. The effective config
/// (minus the workdir, which is supplied per invocation) is serialized into
/// the workdir so a run is reproducible from its artifacts.
struct PipelineConfig {
  std::filesystem::path lexicon_path;
  std::filesystem::path corpus_path;
  std::filesystem::path workdir;
  std::uint64_t seed = 42;
  std::vector<CentralityMeasure> measures = {
      CentralityMeasure::degree, CentralityMeasure::betweenness,
      CentralityMeasure::closeness, CentralityMeasure::eigenvector};
  int top_k = 15;
  bool weighted_paths = false;
  bool normalized = false;
  double eigenvector_tolerance = 1e-10;
  int eigenvector_max_iterations = 1000;
  std::optional<std::filesystem::path> label_path;
};

/// Pipeline stages in execution order, plus `config` for pre-run failures.
enum class Stage {
  config,
  ingest,
  build,
  stats,
  centrality,
  communities,
  coverage,
  trend,
  export_graph,
};

std::string_view to_string(Stage stage);

/// Documented process exit code for a failure in the given stage:
/// config 1, ingest 2, build 3, stats 4, centrality 5, communities 6,
/// coverage 7, trend 8, export 9.
int stage_exit_code(Stage stage);

/// Any stage failure; carries the stage so the CLI can map it to an exit
/// code. The message already names the root cause.
struct PipelineError : std::runtime_error {
  PipelineError(Stage stage_, const std::string& message)
      : std::runtime_error(message), stage(stage_) {}
  Stage stage;
};

/// Parses a comma-separated measure list ("degree,betweenness,..."); raises
/// PipelineError(config) on unknown or duplicate names, `where` prefixes the
/// message.
std::vector<CentralityMeasure> parse_measure_list(std::string_view text,
                                                  const std::string& where);

/// Merges `key = value` lines from a config file into `config`; `#` starts a
/// comment. Unknown keys or unparseable values raise PipelineError(config).
/// The `workdir` key is accepted and applied (CLI flags still override).
void merge_config_file(PipelineConfig& config,
                       const std::filesystem::path& path);

/// Canonical config serialization: fixed key order, workdir omitted so runs
/// into different workdirs from the same config are byte-identical.
std::string serialize_config(const PipelineConfig& config);

/// Orchestrates the stage chain over one workdir. Construction validates the
/// config, creates the workdir if needed, takes an exclusive lock file
/// (released on destruction), and records the effective config as
/// `config.txt`.
///
/// Each ensure_* runs its prerequisites first, then either re-runs the stage
/// or skips it when the manifest shows fresh input hashes, identical
/// parameters, and outputs present on disk. A hash mismatch always forces a
/// rebuild. Diagnostics (skip/build notices, warnings) go to `log` when set;
/// result tables are returned to the caller instead of printed.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config, std::ostream* log = nullptr);
  ~Pipeline();

  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  void ensure_ingest();
  void ensure_build();
  void ensure_stats();
  void ensure_centrality();
  void ensure_communities();
  void ensure_coverage();
  void ensure_trend();
  void ensure_export();

  /// ingest → build → stats → centrality → communities → coverage → trend →
  /// export.
  void run_all();

  /// One-off export to an explicit path (not manifest-tracked). report-json
  /// bundles macro stats, profiles, and rankings into one document.
  void export_to(ExportFormat format, const std::filesystem::path& out_path);

  const PipelineConfig& config() const { return config_; }

  // Lazily loaded pipeline objects (from memory when the stage just ran,
  // otherwise from the workdir caches). Callers must ensure_* the producing
  // stage first.
  const SkillLexicon& lexicon();
  const Corpus& corpus();
  const AdSkillMatrix& matrix();
  const SkillGraph& graph();
  const Partition& partition();
  const CentralityScores& scores(CentralityMeasure measure);

 private:
  struct StageRecord {
    std::map<std::string, std::string> inputs;  // label -> content hash
    std::string params;
    std::vector<std::string> outputs;  // file names within the workdir
  };

  class WorkdirLock {
   public:
    WorkdirLock() = default;
    ~WorkdirLock();
    WorkdirLock(const WorkdirLock&) = delete;
    WorkdirLock& operator=(const WorkdirLock&) = delete;

    /// Creates the lock file exclusively; throws PipelineError(config) when
    /// it already exists (another run owns the workdir).
    void acquire(const std::filesystem::path& path);

   private:
    std::filesystem::path path_;
    int fd_ = -1;
  };

  std::filesystem::path artifact(std::string_view name) const;
  std::string hash_input(Stage stage, const std::filesystem::path& path) const;
  bool is_fresh(const std::string& stage_name, const StageRecord& record) const;
  /// True when the stage already ran or was verified fresh in this process;
  /// repeat ensure_* calls then skip rehashing inputs (config is immutable).
  bool already_verified(Stage stage) const { return verified_.count(stage) > 0; }
  void commit(const std::string& stage_name, const StageRecord& record);
  void load_manifest();
  void save_manifest() const;
  void note(const std::string& line) const;

  PipelineConfig config_;
  std::ostream* log_ = nullptr;
  WorkdirLock lock_;
  std::map<std::string, StageRecord> manifest_;
  std::set<Stage> verified_;

  std::optional<SkillLexicon> lexicon_;
  std::optional<Corpus> corpus_;
  std::optional<AdSkillMatrix> matrix_;
  std::optional<SkillGraph> graph_;
  std::optional<Partition> partition_;
  std::map<CentralityMeasure, CentralityScores> scores_;
};

}  // namespace skillnet
