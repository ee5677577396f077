// Command-line front end for the skill co-occurrence pipeline.
//
// Every subcommand operates on a working directory that accumulates the
// pipeline artifacts (caches, reports, exports). Settings are resolved in
// layers: built-in defaults, then `<workdir>/config.txt` left behind by a
// previous run, then an explicit `--config` file, then individual flags.
// The effective configuration is written back to the workdir so later
// invocations (e.g. `stats` after `ingest`) do not need to repeat paths.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "skillnet/gexf.hpp"
#include "skillnet/pipeline.hpp"

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

nlohmann::json read_json(const std::filesystem::path& path) {
  return nlohmann::json::parse(read_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skill co-occurrence network toolkit"};
  app.require_subcommand(1);

  std::string config_file;
  std::string workdir;
  std::uint64_t seed = 0;
  auto* config_opt =
      app.add_option("--config", config_file,
                     "configuration file with key = value lines")
          ->check(CLI::ExistingFile);
  auto* workdir_opt = app.add_option(
      "--workdir", workdir, "working directory for caches and reports");
  auto* seed_opt =
      app.add_option("--seed", seed, "random seed for community detection");

  std::string lexicon;
  std::string corpus;
  std::string labels;
  std::string measures;
  std::string format = "gexf";
  std::string out_path;
  int top_k = 15;
  bool weighted_paths = false;
  bool normalized = false;

  CLI::App* ingest_cmd = app.add_subcommand(
      "ingest", "validate the lexicon and corpus, cache normalized forms");
  auto* ingest_lexicon =
      ingest_cmd->add_option("--lexicon", lexicon, "skill lexicon file")
          ->check(CLI::ExistingFile);
  auto* ingest_corpus =
      ingest_cmd->add_option("--corpus", corpus, "job-ad corpus (JSON lines)")
          ->check(CLI::ExistingFile);
  auto* ingest_out = ingest_cmd->add_option(
      "--out", workdir, "working directory (same as --workdir)");

  CLI::App* build_cmd = app.add_subcommand(
      "build", "build the ad-skill matrix and co-occurrence graph caches");

  CLI::App* stats_cmd = app.add_subcommand(
      "stats", "print nodes, edges, average degree and density");

  CLI::App* centrality_cmd = app.add_subcommand(
      "centrality", "score every node and print the combined top-k table");
  auto* centrality_measures = centrality_cmd->add_option(
      "--measures", measures,
      "comma-separated subset of degree,betweenness,closeness,eigenvector");
  auto* centrality_top =
      centrality_cmd->add_option("--top", top_k, "rows in the ranking table")
          ->check(CLI::PositiveNumber);
  auto* centrality_weighted = centrality_cmd->add_flag(
      "--weighted-paths", weighted_paths,
      "treat edge length as 1/weight for path-based measures");
  auto* centrality_normalized = centrality_cmd->add_flag(
      "--normalized", normalized, "emit normalized scores");

  CLI::App* communities_cmd = app.add_subcommand(
      "communities", "detect communities and print per-community profiles");
  auto* communities_labels =
      communities_cmd
          ->add_option("--labels", labels,
                       "community label file (community_id,label)")
          ->check(CLI::ExistingFile);

  CLI::App* coverage_cmd =
      app.add_subcommand("coverage", "print per-community ad coverage");

  CLI::App* trend_cmd =
      app.add_subcommand("trend", "print the yearly community trend table");

  CLI::App* export_cmd = app.add_subcommand(
      "export", "write the graph with attributes to an interchange format");
  export_cmd->add_option("--format", format,
                         std::string("one of: ") +
                             std::string(skillnet::supported_export_formats()));
  auto* export_out = export_cmd->add_option(
      "--out", out_path, "output path (defaults into the workdir)");

  CLI::App* run_cmd =
      app.add_subcommand("run", "run the full pipeline end to end");
  auto* run_lexicon =
      run_cmd->add_option("--lexicon", lexicon, "skill lexicon file")
          ->check(CLI::ExistingFile);
  auto* run_corpus =
      run_cmd->add_option("--corpus", corpus, "job-ad corpus (JSON lines)")
          ->check(CLI::ExistingFile);
  auto* run_labels = run_cmd
                         ->add_option("--labels", labels,
                                      "community label file (community_id,label)")
                         ->check(CLI::ExistingFile);

  for (CLI::App* sub : app.get_subcommands({})) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForAllHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return 1;
  }

  try {
    // The workdir comes from --workdir / --out, falling back to the workdir
    // entry of an explicit --config file.
    std::filesystem::path effective_workdir = workdir;
    if (workdir_opt->count() == 0 && ingest_out->count() == 0 &&
        config_opt->count() > 0) {
      skillnet::PipelineConfig scan;
      skillnet::merge_config_file(scan, config_file);
      effective_workdir = scan.workdir;
    }
    if (effective_workdir.empty()) {
      throw skillnet::PipelineError(
          skillnet::Stage::config,
          "no working directory given (use --workdir or a config file with a "
          "workdir entry)");
    }

    skillnet::PipelineConfig config;
    const std::filesystem::path remembered = effective_workdir / "config.txt";
    if (std::filesystem::exists(remembered)) {
      skillnet::merge_config_file(config, remembered);
    }
    if (config_opt->count() > 0) {
      skillnet::merge_config_file(config, config_file);
    }
    config.workdir = effective_workdir;
    if (seed_opt->count() > 0) {
      config.seed = seed;
    }
    if (ingest_lexicon->count() > 0 || run_lexicon->count() > 0) {
      config.lexicon_path = lexicon;
    }
    if (ingest_corpus->count() > 0 || run_corpus->count() > 0) {
      config.corpus_path = corpus;
    }
    if (communities_labels->count() > 0 || run_labels->count() > 0) {
      config.label_path = labels;
    }
    if (centrality_measures->count() > 0) {
      config.measures = skillnet::parse_measure_list(measures, "--measures");
    }
    if (centrality_top->count() > 0) {
      config.top_k = top_k;
    }
    if (centrality_weighted->count() > 0) {
      config.weighted_paths = true;
    }
    if (centrality_normalized->count() > 0) {
      config.normalized = true;
    }

    // Anchor input paths to the invocation directory so the config recorded
    // in the workdir keeps working from any later working directory.
    if (!config.lexicon_path.empty()) {
      config.lexicon_path = std::filesystem::absolute(config.lexicon_path);
    }
    if (!config.corpus_path.empty()) {
      config.corpus_path = std::filesystem::absolute(config.corpus_path);
    }
    if (config.label_path && !config.label_path->empty()) {
      config.label_path = std::filesystem::absolute(*config.label_path);
    }

    skillnet::Pipeline pipeline(std::move(config), &std::cerr);
    const std::filesystem::path& dir = pipeline.config().workdir;

    if (app.got_subcommand(ingest_cmd)) {
      pipeline.ensure_ingest();
      const nlohmann::json info = read_json(dir / "ingest.json");
      std::cout << "lexicon entries: " << info.at("lexicon_entries")
                << "\ncorpus records: " << info.at("corpus_records")
                << " (dated " << info.at("dated_records") << ", date warnings "
                << info.at("date_warnings") << ")\n";
    } else if (app.got_subcommand(build_cmd)) {
      pipeline.ensure_build();
      const nlohmann::json info = read_json(dir / "build.json");
      std::cout << "ads processed: " << info.at("ads_processed")
                << "\nskills matched: " << info.at("matched_skills") << " of "
                << info.at("columns")
                << "\nzero-match ads: " << info.at("zero_match_ads") << "\n";
    } else if (app.got_subcommand(stats_cmd)) {
      pipeline.ensure_stats();
      std::cout << read_file(dir / "stats.txt");
    } else if (app.got_subcommand(centrality_cmd)) {
      pipeline.ensure_centrality();
      std::cout << read_file(dir / "topk.txt");
    } else if (app.got_subcommand(communities_cmd)) {
      pipeline.ensure_communities();
      std::cout << read_file(dir / "profiles.txt");
    } else if (app.got_subcommand(coverage_cmd)) {
      pipeline.ensure_coverage();
      std::cout << read_file(dir / "coverage.txt");
    } else if (app.got_subcommand(trend_cmd)) {
      pipeline.ensure_trend();
      std::cout << read_file(dir / "trend.txt");
    } else if (app.got_subcommand(export_cmd)) {
      const auto parsed = skillnet::parse_export_format(format);
      if (!parsed) {
        throw skillnet::PipelineError(
            skillnet::Stage::export_graph,
            "unknown export format \"" + format + "\" (expected one of: " +
                std::string(skillnet::supported_export_formats()) + ")");
      }
      std::filesystem::path target = out_path;
      if (*parsed == skillnet::ExportFormat::gexf && export_out->count() == 0) {
        pipeline.ensure_export();
        target = dir / "graph.gexf";
      } else {
        if (export_out->count() == 0) {
          target = dir / (*parsed == skillnet::ExportFormat::edgelist_csv
                              ? "export_edges.csv"
                              : "report.json");
        }
        pipeline.export_to(*parsed, target);
      }
      std::cout << "wrote " << target.string() << "\n";
    } else if (app.got_subcommand(run_cmd)) {
      pipeline.run_all();
      std::cout << "pipeline complete: artifacts in " << dir.string() << "\n";
    }
    return 0;
  } catch (const skillnet::PipelineError& error) {
    std::cerr << "error [" << skillnet::to_string(error.stage)
              << "]: " << error.what() << "\n";
    return skillnet::stage_exit_code(error.stage);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
