#include <deque>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "jdiv/jdiv.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitMissingArtifact = 4;

jdiv::Level parse_level(const std::string& name) {
  std::optional<jdiv::Level> level = jdiv::level_from_name(name);
  if (!level) {
    throw jdiv::ConfigError("unknown level '" + name +
                            "' (expected macro, meso or micro)");
  }
  return *level;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"journal disciplinary diversity pipeline"};
  app.set_version_flag("--version", std::string("jdiv ") + jdiv::kVersion);
  app.require_subcommand(1);

  jdiv::PipelinePaths paths;
  std::string config_path;
  app.add_option("--papers", paths.papers, "papers CSV");
  app.add_option("--citations", paths.citations, "citations CSV");
  app.add_option("--journals", paths.journals, "journals CSV");
  app.add_option("--out", paths.out_dir, "artifact directory")
      ->default_val(".");
  app.add_option("--config", config_path, "key = value config file");

  // every tunable mirrors a config key; explicit flags win over the file
  std::deque<std::string> flag_values;
  std::vector<std::pair<CLI::Option*, std::pair<std::string, std::string*>>>
      overrides;
  auto add_cfg = [&](const std::string& flag, const std::string& key,
                     const std::string& help) {
    flag_values.emplace_back();
    CLI::Option* opt = app.add_option(flag, flag_values.back(), help);
    overrides.push_back({opt, {key, &flag_values.back()}});
  };
  add_cfg("--seed", "seed", "RNG seed");
  add_cfg("--dims", "dims", "embedding dimensions");
  add_cfg("--return-p", "return_p", "walk return bias p");
  add_cfg("--inout-q", "inout_q", "walk in-out bias q");
  add_cfg("--walk-length", "walk_length", "steps per walk");
  add_cfg("--walks-per-node", "walks_per_node", "walks started per node");
  add_cfg("--window", "window", "skip-gram window");
  add_cfg("--negatives", "negatives", "negative samples per pair");
  add_cfg("--epochs", "epochs", "training epochs");
  add_cfg("--learning-rate", "learning_rate", "initial learning rate");
  add_cfg("--order-q", "order_q", "diversity order q");
  add_cfg("--top-n", "top_n", "top list size for overlaps and candidates");
  add_cfg("--threads", "threads", "worker threads (non-deterministic mode)");
  add_cfg("--year-min", "year_min", "first publication year accepted");
  add_cfg("--year-max", "year_max", "last publication year accepted");
  add_cfg("--detect-threshold", "detect_threshold",
          "distance threshold for the detection report");

  bool deterministic = true;
  CLI::Option* det_flag =
      app.add_flag("--deterministic,!--no-deterministic", deterministic,
                   "single-thread training for reproducible output");
  bool self_loops = false;
  CLI::Option* loops_flag =
      app.add_flag("--include-self-loops,!--exclude-self-loops", self_loops,
                   "keep self-loops in random walks");

  CLI::App* cmd_ingest =
      app.add_subcommand("ingest", "validate inputs, write the load report");
  CLI::App* cmd_graph =
      app.add_subcommand("graph", "build the discipline graphs");
  CLI::App* cmd_embed =
      app.add_subcommand("embed", "walk, train and write similarities");
  std::string embed_level;
  cmd_embed->add_option("--level", embed_level,
                        "restrict to one level (macro, meso, micro)");
  CLI::App* cmd_diversity =
      app.add_subcommand("diversity", "compute the journal diversity table");
  CLI::App* cmd_analyze =
      app.add_subcommand("analyze", "group tests, correlations, quadrants");
  CLI::App* cmd_detect = app.add_subcommand(
      "detect", "rank potential multidisciplinary journals");
  CLI::App* cmd_overlay = app.add_subcommand(
      "export-overlay", "write one journal's topic overlay");
  std::string overlay_journal;
  std::string overlay_level = "micro";
  cmd_overlay->add_option("--journal", overlay_journal, "journal id")
      ->required();
  cmd_overlay->add_option("--level", overlay_level, "topic level");
  CLI::App* cmd_all = app.add_subcommand("all", "run every stage in order");

  for (CLI::App* sub : {cmd_ingest, cmd_graph, cmd_embed, cmd_diversity,
                        cmd_analyze, cmd_detect, cmd_overlay, cmd_all}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    jdiv::PipelineConfig cfg;
    if (!config_path.empty()) {
      cfg = jdiv::PipelineConfig::from_file(config_path);
    }
    for (const auto& [opt, kv] : overrides) {
      if (opt->count() > 0) cfg.set(kv.first, *kv.second);
    }
    if (det_flag->count() > 0) {
      cfg.set("deterministic", deterministic ? "true" : "false");
    }
    if (loops_flag->count() > 0) {
      cfg.set("include_self_loops", self_loops ? "true" : "false");
    }
    cfg.validate();

    auto need_inputs = [&]() {
      if (paths.papers.empty() || paths.citations.empty() ||
          paths.journals.empty()) {
        throw jdiv::ConfigError(
            "this stage reads the raw corpus: pass --papers, --citations "
            "and --journals");
      }
    };

    jdiv::Pipeline pipeline(cfg, paths, &std::cout);
    if (cmd_ingest->parsed()) {
      need_inputs();
      pipeline.run_ingest();
    } else if (cmd_graph->parsed()) {
      need_inputs();
      pipeline.run_graph();
    } else if (cmd_embed->parsed()) {
      std::optional<jdiv::Level> only;
      if (!embed_level.empty()) only = parse_level(embed_level);
      pipeline.run_embed(only);
    } else if (cmd_diversity->parsed()) {
      need_inputs();
      pipeline.run_diversity();
    } else if (cmd_analyze->parsed()) {
      pipeline.run_analyze();
    } else if (cmd_detect->parsed()) {
      pipeline.run_detect();
    } else if (cmd_overlay->parsed()) {
      need_inputs();
      pipeline.run_export_overlay(overlay_journal, parse_level(overlay_level));
    } else if (cmd_all->parsed()) {
      need_inputs();
      pipeline.run_all();
    }
    return kExitOk;
  } catch (const jdiv::MissingArtifactError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingArtifact;
  } catch (const jdiv::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const jdiv::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
