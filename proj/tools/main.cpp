#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "ctembed/errors.hpp"
#include "ctembed/io.hpp"
#include "ctembed/pipeline.hpp"

namespace {

struct CommonArgs {
  std::string config;
  std::string input;
  std::string mask;
  std::string stimulus;
  std::string out;
  std::string k;
  std::uint64_t seed = 0;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config, "configuration file");
  cmd->add_option("--set", args.sets,
                  "override one config entry as section.key=value (repeatable)");
  cmd->add_option("--input", args.input, "input dataset (.fts or .csv)");
  cmd->add_option("--mask", args.mask, "voxel mask CSV for raster maps");
  cmd->add_option("--stimulus", args.stimulus, "stimulus CSV, one value per sample");
  cmd->add_option("--out", args.out, "output directory");
  cmd->add_option("--seed", args.seed, "random seed (overrides the config)");
  cmd->add_option("--k", args.k, "embedding dimension, or 'auto'");
}

ctembed::PipelineConfig make_config(const CLI::App* cmd, const CommonArgs& args) {
  ctembed::PipelineConfig cfg;
  if (cmd->count("--config") > 0) cfg = ctembed::load_pipeline_config(args.config);
  for (const std::string& entry : args.sets) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      ctembed::throw_invalid("--set expects section.key=value; got '" + entry + "'");
    ctembed::set_config_value(cfg, entry.substr(0, eq), entry.substr(eq + 1));
  }
  if (cmd->count("--input") > 0) {
    cfg.input_path = args.input;
    const auto dot = args.input.rfind('.');
    if (dot != std::string::npos && args.input.substr(dot + 1) == "csv")
      cfg.input_format = "csv";
  }
  if (cmd->count("--mask") > 0) cfg.mask_path = args.mask;
  if (cmd->count("--stimulus") > 0) cfg.stimulus_path = args.stimulus;
  if (cmd->count("--out") > 0) cfg.output_dir = args.out;
  if (cmd->count("--k") > 0) ctembed::set_config_value(cfg, "embedding.k", args.k);
  if (cmd->count("--seed") > 0) cfg.seed = args.seed;
  return cfg;
}

int dispatch(const CLI::App& app, const std::vector<std::pair<CLI::App*, CommonArgs*>>& subs) {
  for (const auto& [cmd, args] : subs) {
    if (!app.got_subcommand(cmd)) continue;
    const ctembed::PipelineConfig cfg = make_config(cmd, *args);
    const std::string& name = cmd->get_name();
    if (name == "embed") {
      const auto art = ctembed::run_embed(cfg);
      std::printf("k = %d\neigenvalue_gap = %s\n", art.k,
                  ctembed::format_value(art.eigenvalue_gap).c_str());
      std::printf("wrote %zu files to %s\n", art.files.size(), cfg.output_dir.c_str());
    } else if (name == "cluster") {
      const auto art = ctembed::run_cluster(cfg);
      std::printf("structures = %d\n", art.n_structures);
      std::printf("sizes =");
      for (const int s : art.labels.sizes) std::printf(" %d", s);
      std::printf("\nwrote %zu files to %s\n", art.files.size(), cfg.output_dir.c_str());
    } else if (name == "synth") {
      const auto art = ctembed::run_synth(cfg);
      std::printf("voxels = %d (%d activated)\n", art.n_brain, art.n_active);
      std::printf("wrote %zu files to %s\n", art.files.size(), cfg.output_dir.c_str());
    } else if (name == "roc") {
      const auto art = ctembed::run_roc(cfg);
      std::printf("embedding: auc = %s, tpr@0.005 = %s\n",
                  ctembed::format_value(art.auc_embedding).c_str(),
                  ctembed::format_value(art.tpr_embedding[1]).c_str());
      std::printf("glm: auc = %s, tpr@0.005 = %s\n",
                  ctembed::format_value(art.auc_glm).c_str(),
                  ctembed::format_value(art.tpr_glm[1]).c_str());
      std::printf("wrote %zu files to %s\n", art.files.size(), cfg.output_dir.c_str());
    } else if (name == "baseline") {
      const auto art = ctembed::run_baseline(cfg);
      std::printf("method = %s\nwrote %zu files to %s\n", cfg.baseline.method.c_str(),
                  art.files.size(), cfg.output_dir.c_str());
    } else if (name == "oracle-check") {
      const auto art = ctembed::run_oracle_check(cfg);
      std::printf("max_commute_relative_error = %s\n",
                  ctembed::format_value(art.max_commute_error).c_str());
      std::printf("max_isometry_relative_error = %s\n",
                  ctembed::format_value(art.max_isometry_error).c_str());
      std::printf("max_onestep_residual = %s\n",
                  ctembed::format_value(art.max_onestep_residual).c_str());
      std::printf("overall: %s\n", art.ok ? "PASS" : "FAIL");
      if (!art.ok) return 3;
    }
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Commute-time spectral embedding pipeline for time-series datasets"};
  app.require_subcommand(1);

  CommonArgs a_embed, a_cluster, a_synth, a_roc, a_baseline, a_oracle;
  std::vector<std::pair<CLI::App*, CommonArgs*>> subs;
  subs.emplace_back(app.add_subcommand("embed", "build the graph and embed it"), &a_embed);
  subs.emplace_back(app.add_subcommand("cluster", "embed, then isolate coherent structures"),
                    &a_cluster);
  subs.emplace_back(app.add_subcommand("synth", "generate synthetic activation datasets"),
                    &a_synth);
  subs.emplace_back(
      app.add_subcommand("roc", "compare embedding detection against the linear model"), &a_roc);
  subs.emplace_back(app.add_subcommand("baseline", "run a reference method (pca, isomap, glm)"),
                    &a_baseline);
  subs.emplace_back(app.add_subcommand("oracle-check", "verify spectral commute distances "
                                                       "against the random-walk ground truth"),
                    &a_oracle);
  for (auto& [cmd, args] : subs) add_common(cmd, *args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return dispatch(app, subs);
  } catch (const ctembed::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.code()) {
      case ctembed::errc::invalid_input:
        return 2;
      case ctembed::errc::degenerate:
        return 3;
      case ctembed::errc::convergence:
        return 4;
    }
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
