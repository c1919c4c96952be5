#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctembed/affinity_graph.hpp"
#include "ctembed/cluster.hpp"
#include "ctembed/phantom.hpp"

namespace ctembed {

struct PreprocessSettings {
  bool detrend = false;
  int svd_modes = 0;  // 0 = no denoising
};

struct EmbeddingSettings {
  int k = 2;
  bool k_auto = false;  // pick k from residual-curve knees
  int k_max = 20;       // curve length used when k_auto is set
  double knee_theta = 0.1;
};

struct SynthSettings {
  PhantomSpec phantom;
  double tr_seconds = 3.0;
  int n_samples = 80;
  std::string stimulus_path;  // empty: built-in block design
  int block_off = 10;         // leading off-samples per cycle
  int block_on = 10;
  int realizations = 1;
};

struct RocSettings {
  int realizations = 20;
};

struct BaselineSettings {
  std::string method = "pca";  // pca | isomap | glm
  double p_threshold = 0.001;
  bool dale_regressor = false;
  double dale_delta = 2.5;
  double dale_tau = 1.5;
};

struct OracleSettings {
  int n_graphs = 100;
  int max_nodes = 30;
};

struct PipelineConfig {
  std::string input_path;
  std::string input_format = "fts";  // fts | csv
  std::string mask_path;             // optional; enables raster maps
  std::string stimulus_path;         // for glm baseline and roc
  std::string output_dir = ".";
  std::uint64_t seed = 0;
  PreprocessSettings preprocess;
  GraphConfig graph{9, 2.0, {}};
  EmbeddingSettings embedding;
  ClusterConfig cluster;  // n_clusters 0 derives k + 1
  SynthSettings synth;
  RocSettings roc;
  BaselineSettings baseline;
  OracleSettings oracle;
};

// Line-oriented "key = value" configuration with [section] headers and '#'
// comments. Unknown sections or keys are errors.
PipelineConfig parse_pipeline_config(const std::string& text);
PipelineConfig load_pipeline_config(const std::string& path);

// Applies one entry addressed as "key" or "section.key" (e.g. "graph.n_neighbors").
void set_config_value(PipelineConfig& config, const std::string& dotted_key,
                      const std::string& value);

// Serialization of every effective setting; reparsing reproduces the run.
std::string effective_config_text(const PipelineConfig& config);

struct EmbedArtifacts {
  int k = 0;
  double eigenvalue_gap = 0.0;
  std::vector<std::string> files;
};

struct ClusterArtifacts {
  ClusterLabels labels;
  int n_structures = 0;
  bool empty_foreground = false;
  std::vector<std::string> files;
};

struct SynthArtifacts {
  int n_brain = 0;
  int n_active = 0;
  std::vector<std::string> files;
};

struct RocArtifacts {
  double auc_embedding = 0.0;
  double auc_glm = 0.0;
  std::vector<double> tpr_embedding;  // at fpr 0.003, 0.005, 0.009
  std::vector<double> tpr_glm;
  std::vector<std::string> files;
};

struct BaselineArtifacts {
  std::vector<std::string> files;
};

struct OracleArtifacts {
  bool ok = false;
  double max_commute_error = 0.0;
  double max_isometry_error = 0.0;
  double max_onestep_residual = 0.0;
  std::vector<std::string> files;
};

EmbedArtifacts run_embed(const PipelineConfig& config);
ClusterArtifacts run_cluster(const PipelineConfig& config);
SynthArtifacts run_synth(const PipelineConfig& config);
RocArtifacts run_roc(const PipelineConfig& config);
BaselineArtifacts run_baseline(const PipelineConfig& config);
OracleArtifacts run_oracle_check(const PipelineConfig& config);

}  // namespace ctembed
