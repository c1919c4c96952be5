#include <charconv>
#include <sstream>
#include <string>

#include "ctembed/errors.hpp"
#include "ctembed/io.hpp"
#include "ctembed/pipeline.hpp"

namespace ctembed {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* expected) {
  throw_invalid("config key '" + key + "': cannot read '" + value + "' as " + expected);
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto r = std::from_chars(value.data(), end, out);
  if (r.ec != std::errc{} || r.ptr != end) bad_value(key, value, "a number");
  return out;
}

int to_int(const std::string& key, const std::string& value) {
  int out = 0;
  const char* end = value.data() + value.size();
  const auto r = std::from_chars(value.data(), end, out);
  if (r.ec != std::errc{} || r.ptr != end) bad_value(key, value, "an integer");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  const auto r = std::from_chars(value.data(), end, out);
  if (r.ec != std::errc{} || r.ptr != end) bad_value(key, value, "a nonnegative integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  bad_value(key, value, "true or false");
}

void apply(PipelineConfig& cfg, const std::string& section, const std::string& key,
           const std::string& value) {
  if (section.empty()) {
    if (key == "input") cfg.input_path = value;
    else if (key == "format") {
      if (value != "fts" && value != "csv") bad_value(key, value, "fts or csv");
      cfg.input_format = value;
    } else if (key == "mask") cfg.mask_path = value;
    else if (key == "stimulus") cfg.stimulus_path = value;
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "seed") cfg.seed = to_u64(key, value);
    else throw_invalid("unknown config key '" + key + "'");
    return;
  }
  if (section == "preprocess") {
    if (key == "detrend") cfg.preprocess.detrend = to_bool(key, value);
    else if (key == "svd_modes") cfg.preprocess.svd_modes = to_int(key, value);
    else throw_invalid("unknown key '" + key + "' in [preprocess]");
    return;
  }
  if (section == "graph") {
    if (key == "n_neighbors") cfg.graph.n_neighbors = to_int(key, value);
    else if (key == "sigma_multiplier") cfg.graph.sigma_multiplier = to_double(key, value);
    else if (key == "sigma") cfg.graph.sigma = to_double(key, value);
    else throw_invalid("unknown key '" + key + "' in [graph]");
    return;
  }
  if (section == "embedding") {
    if (key == "k") {
      if (value == "auto") {
        cfg.embedding.k_auto = true;
      } else {
        cfg.embedding.k_auto = false;
        cfg.embedding.k = to_int(key, value);
      }
    } else if (key == "k_max") cfg.embedding.k_max = to_int(key, value);
    else if (key == "knee_theta") cfg.embedding.knee_theta = to_double(key, value);
    else throw_invalid("unknown key '" + key + "' in [embedding]");
    return;
  }
  if (section == "cluster") {
    if (key == "n_clusters") cfg.cluster.n_clusters = to_int(key, value);
    else if (key == "radius_quantile") cfg.cluster.radius_quantile = to_double(key, value);
    else if (key == "min_cluster_fraction")
      cfg.cluster.min_cluster_fraction = to_double(key, value);
    else if (key == "max_merge_iters") cfg.cluster.max_merge_iters = to_int(key, value);
    else if (key == "n_restarts") cfg.cluster.n_restarts = to_int(key, value);
    else if (key == "max_iters") cfg.cluster.max_iters = to_int(key, value);
    else throw_invalid("unknown key '" + key + "' in [cluster]");
    return;
  }
  if (section == "synth") {
    PhantomSpec& ph = cfg.synth.phantom;
    if (key == "grid_width") ph.grid_width = to_int(key, value);
    else if (key == "grid_height") ph.grid_height = to_int(key, value);
    else if (key == "center_x") ph.center_x = to_double(key, value);
    else if (key == "center_y") ph.center_y = to_double(key, value);
    else if (key == "brain_radius") ph.brain_radius = to_double(key, value);
    else if (key == "activation_radius") ph.activation_radius = to_double(key, value);
    else if (key == "background") {
      if (value == "ar1") ph.background = PhantomSpec::Background::ar1;
      else if (value == "pool") ph.background = PhantomSpec::Background::pool;
      else bad_value(key, value, "ar1 or pool");
    } else if (key == "ar1_rho") ph.ar1_rho = to_double(key, value);
    else if (key == "ar1_sigma") ph.ar1_sigma = to_double(key, value);
    else if (key == "pool_path") ph.pool_path = value;
    else if (key == "pool_variance_quantile") ph.pool_variance_quantile = to_double(key, value);
    else if (key == "alpha_min") ph.alpha_range.first = to_double(key, value);
    else if (key == "alpha_max") ph.alpha_range.second = to_double(key, value);
    else if (key == "b1_min") ph.b1_range.first = to_double(key, value);
    else if (key == "b1_max") ph.b1_range.second = to_double(key, value);
    else if (key == "tr_seconds") cfg.synth.tr_seconds = to_double(key, value);
    else if (key == "n_samples") cfg.synth.n_samples = to_int(key, value);
    else if (key == "block_off") cfg.synth.block_off = to_int(key, value);
    else if (key == "block_on") cfg.synth.block_on = to_int(key, value);
    else if (key == "realizations") cfg.synth.realizations = to_int(key, value);
    else throw_invalid("unknown key '" + key + "' in [synth]");
    return;
  }
  if (section == "roc") {
    if (key == "realizations") cfg.roc.realizations = to_int(key, value);
    else throw_invalid("unknown key '" + key + "' in [roc]");
    return;
  }
  if (section == "baseline") {
    if (key == "method") {
      if (value != "pca" && value != "isomap" && value != "glm")
        bad_value(key, value, "pca, isomap, or glm");
      cfg.baseline.method = value;
    } else if (key == "p_threshold") cfg.baseline.p_threshold = to_double(key, value);
    else if (key == "dale_regressor") cfg.baseline.dale_regressor = to_bool(key, value);
    else if (key == "dale_delta") cfg.baseline.dale_delta = to_double(key, value);
    else if (key == "dale_tau") cfg.baseline.dale_tau = to_double(key, value);
    else throw_invalid("unknown key '" + key + "' in [baseline]");
    return;
  }
  if (section == "oracle") {
    if (key == "n_graphs") cfg.oracle.n_graphs = to_int(key, value);
    else if (key == "max_nodes") cfg.oracle.max_nodes = to_int(key, value);
    else throw_invalid("unknown key '" + key + "' in [oracle]");
    return;
  }
  throw_invalid("unknown config section [" + section + "]");
}

}  // namespace

PipelineConfig parse_pipeline_config(const std::string& text) {
  PipelineConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw_invalid("config line " + std::to_string(line_no) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw_invalid("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw_invalid("config line " + std::to_string(line_no) + ": empty key");
    apply(cfg, section, key, value);
  }
  return cfg;
}

PipelineConfig load_pipeline_config(const std::string& path) {
  return parse_pipeline_config(read_text_file(path));
}

void set_config_value(PipelineConfig& config, const std::string& dotted_key,
                      const std::string& value) {
  const auto dot = dotted_key.find('.');
  const std::string section = dot == std::string::npos ? "" : trim(dotted_key.substr(0, dot));
  const std::string key =
      trim(dot == std::string::npos ? dotted_key : dotted_key.substr(dot + 1));
  if (key.empty()) throw_invalid("empty config key");
  apply(config, section, key, trim(value));
}

std::string effective_config_text(const PipelineConfig& cfg) {
  std::ostringstream out;
  const auto fv = [](double v) { return format_value(v); };
  out << "input = " << cfg.input_path << "\n";
  out << "format = " << cfg.input_format << "\n";
  out << "mask = " << cfg.mask_path << "\n";
  out << "stimulus = " << cfg.stimulus_path << "\n";
  out << "output_dir = " << cfg.output_dir << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "\n[preprocess]\n";
  out << "detrend = " << (cfg.preprocess.detrend ? "true" : "false") << "\n";
  out << "svd_modes = " << cfg.preprocess.svd_modes << "\n";
  out << "\n[graph]\n";
  out << "n_neighbors = " << cfg.graph.n_neighbors << "\n";
  out << "sigma_multiplier = " << fv(cfg.graph.sigma_multiplier) << "\n";
  if (cfg.graph.sigma) out << "sigma = " << fv(*cfg.graph.sigma) << "\n";
  out << "\n[embedding]\n";
  if (cfg.embedding.k_auto)
    out << "k = auto\n";
  else
    out << "k = " << cfg.embedding.k << "\n";
  out << "k_max = " << cfg.embedding.k_max << "\n";
  out << "knee_theta = " << fv(cfg.embedding.knee_theta) << "\n";
  out << "\n[cluster]\n";
  out << "n_clusters = " << cfg.cluster.n_clusters << "\n";
  out << "radius_quantile = " << fv(cfg.cluster.radius_quantile) << "\n";
  out << "min_cluster_fraction = " << fv(cfg.cluster.min_cluster_fraction) << "\n";
  out << "max_merge_iters = " << cfg.cluster.max_merge_iters << "\n";
  out << "n_restarts = " << cfg.cluster.n_restarts << "\n";
  out << "max_iters = " << cfg.cluster.max_iters << "\n";
  out << "\n[synth]\n";
  const PhantomSpec& ph = cfg.synth.phantom;
  out << "grid_width = " << ph.grid_width << "\n";
  out << "grid_height = " << ph.grid_height << "\n";
  out << "center_x = " << fv(ph.center_x) << "\n";
  out << "center_y = " << fv(ph.center_y) << "\n";
  out << "brain_radius = " << fv(ph.brain_radius) << "\n";
  out << "activation_radius = " << fv(ph.activation_radius) << "\n";
  out << "background = " << (ph.background == PhantomSpec::Background::ar1 ? "ar1" : "pool")
      << "\n";
  out << "ar1_rho = " << fv(ph.ar1_rho) << "\n";
  out << "ar1_sigma = " << fv(ph.ar1_sigma) << "\n";
  out << "pool_path = " << ph.pool_path << "\n";
  out << "pool_variance_quantile = " << fv(ph.pool_variance_quantile) << "\n";
  out << "alpha_min = " << fv(ph.alpha_range.first) << "\n";
  out << "alpha_max = " << fv(ph.alpha_range.second) << "\n";
  out << "b1_min = " << fv(ph.b1_range.first) << "\n";
  out << "b1_max = " << fv(ph.b1_range.second) << "\n";
  out << "tr_seconds = " << fv(cfg.synth.tr_seconds) << "\n";
  out << "n_samples = " << cfg.synth.n_samples << "\n";
  out << "block_off = " << cfg.synth.block_off << "\n";
  out << "block_on = " << cfg.synth.block_on << "\n";
  out << "realizations = " << cfg.synth.realizations << "\n";
  out << "\n[roc]\n";
  out << "realizations = " << cfg.roc.realizations << "\n";
  out << "\n[baseline]\n";
  out << "method = " << cfg.baseline.method << "\n";
  out << "p_threshold = " << fv(cfg.baseline.p_threshold) << "\n";
  out << "dale_regressor = " << (cfg.baseline.dale_regressor ? "true" : "false") << "\n";
  out << "dale_delta = " << fv(cfg.baseline.dale_delta) << "\n";
  out << "dale_tau = " << fv(cfg.baseline.dale_tau) << "\n";
  out << "\n[oracle]\n";
  out << "n_graphs = " << cfg.oracle.n_graphs << "\n";
  out << "max_nodes = " << cfg.oracle.max_nodes << "\n";
  return out.str();
}

}  // namespace ctembed
