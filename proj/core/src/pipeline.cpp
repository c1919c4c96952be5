#include "ctembed/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include "ctembed/baselines.hpp"
#include "ctembed/dataset.hpp"
#include "ctembed/errors.hpp"
#include "ctembed/io.hpp"
#include "ctembed/rng.hpp"
#include "ctembed/spectral.hpp"
#include "ctembed/walk_oracle.hpp"

namespace ctembed {

namespace {

constexpr std::uint64_t kClusterStream = 0xC1;

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_output_dir(const PipelineConfig& cfg) {
  if (cfg.output_dir.empty()) throw_invalid("output_dir is empty");
  std::filesystem::create_directories(cfg.output_dir);
}

TimeSeriesMatrix load_input(const PipelineConfig& cfg) {
  if (cfg.input_path.empty()) throw_invalid("no input dataset given");
  TimeSeriesMatrix data = load_dataset(cfg.input_path, dataset_format_from_name(cfg.input_format));
  if (cfg.preprocess.detrend) data = detrend_linear(data);
  if (cfg.preprocess.svd_modes > 0) data = svd_denoise(data, cfg.preprocess.svd_modes);
  return data;
}

StimulusSeries make_stimulus(const PipelineConfig& cfg) {
  StimulusSeries stim;
  stim.tr_seconds = cfg.synth.tr_seconds;
  if (!cfg.stimulus_path.empty()) {
    stim.samples = load_value_column(cfg.stimulus_path);
  } else if (!cfg.synth.stimulus_path.empty()) {
    stim.samples = load_value_column(cfg.synth.stimulus_path);
  } else {
    if (cfg.synth.n_samples < 2) throw_invalid("stimulus needs at least 2 samples");
    if (cfg.synth.block_off < 0 || cfg.synth.block_on < 1)
      throw_invalid("block design needs nonnegative off and positive on lengths");
    const int period = cfg.synth.block_off + cfg.synth.block_on;
    stim.samples.resize(cfg.synth.n_samples);
    for (int t = 0; t < cfg.synth.n_samples; ++t)
      stim.samples[t] = (t % period) < cfg.synth.block_off ? 0.0 : 1.0;
  }
  return stim;
}

std::string index_csv(const Matrix& values, const std::string& first_col,
                      const std::string& col_stem, int col_start) {
  std::ostringstream out;
  out << first_col;
  for (Eigen::Index c = 0; c < values.cols(); ++c)
    out << ',' << col_stem << (col_start + static_cast<int>(c));
  out << '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    out << r;
    for (Eigen::Index c = 0; c < values.cols(); ++c) out << ',' << format_value(values(r, c));
    out << '\n';
  }
  return out.str();
}

struct EmbedState {
  ConnectivityGraph graph;
  SpectralDecomposition dec;
  Embedding embedding;
  int k = 0;
};

// Shared front half of the embed and cluster commands: graph construction,
// dimension resolution (fixed or knee-based), decomposition, embedding.
EmbedState compute_embedding(const PipelineConfig& cfg, const TimeSeriesMatrix& data) {
  EmbedState state;
  state.graph = build_graph(data, cfg.graph);
  const auto n = static_cast<int>(state.graph.size());

  if (cfg.embedding.k_auto) {
    const int k_max = cfg.embedding.k_max;
    if (k_max < 3) throw_invalid("automatic dimension selection needs k_max of at least 3");
    if (k_max > n) throw_invalid("k_max exceeds the number of points");
    state.dec = decompose(state.graph, std::max(k_max, 4));

    std::vector<ResidualCurve> curves;
    std::vector<int> whole(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) whole[static_cast<std::size_t>(i)] = i;
    curves.push_back(residual_curve(data, state.dec, whole, k_max));

    // Provisional clusters contribute their own curves, the same way regions
    // of interest would.
    const int k0 = std::min(3, state.dec.n_pairs() - 1);
    const Embedding provisional = embed(state.dec, k0);
    ClusterConfig pc = cfg.cluster;
    if (pc.n_clusters == 0) pc.n_clusters = k0 + 1;
    pc.seed = derive_seed(cfg.seed, kClusterStream);
    try {
      const ClusterLabels labels = cluster_embedding(provisional, pc);
      const int n_labels = static_cast<int>(labels.sizes.size());
      for (int lab = 1; lab < n_labels; ++lab) {
        std::vector<int> region;
        for (int i = 0; i < n; ++i)
          if (labels.labels[static_cast<std::size_t>(i)] == lab) region.push_back(i);
        if (region.size() >= 3) curves.push_back(residual_curve(data, state.dec, region, k_max));
      }
    } catch (const Error&) {
      // Degenerate provisional clustering: fall back to the whole-set curve.
    }
    state.k = select_dimension(curves, cfg.embedding.knee_theta);
  } else {
    state.k = cfg.embedding.k;
    if (state.k < 1) throw_invalid("embedding dimension must be at least 1");
    if (state.k + 1 > n) throw_invalid("embedding dimension too large for the dataset");
    state.dec = decompose(state.graph, state.k + 1);
  }

  state.embedding = embed(state.dec, state.k);
  return state;
}

PipelineConfig resolved_config(const PipelineConfig& cfg, const EmbedState& state) {
  PipelineConfig eff = cfg;
  eff.embedding.k = state.k;
  eff.embedding.k_auto = false;
  eff.graph.sigma = state.graph.sigma;
  return eff;
}

std::string write_effective_config(const PipelineConfig& eff,
                                   std::vector<std::string>& files) {
  const std::string path = join_path(eff.output_dir, "effective_config.cfg");
  write_text_file(path, effective_config_text(eff));
  files.push_back(path);
  return path;
}

std::vector<std::string> write_slice_maps(const VoxelMask& mask, const std::vector<int>& levels,
                                          const std::string& dir, const std::string& stem) {
  int width = 0, height = 0;
  std::vector<int> slices;
  for (const VoxelSite& s : mask.site) {
    width = std::max(width, s.x + 1);
    height = std::max(height, s.y + 1);
    if (std::find(slices.begin(), slices.end(), s.slice) == slices.end())
      slices.push_back(s.slice);
  }
  std::sort(slices.begin(), slices.end());
  std::vector<std::string> out;
  for (const int slice : slices) {
    std::vector<unsigned char> pixels(static_cast<std::size_t>(width) * height, 0);
    for (std::size_t i = 0; i < mask.site.size(); ++i) {
      if (mask.site[i].slice != slice) continue;
      pixels[static_cast<std::size_t>(mask.site[i].y) * width + mask.site[i].x] =
          static_cast<unsigned char>(levels[i]);
    }
    const std::string path = join_path(dir, stem + "_slice" + std::to_string(slice) + ".pgm");
    save_pgm(path, pixels, width, height);
    out.push_back(path);
  }
  return out;
}

VoxelMask load_sized_mask(const PipelineConfig& cfg, Eigen::Index n) {
  VoxelMask mask = load_mask(cfg.mask_path);
  if (static_cast<Eigen::Index>(mask.size()) != n)
    throw_invalid("mask lists " + std::to_string(mask.size()) + " voxels but the dataset has " +
                  std::to_string(n));
  return mask;
}

int cluster_gray_level(int label, int n_structures) {
  if (label == 0) return 128;
  if (n_structures <= 1) return 160;
  return 160 + ((label - 1) * 95) / (n_structures - 1);
}

}  // namespace

EmbedArtifacts run_embed(const PipelineConfig& cfg) {
  ensure_output_dir(cfg);
  const TimeSeriesMatrix data = load_input(cfg);
  const EmbedState state = compute_embedding(cfg, data);

  EmbedArtifacts art;
  art.k = state.k;
  art.eigenvalue_gap = state.embedding.eigenvalue_gap;

  const std::string emb_path = join_path(cfg.output_dir, "embedding.csv");
  write_text_file(emb_path, index_csv(state.embedding.coords, "index", "c", 1));
  art.files.push_back(emb_path);

  const Eigen::Index n_pairs = state.dec.eigenvalues.size();
  const std::string vec_path = join_path(cfg.output_dir, "eigenvectors.csv");
  write_text_file(vec_path,
                  index_csv(state.dec.eigenvectors.rightCols(n_pairs - 1), "index", "phi", 2));
  art.files.push_back(vec_path);

  std::ostringstream vals;
  vals << "k,lambda\n";
  for (Eigen::Index i = 0; i < n_pairs; ++i)
    vals << (i + 1) << ',' << format_value(state.dec.eigenvalues[i]) << '\n';
  const std::string val_path = join_path(cfg.output_dir, "eigenvalues.csv");
  write_text_file(val_path, vals.str());
  art.files.push_back(val_path);

  std::ostringstream report;
  report << "points = " << state.graph.size() << '\n';
  report << "sigma = " << format_value(state.graph.sigma) << '\n';
  report << "k = " << state.k << '\n';
  report << "eigenvalue_gap = " << format_value(state.embedding.eigenvalue_gap) << '\n';
  report << "degenerate_gap = " << (state.dec.degenerate_gap ? "true" : "false") << '\n';
  const std::string rep_path = join_path(cfg.output_dir, "spectral_report.txt");
  write_text_file(rep_path, report.str());
  art.files.push_back(rep_path);

  write_effective_config(resolved_config(cfg, state), art.files);
  return art;
}

ClusterArtifacts run_cluster(const PipelineConfig& cfg) {
  ensure_output_dir(cfg);
  const TimeSeriesMatrix data = load_input(cfg);
  const EmbedState state = compute_embedding(cfg, data);
  const auto n = static_cast<int>(data.n_points());

  ClusterConfig cc = cfg.cluster;
  if (cc.n_clusters == 0) cc.n_clusters = state.k + 1;
  cc.seed = derive_seed(cfg.seed, kClusterStream);

  ClusterArtifacts art;
  try {
    art.labels = cluster_embedding(state.embedding, cc);
  } catch (const Error& e) {
    if (e.code() != errc::degenerate) throw;
    // Nothing rose above the background radius: report everything as
    // background instead of failing the whole run.
    std::fputs("warning: no foreground structure found; all points labeled background\n", stderr);
    art.labels.labels.assign(static_cast<std::size_t>(n), 0);
    art.labels.sizes.assign(1, n);
    art.empty_foreground = true;
  }
  art.n_structures = static_cast<int>(art.labels.sizes.size()) - 1;

  std::ostringstream labels_csv;
  labels_csv << "index,label\n";
  for (int i = 0; i < n; ++i)
    labels_csv << i << ',' << art.labels.labels[static_cast<std::size_t>(i)] << '\n';
  const std::string labels_path = join_path(cfg.output_dir, "labels.csv");
  write_text_file(labels_path, labels_csv.str());
  art.files.push_back(labels_path);

  // Per-cluster mean and spread of the time series.
  std::ostringstream means_csv;
  means_csv << "label,t,mean,sd\n";
  const auto n_labels = static_cast<int>(art.labels.sizes.size());
  for (int lab = 0; lab < n_labels; ++lab) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (art.labels.labels[static_cast<std::size_t>(i)] == lab) members.push_back(i);
    if (members.empty()) continue;
    for (Eigen::Index t = 0; t < data.n_samples(); ++t) {
      double mean = 0.0;
      for (const int id : members) mean += data.values(id, t);
      mean /= static_cast<double>(members.size());
      double sd = 0.0;
      if (members.size() > 1) {
        double acc = 0.0;
        for (const int id : members) {
          const double d = data.values(id, t) - mean;
          acc += d * d;
        }
        sd = std::sqrt(acc / static_cast<double>(members.size() - 1));
      }
      means_csv << lab << ',' << t << ',' << format_value(mean) << ',' << format_value(sd)
                << '\n';
    }
  }
  const std::string means_path = join_path(cfg.output_dir, "cluster_means.csv");
  write_text_file(means_path, means_csv.str());
  art.files.push_back(means_path);

  if (!cfg.mask_path.empty()) {
    const VoxelMask mask = load_sized_mask(cfg, n);
    std::vector<int> levels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      levels[static_cast<std::size_t>(i)] =
          cluster_gray_level(art.labels.labels[static_cast<std::size_t>(i)], art.n_structures);
    for (auto& p : write_slice_maps(mask, levels, cfg.output_dir, "clusters"))
      art.files.push_back(std::move(p));
  }

  PipelineConfig eff = resolved_config(cfg, state);
  eff.cluster.n_clusters = cc.n_clusters;
  write_effective_config(eff, art.files);
  return art;
}

SynthArtifacts run_synth(const PipelineConfig& cfg) {
  ensure_output_dir(cfg);
  const StimulusSeries stim = make_stimulus(cfg);
  const int n_real = cfg.synth.realizations;
  if (n_real < 1) throw_invalid("realization count must be at least 1");

  SynthArtifacts art;
  for (int r = 0; r < n_real; ++r) {
    PhantomSpec spec = cfg.synth.phantom;
    spec.seed = cfg.seed + static_cast<std::uint64_t>(r);
    const PhantomData ph = generate_phantom(spec, stim);
    art.n_brain = ph.n_brain;
    art.n_active = ph.n_active;

    char suffix[16] = "";
    if (n_real > 1) std::snprintf(suffix, sizeof suffix, "_%03d", r);
    const std::string data_path =
        join_path(cfg.output_dir, std::string("dataset") + suffix + ".fts");
    save_dataset(data_path, TimeSeriesMatrix(ph.values), DatasetFormat::fts_binary);
    art.files.push_back(data_path);

    std::ostringstream truth_csv;
    truth_csv << "index,activated\n";
    for (std::size_t i = 0; i < ph.truth.size(); ++i)
      truth_csv << i << ',' << ph.truth[i] << '\n';
    const std::string truth_path =
        join_path(cfg.output_dir, std::string("truth") + suffix + ".csv");
    write_text_file(truth_path, truth_csv.str());
    art.files.push_back(truth_path);

    if (r == 0) {
      const std::string mask_path = join_path(cfg.output_dir, "mask.csv");
      save_mask(mask_path, ph.mask);
      art.files.push_back(mask_path);
    }
  }

  const std::string stim_path = join_path(cfg.output_dir, "stimulus.csv");
  save_value_column(stim_path, stim.samples);
  art.files.push_back(stim_path);

  std::ostringstream report;
  report << "n_brain = " << art.n_brain << '\n';
  report << "n_active = " << art.n_active << '\n';
  report << "realizations = " << n_real << '\n';
  const std::string rep_path = join_path(cfg.output_dir, "synth_report.txt");
  write_text_file(rep_path, report.str());
  art.files.push_back(rep_path);

  write_effective_config(cfg, art.files);
  return art;
}

RocArtifacts run_roc(const PipelineConfig& cfg) {
  ensure_output_dir(cfg);
  if (cfg.embedding.k_auto)
    throw_invalid("roc uses a fixed embedding dimension; set k to a number");
  const StimulusSeries stim = make_stimulus(cfg);
  const int n_real = cfg.roc.realizations;
  if (n_real < 1) throw_invalid("realization count must be at least 1");
  const int k = cfg.embedding.k;
  if (k < 1) throw_invalid("embedding dimension must be at least 1");

  const Vector oracle_regressor = convolve_stimulus(stim, HrfParams{});
  std::vector<RocCurve> emb_curves, glm_curves;
  double auc_emb = 0.0, auc_glm = 0.0;
  for (int r = 0; r < n_real; ++r) {
    PhantomSpec spec = cfg.synth.phantom;
    spec.seed = cfg.seed + static_cast<std::uint64_t>(r);
    const PhantomData ph = generate_phantom(spec, stim);
    const TimeSeriesMatrix data(ph.values);

    const ConnectivityGraph graph = build_graph(data, cfg.graph);
    const SpectralDecomposition dec = decompose(graph, k + 1);
    const Embedding emb = embed(dec, k);
    emb_curves.push_back(roc_curve(emb.coords.rowwise().norm(), ph.truth));
    auc_emb += roc_auc(emb_curves.back());

    const GlmResult glm = glm_tmap(data, oracle_regressor);
    glm_curves.push_back(roc_curve(glm.t_stat, ph.truth));
    auc_glm += roc_auc(glm_curves.back());
  }
  auc_emb /= n_real;
  auc_glm /= n_real;

  std::vector<double> grid;
  for (int i = 0; i <= 1000; ++i) grid.push_back(static_cast<double>(i) / 1000.0);
  const std::vector<double> avg_emb = average_tpr(emb_curves, grid);
  const std::vector<double> avg_glm = average_tpr(glm_curves, grid);

  RocArtifacts art;
  art.auc_embedding = auc_emb;
  art.auc_glm = auc_glm;
  const std::vector<double> summary_fpr{0.003, 0.005, 0.009};
  art.tpr_embedding = average_tpr(emb_curves, summary_fpr);
  art.tpr_glm = average_tpr(glm_curves, summary_fpr);

  const auto write_avg = [&](const char* name, const std::vector<double>& tpr) {
    std::ostringstream out;
    out << "fpr,tpr\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      out << format_value(grid[i]) << ',' << format_value(tpr[i]) << '\n';
    const std::string path = join_path(cfg.output_dir, name);
    write_text_file(path, out.str());
    art.files.push_back(path);
  };
  write_avg("roc_embedding.csv", avg_emb);
  write_avg("roc_glm.csv", avg_glm);

  std::ostringstream summary;
  summary << "method,auc,tpr_at_0.003,tpr_at_0.005,tpr_at_0.009\n";
  summary << "embedding," << format_value(auc_emb);
  for (const double v : art.tpr_embedding) summary << ',' << format_value(v);
  summary << "\nglm," << format_value(auc_glm);
  for (const double v : art.tpr_glm) summary << ',' << format_value(v);
  summary << '\n';
  const std::string sum_path = join_path(cfg.output_dir, "roc_summary.csv");
  write_text_file(sum_path, summary.str());
  art.files.push_back(sum_path);

  write_effective_config(cfg, art.files);
  return art;
}

BaselineArtifacts run_baseline(const PipelineConfig& cfg) {
  ensure_output_dir(cfg);
  const TimeSeriesMatrix data = load_input(cfg);
  BaselineArtifacts art;

  if (cfg.baseline.method == "pca") {
    const Matrix coords = pca_embed(data, cfg.embedding.k);
    const std::string path = join_path(cfg.output_dir, "pca.csv");
    write_text_file(path, index_csv(coords, "index", "c", 1));
    art.files.push_back(path);
  } else if (cfg.baseline.method == "isomap") {
    const Matrix coords = isomap_embed(data, cfg.graph.n_neighbors, cfg.embedding.k);
    const std::string path = join_path(cfg.output_dir, "isomap.csv");
    write_text_file(path, index_csv(coords, "index", "c", 1));
    art.files.push_back(path);
  } else if (cfg.baseline.method == "glm") {
    if (cfg.stimulus_path.empty() && cfg.synth.stimulus_path.empty())
      throw_invalid("glm baseline needs a stimulus file");
    const StimulusSeries stim = make_stimulus(cfg);
    if (stim.samples.size() != data.n_samples())
      throw_invalid("stimulus length does not match the dataset");
    const Vector regressor =
        cfg.baseline.dale_regressor
            ? dale_hrf_regressor(stim, cfg.baseline.dale_delta, cfg.baseline.dale_tau)
            : convolve_stimulus(stim, HrfParams{});
    const GlmResult glm = glm_tmap(data, regressor);

    std::ostringstream tmap;
    tmap << "index,beta,t,p\n";
    for (Eigen::Index i = 0; i < glm.beta.size(); ++i)
      tmap << i << ',' << format_value(glm.beta[i]) << ',' << format_value(glm.t_stat[i]) << ','
           << format_value(glm.p_value[i]) << '\n';
    const std::string tmap_path = join_path(cfg.output_dir, "tmap.csv");
    write_text_file(tmap_path, tmap.str());
    art.files.push_back(tmap_path);

    if (!cfg.mask_path.empty()) {
      const VoxelMask mask = load_sized_mask(cfg, data.n_points());
      std::vector<int> levels(static_cast<std::size_t>(data.n_points()));
      for (Eigen::Index i = 0; i < data.n_points(); ++i)
        levels[static_cast<std::size_t>(i)] =
            glm.p_value[i] <= cfg.baseline.p_threshold ? 255 : 128;
      for (auto& p : write_slice_maps(mask, levels, cfg.output_dir, "glm"))
        art.files.push_back(std::move(p));
    }
  } else {
    throw_invalid("unknown baseline method '" + cfg.baseline.method + "'");
  }

  write_effective_config(cfg, art.files);
  return art;
}

OracleArtifacts run_oracle_check(const PipelineConfig& cfg) {
  ensure_output_dir(cfg);
  if (cfg.oracle.n_graphs < 1) throw_invalid("need at least 1 graph");
  if (cfg.oracle.max_nodes < 5 || cfg.oracle.max_nodes > 200)
    throw_invalid("node cap must lie in [5, 200]");

  OracleArtifacts art;
  for (int g = 0; g < cfg.oracle.n_graphs; ++g) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(g)));
    ConnectivityGraph graph;
    bool made = false;
    for (int attempt = 0; attempt < 200 && !made; ++attempt) {
      const int n = 5 + static_cast<int>(rng.below(
                            static_cast<std::uint64_t>(cfg.oracle.max_nodes - 4)));
      Matrix points(n, 3);
      for (Eigen::Index i = 0; i < points.size(); ++i) points(i) = rng.normal();
      const int k =
          1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(4, n - 1))));
      const auto lists = knn_neighbors(TimeSeriesMatrix(points), k);
      std::vector<std::tuple<int, int, double>> edges;
      for (int i = 0; i < n; ++i)
        for (const int j : lists[static_cast<std::size_t>(i)])
          if (i < j ||
              std::find(lists[static_cast<std::size_t>(j)].begin(),
                        lists[static_cast<std::size_t>(j)].end(),
                        i) == lists[static_cast<std::size_t>(j)].end())
            edges.emplace_back(std::min(i, j), std::max(i, j), 0.1 + 0.9 * rng.uniform());
      try {
        graph = ConnectivityGraph::from_edges(n, edges);
        made = true;
      } catch (const Error& e) {
        if (e.code() != errc::degenerate) throw;  // disconnected draw: try again
      }
    }
    if (!made) throw_convergence("could not draw a connected random graph");

    const auto n = static_cast<int>(graph.size());
    const WalkModel model = build_walk_model(graph);
    const HittingTimes hitting = hitting_times(model);
    art.max_onestep_residual =
        std::max(art.max_onestep_residual, verify_one_step(model, hitting));

    const SpectralDecomposition dec = decompose(graph, n);
    const Embedding full = embed(dec, n - 1);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double spectral = commute_distance(dec, i, j, n);
        const double walk = hitting.values(i, j) + hitting.values(j, i);
        art.max_commute_error =
            std::max(art.max_commute_error, std::abs(spectral - walk) / walk);
        const double emb_sq = (full.coords.row(i) - full.coords.row(j)).squaredNorm();
        art.max_isometry_error =
            std::max(art.max_isometry_error, std::abs(emb_sq - spectral) / spectral);
      }
  }

  const bool commute_ok = art.max_commute_error <= 1e-8;
  const bool isometry_ok = art.max_isometry_error <= 1e-8;
  const bool onestep_ok = art.max_onestep_residual <= 1e-8;
  art.ok = commute_ok && isometry_ok && onestep_ok;

  std::ostringstream report;
  report << "graphs = " << cfg.oracle.n_graphs << '\n';
  report << "max_commute_relative_error = " << format_value(art.max_commute_error) << '\n';
  report << "max_isometry_relative_error = " << format_value(art.max_isometry_error) << '\n';
  report << "max_onestep_residual = " << format_value(art.max_onestep_residual) << '\n';
  report << "commute_agreement: " << (commute_ok ? "PASS" : "FAIL") << '\n';
  report << "isometry: " << (isometry_ok ? "PASS" : "FAIL") << '\n';
  report << "one_step: " << (onestep_ok ? "PASS" : "FAIL") << '\n';
  report << "overall: " << (art.ok ? "PASS" : "FAIL") << '\n';
  const std::string rep_path = join_path(cfg.output_dir, "oracle_report.txt");
  write_text_file(rep_path, report.str());
  art.files.push_back(rep_path);

  write_effective_config(cfg, art.files);
  return art;
}

}  // namespace ctembed
