#include "ctembed/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ctembed/errors.hpp"
#include "ctembed/io.hpp"
#include "ctembed/rng.hpp"

namespace ctembed {

namespace {

void validate_hrf(const HrfParams& p) {
  if (!(p.a1 > 0) || !(p.a2 > 0) || !(p.b1 > 0) || !(p.b2 > 0) || !(p.c >= 0) ||
      !(p.delay1() > 0) || !(p.delay2() > 0))
    throw_invalid("response parameters must be positive");
}

void validate_stimulus(const StimulusSeries& g) {
  if (g.samples.size() < 1) throw_invalid("stimulus is empty");
  if (!g.samples.allFinite()) throw_invalid("stimulus has non-finite samples");
  if (!(g.tr_seconds > 0)) throw_invalid("repetition time must be positive");
}

// Response with unit positive lobe; per-voxel amplitude scales this whole
// shape, so a zero amplitude leaves the background series untouched.
Vector unit_response(const StimulusSeries& stimulus, double b1) {
  HrfParams p;
  p.alpha = 1.0;
  p.b1 = b1;
  return convolve_stimulus(stimulus, p);
}

}  // namespace

double hrf(double t_seconds, const HrfParams& params) {
  validate_hrf(params);
  if (t_seconds <= 0.0) return 0.0;
  const double d1 = params.delay1();
  const double d2 = params.delay2();
  const double lobe = std::pow(t_seconds / d1, params.a1) * std::exp(-(t_seconds - d1) / params.b1);
  const double undershoot =
      std::pow(t_seconds / d2, params.a2) * std::exp(-(t_seconds - d2) / params.b2);
  return params.alpha * lobe - params.c * undershoot;
}

Vector convolve_stimulus(const StimulusSeries& stimulus, const HrfParams& params) {
  validate_stimulus(stimulus);
  validate_hrf(params);
  const Eigen::Index t_len = stimulus.samples.size();
  Vector kernel(t_len);
  for (Eigen::Index k = 0; k < t_len; ++k)
    kernel[k] = hrf(static_cast<double>(k) * stimulus.tr_seconds, params);
  Vector out = Vector::Zero(t_len);
  for (Eigen::Index n = 0; n < t_len; ++n)
    for (Eigen::Index m = 0; m <= n; ++m) out[n] += stimulus.samples[m] * kernel[n - m];
  return out;
}

Matrix load_background_pool(const std::string& path, double variance_quantile) {
  if (!(variance_quantile > 0.0) || variance_quantile > 1.0)
    throw_invalid("variance quantile must lie in (0, 1]");
  const TimeSeriesMatrix pool = load_dataset(path, DatasetFormat::fts_binary);
  const Eigen::Index n = pool.n_points();
  Vector var(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mean = pool.values.row(i).mean();
    var[i] = (pool.values.row(i).array() - mean).square().sum() /
             static_cast<double>(pool.n_samples());
  }
  std::vector<double> sorted(var.data(), var.data() + n);
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(
      std::clamp<long>(static_cast<long>(std::ceil(variance_quantile * static_cast<double>(n))) - 1,
                       0, static_cast<long>(n) - 1));
  const double cutoff = sorted[rank];
  std::vector<int> keep;
  for (Eigen::Index i = 0; i < n; ++i)
    if (var[i] <= cutoff) keep.push_back(static_cast<int>(i));
  if (keep.empty()) throw_invalid("variance screening removed every pool series");
  Matrix out(static_cast<Eigen::Index>(keep.size()), pool.n_samples());
  for (std::size_t r = 0; r < keep.size(); ++r)
    out.row(static_cast<Eigen::Index>(r)) = pool.values.row(keep[r]);
  return out;
}

PhantomData generate_phantom(const PhantomSpec& spec, const StimulusSeries& stimulus) {
  validate_stimulus(stimulus);
  if (spec.grid_width < 2 || spec.grid_height < 2) throw_invalid("grid too small");
  if (!(spec.brain_radius > 0) || !(spec.activation_radius > 0))
    throw_invalid("disk radii must be positive");
  if (!(spec.activation_radius < spec.brain_radius))
    throw_invalid("activation disk must lie strictly inside the brain disk");
  if (spec.alpha_range.second < spec.alpha_range.first ||
      spec.b1_range.second < spec.b1_range.first)
    throw_invalid("draw ranges must be ordered");
  if (!(spec.b1_range.first > 0)) throw_invalid("time-constant range must be positive");
  if (spec.background == PhantomSpec::Background::ar1 &&
      (!(spec.ar1_sigma > 0) || !(std::abs(spec.ar1_rho) < 1)))
    throw_invalid("ar1 background needs |rho| < 1 and positive sigma");

  const Eigen::Index t_len = stimulus.samples.size();
  PhantomData out;
  const double br2 = spec.brain_radius * spec.brain_radius;
  const double ar2 = spec.activation_radius * spec.activation_radius;
  for (int y = 0; y < spec.grid_height; ++y)
    for (int x = 0; x < spec.grid_width; ++x) {
      const double dx = static_cast<double>(x) - spec.center_x;
      const double dy = static_cast<double>(y) - spec.center_y;
      const double r2 = dx * dx + dy * dy;
      if (r2 > br2) continue;
      out.mask.index.push_back(out.n_brain);
      out.mask.site.push_back({x, y, 0});
      out.truth.push_back(r2 <= ar2 ? 1 : 0);
      ++out.n_brain;
    }
  out.n_active = static_cast<int>(std::count(out.truth.begin(), out.truth.end(), 1));
  if (out.n_brain < 2) throw_invalid("brain disk covers fewer than 2 voxels");

  Matrix pool;
  std::vector<int> pool_pick;
  if (spec.background == PhantomSpec::Background::pool) {
    pool = load_background_pool(spec.pool_path, spec.pool_variance_quantile);
    if (pool.cols() != t_len)
      throw_invalid("pool series length " + std::to_string(pool.cols()) +
                    " does not match stimulus length " + std::to_string(t_len));
    if (pool.rows() < out.n_brain)
      throw_invalid("pool exhausted: " + std::to_string(pool.rows()) + " series for " +
                    std::to_string(out.n_brain) + " voxels");
    // Partial Fisher-Yates draw without replacement on its own stream.
    Rng shuffle_rng(derive_seed(spec.seed, 0xFFFFFFFFull));
    std::vector<int> ids(static_cast<std::size_t>(pool.rows()));
    std::iota(ids.begin(), ids.end(), 0);
    for (int v = 0; v < out.n_brain; ++v) {
      const auto pick = v + static_cast<int>(shuffle_rng.below(
                                static_cast<std::uint64_t>(pool.rows() - v)));
      std::swap(ids[static_cast<std::size_t>(v)], ids[static_cast<std::size_t>(pick)]);
      pool_pick.push_back(ids[static_cast<std::size_t>(v)]);
    }
  }

  out.values.resize(out.n_brain, t_len);
  for (int v = 0; v < out.n_brain; ++v) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(v)));
    // Response draws come first so background noise never shifts them.
    const double amplitude = rng.uniform(spec.alpha_range.first, spec.alpha_range.second);
    const double b1 = rng.uniform(spec.b1_range.first, spec.b1_range.second);
    if (spec.background == PhantomSpec::Background::ar1) {
      double prev =
          rng.normal() * spec.ar1_sigma / std::sqrt(1.0 - spec.ar1_rho * spec.ar1_rho);
      for (Eigen::Index t = 0; t < t_len; ++t) {
        out.values(v, t) = prev;
        prev = spec.ar1_rho * prev + spec.ar1_sigma * rng.normal();
      }
    } else {
      out.values.row(v) = pool.row(pool_pick[static_cast<std::size_t>(v)]);
    }
    if (out.truth[static_cast<std::size_t>(v)] == 1)
      out.values.row(v) += amplitude * unit_response(stimulus, b1).transpose();
  }
  return out;
}

}  // namespace ctembed
