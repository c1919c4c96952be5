#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctembed/types.hpp"

namespace ctembed {

// Difference-of-gamma hemodynamic response. Peak delays default to a*b for
// each lobe, putting the positive peak at t = a1*b1 seconds.
struct HrfParams {
  double alpha = 1.0;  // scale of the positive lobe
  double a1 = 6.0;
  double a2 = 12.0;
  double b1 = 1.0;
  double b2 = 0.9;
  double c = 0.35;  // undershoot weight
  std::optional<double> d1;  // peak delay overrides, seconds
  std::optional<double> d2;

  double delay1() const { return d1 ? *d1 : a1 * b1; }
  double delay2() const { return d2 ? *d2 : a2 * b2; }
};

struct StimulusSeries {
  Vector samples;           // one value per repetition time
  double tr_seconds = 1.0;  // sampling interval
};

// Synthetic activation dataset: a disk of responding voxels inside a disk of
// background voxels on a 2-D grid.
struct PhantomSpec {
  int grid_width = 40;
  int grid_height = 40;
  double center_x = 19.66;
  double center_y = 20.06;
  double brain_radius = 18.4;
  double activation_radius = 5.55;
  enum class Background { ar1, pool } background = Background::ar1;
  double ar1_rho = 0.3;
  double ar1_sigma = 1.0;
  std::string pool_path;            // fts dataset used when background = pool
  double pool_variance_quantile = 0.95;  // series above this variance quantile are dropped
  std::pair<double, double> alpha_range{0.8, 1.2};
  std::pair<double, double> b1_range{5.0, 10.0};
  std::uint64_t seed = 0;
};

struct PhantomData {
  Matrix values;           // one row per brain voxel
  std::vector<int> truth;  // 1 = responding voxel
  VoxelMask mask;
  int n_brain = 0;
  int n_active = 0;
};

double hrf(double t_seconds, const HrfParams& params);

// Causal discrete convolution of the stimulus with the response sampled at
// the repetition time; output truncated to the stimulus length.
Vector convolve_stimulus(const StimulusSeries& stimulus, const HrfParams& params);

// Loads an fts dataset of candidate background series and drops the
// high-variance tail above the given quantile.
Matrix load_background_pool(const std::string& path, double variance_quantile);

PhantomData generate_phantom(const PhantomSpec& spec, const StimulusSeries& stimulus);

}  // namespace ctembed
