#pragma once

#include <cstdint>
#include <vector>

#include "ctembed/spectral.hpp"
#include "ctembed/types.hpp"

namespace ctembed {

struct ClusterConfig {
  int n_clusters = 0;              // total labels including background
  double radius_quantile = 0.5;    // background/foreground split point
  double min_cluster_fraction = 0.01;  // clusters below this share of N get merged
  int max_merge_iters = 10;
  int n_restarts = 20;
  int max_iters = 100;
  std::uint64_t seed = 0;
};

struct ClusterLabels {
  std::vector<int> labels;  // 0 = background, 1..k = structures
  int background_label = 0;
  std::vector<int> sizes;  // per-label counts, index = label
};

struct BackgroundSplit {
  std::vector<int> background;
  std::vector<int> foreground;
  double threshold = 0.0;
  bool degenerate = false;  // all radii identical; everything went background
};

struct AngularKMeansResult {
  std::vector<int> labels;  // 0-based cluster per point
  Matrix centroids;         // k unit rows
  double objective = 0.0;   // sum of point-to-centroid angles
};

// Points whose embedding radius is at or below the given quantile of the
// radius distribution form the background; the rest are structure candidates.
BackgroundSplit split_background(const Embedding& embedding, double radius_quantile);

// Lloyd iteration on the unit sphere with angular distance and seeding that
// prefers directions far from those already chosen. Deterministic for a fixed
// seed and equivariant under point reordering.
AngularKMeansResult angular_kmeans(const Matrix& points, int k, std::uint64_t seed,
                                   int max_iters = 100);

// Full pipeline: radius split, angular k-means on the sphere-projected
// foreground with k = n_clusters - 1, then undersized clusters merged into
// their angularly nearest neighbor until stable.
ClusterLabels cluster_embedding(const Embedding& embedding, const ClusterConfig& config);

}  // namespace ctembed
