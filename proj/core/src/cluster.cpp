#include "ctembed/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ctembed/errors.hpp"
#include "ctembed/rng.hpp"

namespace ctembed {

namespace {

double angle_between(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

// Lexicographic-by-coordinate point order. All reductions run in this order,
// which does not depend on how the caller arranged the points, so reordering
// the input permutes the output labels exactly.
std::vector<int> canonical_order(const Matrix& points) {
  std::vector<int> order(static_cast<std::size_t>(points.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    for (Eigen::Index c = 0; c < points.cols(); ++c) {
      if (points(a, c) < points(b, c)) return true;
      if (points(a, c) > points(b, c)) return false;
    }
    return false;
  });
  return order;
}

Matrix seed_centroids(const Matrix& unit, const std::vector<int>& order, int k, Rng& rng) {
  const int n = static_cast<int>(unit.rows());
  Matrix centroids(k, unit.cols());
  centroids.row(0) = unit.row(order[static_cast<std::size_t>(rng.below(
      static_cast<std::uint64_t>(n)))]);
  std::vector<double> weight(static_cast<std::size_t>(n));
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (int p = 0; p < n; ++p) {
      const int id = order[static_cast<std::size_t>(p)];
      double best = std::numeric_limits<double>::infinity();
      for (int e = 0; e < c; ++e)
        best = std::min(best, angle_between(unit.row(id), centroids.row(e)));
      weight[static_cast<std::size_t>(p)] = best * best;
      total += best * best;
    }
    if (total <= 1e-24)
      throw_invalid("requested " + std::to_string(k) +
                    " clusters but the points span fewer distinct directions");
    const double r = rng.uniform() * total;
    double cum = 0.0;
    int pick = -1;
    for (int p = 0; p < n; ++p) {
      cum += weight[static_cast<std::size_t>(p)];
      if (cum > r && weight[static_cast<std::size_t>(p)] > 0.0) {
        pick = order[static_cast<std::size_t>(p)];
        break;
      }
    }
    if (pick < 0) {  // numeric edge: fall back to the last positive-weight point
      for (int p = n - 1; p >= 0; --p)
        if (weight[static_cast<std::size_t>(p)] > 0.0) {
          pick = order[static_cast<std::size_t>(p)];
          break;
        }
    }
    centroids.row(c) = unit.row(pick);
  }
  return centroids;
}

double cluster_angle_sum(const Matrix& unit, const std::vector<int>& order,
                         const std::vector<int>& labels, int cluster,
                         const Eigen::RowVectorXd& centroid) {
  double sum = 0.0;
  for (const int id : order)
    if (labels[static_cast<std::size_t>(id)] == cluster) sum += angle_between(unit.row(id), centroid);
  return sum;
}

AngularKMeansResult run_kmeans(const Matrix& unit, const std::vector<int>& order, int k,
                               std::uint64_t seed, int max_iters) {
  const int n = static_cast<int>(unit.rows());
  Rng rng(seed);
  AngularKMeansResult result;
  result.centroids = seed_centroids(unit, order, k, rng);
  result.labels.assign(static_cast<std::size_t>(n), 0);

  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = iter == 0;
    for (int p = 0; p < n; ++p) {
      int best = 0;
      double best_dot = -std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = unit.row(p).dot(result.centroids.row(c));
        if (d > best_dot) {
          best_dot = d;
          best = c;
        }
      }
      if (result.labels[static_cast<std::size_t>(p)] != best) {
        result.labels[static_cast<std::size_t>(p)] = best;
        changed = true;
      }
    }
    if (!changed) break;

    for (int c = 0; c < k; ++c) {
      Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(unit.cols());
      int members = 0;
      for (const int id : order)
        if (result.labels[static_cast<std::size_t>(id)] == c) {
          mean += unit.row(id);
          ++members;
        }
      if (members == 0) continue;  // empty cluster keeps its centroid
      const double norm = mean.norm();
      if (norm <= 1e-12) continue;  // balanced antipodal members: mean direction undefined
      mean /= norm;
      // Spherical means can raise the angle sum; keep the old centroid unless
      // the candidate actually lowers it, so the objective never increases.
      if (cluster_angle_sum(unit, order, result.labels, c, mean) <
          cluster_angle_sum(unit, order, result.labels, c, result.centroids.row(c)))
        result.centroids.row(c) = mean;
    }
  }

  result.objective = 0.0;
  for (const int id : order)
    result.objective += angle_between(
        unit.row(id), result.centroids.row(result.labels[static_cast<std::size_t>(id)]));
  return result;
}

Matrix normalize_rows(const Matrix& points) {
  Matrix unit = points;
  for (Eigen::Index r = 0; r < unit.rows(); ++r) {
    const double norm = unit.row(r).norm();
    if (norm <= 0.0)
      throw_invalid("zero vector at point " + std::to_string(r) +
                    ": direction undefined on the sphere");
    unit.row(r) /= norm;
  }
  return unit;
}

}  // namespace

BackgroundSplit split_background(const Embedding& embedding, double radius_quantile) {
  if (!(radius_quantile > 0.0) || !(radius_quantile < 1.0))
    throw_invalid("radius quantile must lie in (0, 1); got " + std::to_string(radius_quantile));
  const Eigen::Index n = embedding.coords.rows();
  if (n < 2) throw_invalid("need at least 2 points to split");
  Vector radii = embedding.coords.rowwise().norm();
  std::vector<double> sorted(radii.data(), radii.data() + n);
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(
      std::clamp<long>(static_cast<long>(std::ceil(radius_quantile * static_cast<double>(n))) - 1,
                       0, static_cast<long>(n) - 1));
  BackgroundSplit split;
  split.threshold = sorted[rank];
  for (Eigen::Index i = 0; i < n; ++i)
    (radii[i] <= split.threshold ? split.background : split.foreground)
        .push_back(static_cast<int>(i));
  split.degenerate = split.foreground.empty();
  return split;
}

AngularKMeansResult angular_kmeans(const Matrix& points, int k, std::uint64_t seed,
                                   int max_iters) {
  if (points.rows() < 1) throw_invalid("no points to cluster");
  if (k < 1) throw_invalid("cluster count must be at least 1");
  if (k > points.rows())
    throw_invalid("requested " + std::to_string(k) + " clusters for " +
                  std::to_string(points.rows()) + " points");
  if (max_iters < 1) throw_invalid("iteration cap must be at least 1");
  const Matrix unit = normalize_rows(points);
  return run_kmeans(unit, canonical_order(unit), k, seed, max_iters);
}

ClusterLabels cluster_embedding(const Embedding& embedding, const ClusterConfig& config) {
  const Eigen::Index n = embedding.coords.rows();
  if (config.n_clusters < 2)
    throw_invalid("total cluster count must be at least 2 (background plus one structure)");
  if (!(config.min_cluster_fraction >= 0.0) || config.min_cluster_fraction >= 1.0)
    throw_invalid("min cluster fraction must lie in [0, 1)");
  if (config.max_merge_iters < 0) throw_invalid("merge iteration cap must be nonnegative");
  if (config.n_restarts < 1) throw_invalid("restart count must be at least 1");

  BackgroundSplit split = split_background(embedding, config.radius_quantile);

  // Pull near-zero points into the background before normalizing directions.
  const double max_radius = embedding.coords.rowwise().norm().maxCoeff();
  std::vector<int> foreground;
  for (const int id : split.foreground) {
    if (embedding.coords.row(id).norm() < 1e-12 * max_radius)
      split.background.push_back(id);
    else
      foreground.push_back(id);
  }
  std::sort(split.background.begin(), split.background.end());
  if (foreground.empty())
    throw_degenerate("background split left no foreground points; lower the radius quantile");

  const int k_start = config.n_clusters - 1;
  if (k_start > static_cast<int>(foreground.size()))
    throw_invalid("more structure clusters than foreground points");

  Matrix fg(static_cast<Eigen::Index>(foreground.size()), embedding.coords.cols());
  for (std::size_t r = 0; r < foreground.size(); ++r)
    fg.row(static_cast<Eigen::Index>(r)) = embedding.coords.row(foreground[r]);
  const Matrix unit = normalize_rows(fg);
  const std::vector<int> order = canonical_order(unit);

  AngularKMeansResult best;
  bool have = false;
  for (int r = 0; r < config.n_restarts; ++r) {
    AngularKMeansResult trial =
        run_kmeans(unit, order, k_start, derive_seed(config.seed, static_cast<std::uint64_t>(r)),
                   config.max_iters);
    if (!have || trial.objective < best.objective) {
      best = std::move(trial);
      have = true;
    }
  }

  // Merge undersized clusters into their angularly nearest neighbor.
  int k = k_start;
  const double min_size = config.min_cluster_fraction * static_cast<double>(n);
  for (int pass = 0; pass < config.max_merge_iters && k > 1; ++pass) {
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (const int lab : best.labels) ++sizes[static_cast<std::size_t>(lab)];
    int victim = -1;
    for (int c = 0; c < k; ++c) {
      if (static_cast<double>(sizes[static_cast<std::size_t>(c)]) >= min_size) continue;
      if (victim < 0 || sizes[static_cast<std::size_t>(c)] < sizes[static_cast<std::size_t>(victim)])
        victim = c;
    }
    if (victim < 0) break;
    int target = -1;
    double best_angle = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      if (c == victim) continue;
      const double a = angle_between(best.centroids.row(victim), best.centroids.row(c));
      if (a < best_angle) {
        best_angle = a;
        target = c;
      }
    }
    for (auto& lab : best.labels)
      if (lab == victim) lab = target;
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(unit.cols());
    for (const int id : order)
      if (best.labels[static_cast<std::size_t>(id)] == target) mean += unit.row(id);
    if (mean.norm() > 1e-12) best.centroids.row(target) = mean / mean.norm();
    // Drop the victim slot; higher clusters shift down one.
    for (int c = victim; c + 1 < k; ++c) best.centroids.row(c) = best.centroids.row(c + 1);
    best.centroids.conservativeResize(k - 1, Eigen::NoChange);
    for (auto& lab : best.labels)
      if (lab > victim) --lab;
    --k;
  }

  ClusterLabels out;
  out.labels.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t r = 0; r < foreground.size(); ++r)
    out.labels[static_cast<std::size_t>(foreground[r])] = best.labels[r] + 1;
  out.sizes.assign(static_cast<std::size_t>(k) + 1, 0);
  for (const int lab : out.labels) ++out.sizes[static_cast<std::size_t>(lab)];
  return out;
}

}  // namespace ctembed
