#include "ctembed/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "ctembed/errors.hpp"
#include "lanczos.hpp"

namespace ctembed {

namespace {

constexpr double kGapFloor = 1e-12;   // 1 - lambda below this: embedding undefined
constexpr double kDegenerateGap = 1e-10;

// Largest-magnitude entry positive, first index winning ties; removes the
// arbitrary sign so repeated runs match entrywise.
void fix_signs(Matrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double a = std::abs(vectors(r, c));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if (vectors(arg, c) < 0) vectors.col(c) = -vectors.col(c);
  }
}

double embedding_gap(const SpectralDecomposition& dec, int k) {
  const double gap = 1.0 - dec.eigenvalues[k];
  if (gap < kGapFloor)
    throw_degenerate("repeated unit eigenvalue at position " + std::to_string(k + 1) +
                     ": graph is effectively disconnected");
  return gap;
}

}  // namespace

SpectralDecomposition decompose(const ConnectivityGraph& graph, int n_pairs,
                                const EigensolverOptions& options) {
  const Eigen::Index n = graph.size();
  if (n_pairs < 2 || n_pairs > n)
    throw_invalid("eigenpair count must lie in [2, N]; got " + std::to_string(n_pairs) +
                  " for N = " + std::to_string(n));

  SpectralDecomposition dec;
  dec.stationary = graph.degrees / graph.degrees.sum();
  const Vector inv_sqrt_d = graph.degrees.cwiseSqrt().cwiseInverse();

  if (n <= 64 || n_pairs > n / 2) {
    Matrix s = inv_sqrt_d.asDiagonal() * Matrix(graph.weights) * inv_sqrt_d.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    if (es.info() != Eigen::Success) throw_convergence("dense eigensolver failed");
    dec.eigenvalues.resize(n_pairs);
    dec.eigenvectors.resize(n, n_pairs);
    for (int i = 0; i < n_pairs; ++i) {
      dec.eigenvalues[i] = es.eigenvalues()[n - 1 - i];
      dec.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
  } else {
    const auto& w = graph.weights;
    auto apply = [&](const Vector& v) -> Vector {
      return inv_sqrt_d.cwiseProduct(w * inv_sqrt_d.cwiseProduct(v));
    };
    detail::LanczosResult r = detail::lanczos_topk(apply, static_cast<int>(n), n_pairs,
                                                   options.tolerance, options.max_restarts,
                                                   options.seed);
    dec.eigenvalues = std::move(r.eigenvalues);
    dec.eigenvectors = std::move(r.eigenvectors);
  }

  fix_signs(dec.eigenvectors);
  for (int i = 0; i + 1 < n_pairs; ++i)
    if (dec.eigenvalues[i] - dec.eigenvalues[i + 1] < kDegenerateGap) dec.degenerate_gap = true;
  return dec;
}

Embedding embed(const SpectralDecomposition& dec, int n_dims) {
  if (n_dims < 1) throw_invalid("embedding dimension must be at least 1");
  if (dec.n_pairs() < n_dims + 1)
    throw_invalid("decomposition holds " + std::to_string(dec.n_pairs()) +
                  " eigenpairs; embedding in " + std::to_string(n_dims) + " dimensions needs " +
                  std::to_string(n_dims + 1));
  const Eigen::Index n = dec.stationary.size();
  Embedding out;
  out.dim = n_dims;
  out.eigenvalue_gap = dec.eigenvalues[0] - dec.eigenvalues[1];
  out.coords.resize(n, n_dims);
  const Vector inv_sqrt_pi = dec.stationary.cwiseSqrt().cwiseInverse();
  for (int k = 0; k < n_dims; ++k) {
    const double gap = embedding_gap(dec, k + 1);
    out.coords.col(k) = dec.eigenvectors.col(k + 1).cwiseProduct(inv_sqrt_pi) / std::sqrt(gap);
  }
  return out;
}

double commute_distance(const SpectralDecomposition& dec, int i, int j, int n_terms) {
  const Eigen::Index n = dec.stationary.size();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw_invalid("point id out of range: (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  if (n_terms < 1 || n_terms > dec.n_pairs())
    throw_invalid("term count must lie in [1, available eigenpairs]; got " +
                  std::to_string(n_terms));
  if (i == j) return 0.0;
  const double si = std::sqrt(dec.stationary[i]);
  const double sj = std::sqrt(dec.stationary[j]);
  double kappa = 0.0;
  for (int k = 1; k < n_terms; ++k) {
    const double gap = embedding_gap(dec, k);
    const double diff = dec.eigenvectors(i, k) / si - dec.eigenvectors(j, k) / sj;
    kappa += diff * diff / gap;
  }
  return kappa;
}

ResidualCurve residual_curve(const TimeSeriesMatrix& data, const SpectralDecomposition& dec,
                             const std::vector<int>& region, int k_max) {
  const Eigen::Index n = data.n_points();
  if (n != dec.stationary.size())
    throw_invalid("dataset and decomposition disagree on point count");
  if (region.empty()) throw_invalid("region is empty");
  for (const int id : region)
    if (id < 0 || id >= n) throw_invalid("region point id out of range: " + std::to_string(id));
  if (k_max < 1 || k_max > dec.n_pairs())
    throw_invalid("curve length must lie in [1, available eigenpairs]; got " +
                  std::to_string(k_max));

  Vector denom(region.size());
  for (std::size_t r = 0; r < region.size(); ++r) {
    denom[static_cast<Eigen::Index>(r)] = data.values.row(region[r]).squaredNorm();
    if (denom[static_cast<Eigen::Index>(r)] <= 0.0)
      throw_invalid("all-zero time series at region point " + std::to_string(region[r]));
  }

  ResidualCurve curve;
  curve.region = region;
  curve.values.reserve(static_cast<std::size_t>(k_max));
  Matrix resid = data.values;  // residual after expanding each scan in k eigenvectors
  for (int k = 0; k < k_max; ++k) {
    const auto& phi = dec.eigenvectors.col(k);
    resid.noalias() -= phi * (phi.transpose() * resid);
    double acc = 0.0;
    for (std::size_t r = 0; r < region.size(); ++r)
      acc += resid.row(region[r]).squaredNorm() / denom[static_cast<Eigen::Index>(r)];
    curve.values.push_back(acc / static_cast<double>(region.size()));
  }
  return curve;
}

int select_dimension(const std::vector<ResidualCurve>& curves, double theta) {
  if (curves.empty()) throw_invalid("no residual curves given");
  if (!(theta > 0.0) || theta >= 1.0)
    throw_invalid("knee threshold must lie in (0, 1); got " + std::to_string(theta));
  int best = 0;
  for (const ResidualCurve& curve : curves) {
    const std::size_t len = curve.values.size();
    if (len < 3) throw_invalid("residual curve too short for knee detection (need length >= 3)");
    double largest = 0.0;
    for (std::size_t k = 0; k + 1 < len; ++k)
      largest = std::max(largest, curve.values[k] - curve.values[k + 1]);
    if (largest <= 1e-12)
      throw_degenerate("flat residual curve: no discernible drop; choose the dimension manually");
    int knee = 0;
    for (std::size_t k = 0; k + 1 < len; ++k) {
      if (curve.values[k] - curve.values[k + 1] < theta * largest) {
        knee = static_cast<int>(k) + 1;
        break;
      }
    }
    if (knee == 0)
      throw_degenerate(
          "no knee: residual drops decay too uniformly; choose the dimension manually");
    best = std::max(best, knee);
  }
  return best;
}

}  // namespace ctembed
