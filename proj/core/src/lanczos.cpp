#include "lanczos.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "ctembed/errors.hpp"
#include "ctembed/rng.hpp"

namespace ctembed::detail {

namespace {

Vector random_unit(Rng& rng, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.normal();
  const double norm = v.norm();
  return norm > 0 ? Vector(v / norm) : Vector::Unit(n, 0);
}

// Two-pass classical Gram-Schmidt against the first `cols` columns of V.
// Returns the accumulated projection coefficients (the column of V' A V).
Vector orthogonalize(const Matrix& v_basis, int cols, Vector& w) {
  Vector h = Vector::Zero(cols);
  for (int pass = 0; pass < 2; ++pass) {
    Vector c = v_basis.leftCols(cols).transpose() * w;
    w.noalias() -= v_basis.leftCols(cols) * c;
    h += c;
  }
  return h;
}

}  // namespace

LanczosResult lanczos_topk(const std::function<Vector(const Vector&)>& apply, int n, int n_pairs,
                           double tolerance, int max_restarts, std::uint64_t seed) {
  const int m = std::min(n, std::max(2 * n_pairs + 12, 30));  // working basis size
  Rng rng(seed);

  Matrix v_basis(n, m);
  Matrix proj = Matrix::Zero(m, m);  // V' A V, exact under full reorthogonalization
  v_basis.col(0) = random_unit(rng, n);
  int filled = 1;  // columns of v_basis already populated
  Vector resid;    // next basis vector candidate after the block is full
  double resid_norm = 0.0;

  for (int restart = 0; restart <= max_restarts; ++restart) {
    for (int j = filled - 1; j + 1 <= m; ++j) {
      Vector w = apply(v_basis.col(j));
      Vector h = orthogonalize(v_basis, j + 1, w);
      proj.col(j).head(j + 1) = h;
      proj.row(j).head(j + 1) = h.transpose();
      const double beta = w.norm();
      if (j + 1 == m) {
        resid_norm = beta;
        resid = beta > 0 ? Vector(w / beta) : random_unit(rng, n);
        break;
      }
      if (beta < 1e-14) {
        // Invariant subspace exhausted; continue with a fresh direction.
        Vector fresh = random_unit(rng, n);
        orthogonalize(v_basis, j + 1, fresh);
        const double fn = fresh.norm();
        if (fn < 1e-14) throw_convergence("eigensolver stalled: no independent direction left");
        v_basis.col(j + 1) = fresh / fn;
      } else {
        v_basis.col(j + 1) = w / beta;
      }
      proj(j + 1, j) = proj(j, j + 1) = beta < 1e-14 ? 0.0 : beta;
    }
    filled = m;

    Eigen::SelfAdjointEigenSolver<Matrix> es(proj.topLeftCorner(m, m));
    if (es.info() != Eigen::Success) throw_convergence("eigensolver failed on the projected block");
    // Ascending from Eigen; view indices from the top.
    const Vector& theta = es.eigenvalues();
    const Matrix& s = es.eigenvectors();
    const double scale = std::max(std::abs(theta[0]), std::abs(theta[m - 1]));

    bool converged = true;
    for (int i = 0; i < n_pairs; ++i) {
      const double r = std::abs(resid_norm * s(m - 1, m - 1 - i));
      if (r > tolerance * std::max(scale, 1.0)) {
        converged = false;
        break;
      }
    }
    if (converged || m == n) {
      LanczosResult out;
      out.eigenvalues.resize(n_pairs);
      out.eigenvectors.resize(n, n_pairs);
      for (int i = 0; i < n_pairs; ++i) {
        out.eigenvalues[i] = theta[m - 1 - i];
        out.eigenvectors.col(i) = v_basis * s.col(m - 1 - i);
        out.eigenvectors.col(i).normalize();
      }
      if (!converged)
        throw_convergence("eigensolver exhausted the full space without meeting tolerance");
      return out;
    }

    // Thick restart: keep the best Ritz vectors plus the residual direction.
    const int keep = std::min(n_pairs + 8, m - 2);
    Matrix kept(n, keep);
    Vector kept_theta(keep);
    for (int i = 0; i < keep; ++i) {
      kept.col(i) = v_basis * s.col(m - 1 - i);
      kept_theta[i] = theta[m - 1 - i];
    }
    v_basis.leftCols(keep) = kept;
    v_basis.col(keep) = resid;
    proj.setZero();
    proj.diagonal().head(keep) = kept_theta;
    filled = keep + 1;
  }
  throw_convergence("eigensolver failed to converge within " + std::to_string(max_restarts) +
                    " restarts");
}

}  // namespace ctembed::detail
