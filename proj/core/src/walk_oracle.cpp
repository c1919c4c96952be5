#include "ctembed/walk_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "ctembed/errors.hpp"
#include "ctembed/rng.hpp"

namespace ctembed {

WalkModel build_walk_model(const ConnectivityGraph& graph, int dense_cap) {
  const Eigen::Index n = graph.size();
  if (n > dense_cap)
    throw_invalid("graph has " + std::to_string(n) + " nodes, over the dense cap of " +
                  std::to_string(dense_cap));
  WalkModel model;
  model.stationary = graph.degrees / graph.degrees.sum();
  model.transition = graph.degrees.cwiseInverse().asDiagonal() * Matrix(graph.weights);
  model.stationary_outer = Vector::Ones(n) * model.stationary.transpose();
  const Matrix system = Matrix::Identity(n, n) - (model.transition - model.stationary_outer);
  model.fundamental = system.partialPivLu().solve(Matrix::Identity(n, n));
  const double resid = (model.fundamental * system - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!std::isfinite(resid) || resid > 1e-6)
    throw_degenerate("one-step system is numerically singular (internal inconsistency, residual " +
                     std::to_string(resid) + ")");
  return model;
}

double hitting_time(const WalkModel& model, int i, int j) {
  const Eigen::Index n = model.stationary.size();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw_invalid("node id out of range: (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  if (i == j) return 0.0;
  return (model.fundamental(j, j) - model.fundamental(i, j)) / model.stationary[j];
}

HittingTimes hitting_times(const WalkModel& model) {
  const Eigen::Index n = model.stationary.size();
  HittingTimes h;
  h.values.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double zjj = model.fundamental(j, j);
    for (Eigen::Index i = 0; i < n; ++i)
      h.values(i, j) = i == j ? 0.0 : (zjj - model.fundamental(i, j)) / model.stationary[j];
  }
  return h;
}

double verify_one_step(const WalkModel& model, const HittingTimes& hitting) {
  const Eigen::Index n = model.stationary.size();
  // sum_{k != j} P(i,k) H(k,j) = (P H)(i,j) because H(j,j) = 0
  const Matrix expected = Matrix::Ones(n, n) + model.transition * hitting.values;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      worst = std::max(worst, std::abs(hitting.values(i, j) - expected(i, j)));
    }
  return worst;
}

MonteCarloEstimate monte_carlo_hitting(const WalkModel& model, int i, int j, int n_walks,
                                       std::uint64_t seed, long step_cap) {
  const Eigen::Index n = model.stationary.size();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw_invalid("node id out of range: (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  if (n_walks < 100) throw_invalid("need at least 100 walks; got " + std::to_string(n_walks));
  if (step_cap < 1) throw_invalid("step cap must be positive");
  MonteCarloEstimate est;
  if (i == j) return est;

  double sum = 0.0, sum_sq = 0.0;
  int done = 0;
  for (int walk = 0; walk < n_walks; ++walk) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(walk)));
    int state = i;
    long steps = 0;
    while (state != j && steps < step_cap) {
      const double r = rng.uniform();
      double acc = 0.0;
      int next = static_cast<int>(n) - 1;
      for (Eigen::Index k = 0; k < n; ++k) {
        acc += model.transition(state, k);
        if (r < acc) {
          next = static_cast<int>(k);
          break;
        }
      }
      state = next;
      ++steps;
    }
    if (state != j) {
      ++est.n_excluded;
      continue;
    }
    sum += static_cast<double>(steps);
    sum_sq += static_cast<double>(steps) * static_cast<double>(steps);
    ++done;
  }
  if (done == 0) throw_degenerate("every walk hit the step cap; no estimate available");
  est.mean = sum / done;
  if (done > 1) {
    const double var = std::max(0.0, (sum_sq - sum * sum / done) / (done - 1));
    est.standard_error = std::sqrt(var / done);
  }
  return est;
}

}  // namespace ctembed
