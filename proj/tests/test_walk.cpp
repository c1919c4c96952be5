#include <Eigen/Dense>
#include <cmath>
#include <tuple>
#include <vector>

#include "ctembed/rng.hpp"
#include "ctembed/walk_oracle.hpp"
#include "doctest.h"

using namespace ctembed;
using EdgeList = std::vector<std::tuple<int, int, double>>;

namespace {

ConnectivityGraph path_graph(int n) {
  EdgeList edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1, 1.0);
  return ConnectivityGraph::from_edges(n, edges);
}

ConnectivityGraph cycle_graph(int n) {
  EdgeList edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n, 1.0);
  return ConnectivityGraph::from_edges(n, edges);
}

// First-step analysis: for target j, solve (I - P with row/col j removed) h = 1.
// Independent of the fundamental-matrix route.
Matrix hitting_reference(const Matrix& p) {
  const Eigen::Index n = p.rows();
  Matrix h = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Matrix sys = Matrix::Identity(n - 1, n - 1);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j) continue;
      Eigen::Index c = 0;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k == j) continue;
        sys(r, c) -= p(i, k);
        ++c;
      }
      ++r;
    }
    const Vector sol = sys.fullPivLu().solve(Vector::Ones(n - 1));
    r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j) continue;
      h(i, j) = sol[r++];
    }
  }
  return h;
}

}  // namespace

TEST_SUITE("walk") {
  TEST_CASE("three-node path has textbook hitting times") {
    const WalkModel model = build_walk_model(path_graph(3));
    CHECK((model.transition.rowwise().sum() - Vector::Ones(3)).cwiseAbs().maxCoeff() < 1e-15);
    Matrix expected(3, 3);
    expected << 0, 1, 4,
                3, 0, 3,
                4, 1, 0;
    const HittingTimes h = hitting_times(model);
    CHECK((h.values - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(hitting_time(model, 0, 2) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(hitting_time(model, 1, 1) == 0.0);
    CHECK(verify_one_step(model, h) < 1e-12);
  }

  TEST_CASE("cycle hitting times follow k(n-k)") {
    const WalkModel model = build_walk_model(cycle_graph(6));
    const HittingTimes h = hitting_times(model);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        const int k = std::min((j - i + 6) % 6, (i - j + 6) % 6);
        CHECK(h.values(i, j) == doctest::Approx(static_cast<double>(k * (6 - k))).epsilon(1e-12));
      }
    CHECK(verify_one_step(model, h) < 1e-12);
  }

  TEST_CASE("fundamental matrix agrees with first-step analysis on random graphs") {
    Rng rng(77);
    for (int trial = 0; trial < 8; ++trial) {
      const int n = 5 + static_cast<int>(rng.below(8));
      EdgeList edges;
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1, 0.1 + 0.9 * rng.uniform());
      for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j)
          if (rng.uniform() < 0.3) edges.emplace_back(i, j, 0.1 + 0.9 * rng.uniform());
      const ConnectivityGraph g = ConnectivityGraph::from_edges(n, edges);
      const WalkModel model = build_walk_model(g);
      const HittingTimes h = hitting_times(model);
      const Matrix ref = hitting_reference(model.transition);
      CHECK((h.values - ref).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(verify_one_step(model, h) < 1e-9);

      // fundamental-matrix identity Z (I - P + Pi) = I
      const Matrix sys = Matrix::Identity(n, n) - (model.transition - model.stationary_outer);
      CHECK((model.fundamental * sys - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("dense cap and id validation") {
    const ConnectivityGraph g = path_graph(4);
    CHECK_THROWS_WITH_AS(build_walk_model(g, 3), doctest::Contains("dense cap"), Error);
    const WalkModel model = build_walk_model(g);
    CHECK_THROWS_AS(hitting_time(model, 0, 4), Error);
    CHECK_THROWS_AS(hitting_time(model, -1, 0), Error);
  }

  TEST_CASE("monte carlo estimate brackets the exact value") {
    const WalkModel model = build_walk_model(path_graph(3));
    const MonteCarloEstimate est = monte_carlo_hitting(model, 0, 2, 20000, 123);
    CHECK(est.n_excluded == 0);
    CHECK(est.standard_error > 0.0);
    CHECK(std::abs(est.mean - 4.0) <= 3.0 * est.standard_error);
  }

  TEST_CASE("monte carlo is reproducible and seed-sensitive") {
    const WalkModel model = build_walk_model(cycle_graph(5));
    const MonteCarloEstimate a = monte_carlo_hitting(model, 0, 2, 5000, 9);
    const MonteCarloEstimate b = monte_carlo_hitting(model, 0, 2, 5000, 9);
    CHECK(a.mean == b.mean);
    CHECK(a.standard_error == b.standard_error);
    CHECK(a.n_excluded == b.n_excluded);
    const MonteCarloEstimate c = monte_carlo_hitting(model, 0, 2, 5000, 10);
    CHECK(c.mean != a.mean);
  }

  TEST_CASE("capped walks are excluded, never folded in") {
    const WalkModel model = build_walk_model(path_graph(3));
    // from node 0 the walk reaches node 2 in exactly two steps or not at all
    const MonteCarloEstimate est = monte_carlo_hitting(model, 0, 2, 2000, 5, 2);
    CHECK(est.n_excluded > 0);
    CHECK(est.n_excluded < 2000);
    CHECK(est.mean == 2.0);
    CHECK(est.standard_error == 0.0);
    // a one-step budget can never reach node 2
    CHECK_THROWS_WITH_AS(monte_carlo_hitting(model, 0, 2, 2000, 5, 1),
                         doctest::Contains("step cap"), Error);
  }

  TEST_CASE("monte carlo argument validation") {
    const WalkModel model = build_walk_model(path_graph(3));
    CHECK_THROWS_AS(monte_carlo_hitting(model, 0, 2, 99, 1), Error);
    CHECK_THROWS_AS(monte_carlo_hitting(model, 0, 3, 1000, 1), Error);
    CHECK_THROWS_AS(monte_carlo_hitting(model, 0, 2, 1000, 1, 0), Error);
    const MonteCarloEstimate self = monte_carlo_hitting(model, 1, 1, 1000, 1);
    CHECK(self.mean == 0.0);
  }
}
