#pragma once

#include <cstdint>

#include "ctembed/affinity_graph.hpp"
#include "ctembed/types.hpp"

namespace ctembed {

// Dense random-walk model: row-stochastic transition matrix, rank-one
// stationary projector, and the fundamental matrix Z = (I - (P - Pi))^{-1}.
// Exact ground truth for hitting/commute times at small scale.
struct WalkModel {
  Matrix transition;        // P = D^{-1} W
  Matrix stationary_outer;  // every row equals pi'
  Matrix fundamental;       // Z
  Vector stationary;        // pi
};

struct HittingTimes {
  Matrix values;  // values(i, j) = expected steps from i to first arrival at j
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  int n_excluded = 0;  // walks that hit the step cap and were dropped
};

WalkModel build_walk_model(const ConnectivityGraph& graph, int dense_cap = 2000);

// E_i[T_j] = (Z(j,j) - Z(i,j)) / pi_j; zero on the diagonal.
double hitting_time(const WalkModel& model, int i, int j);

HittingTimes hitting_times(const WalkModel& model);

// Max residual of the one-step recurrence E_i[T_j] = 1 + sum_{k != j} P(i,k) E_k[T_j]
// over all i != j. Small residual certifies H and Z agree.
double verify_one_step(const WalkModel& model, const HittingTimes& hitting);

// Empirical first-passage time from simulated walks. Each walk runs on its own
// seed derived from (seed, walk index), so results are independent of ordering.
MonteCarloEstimate monte_carlo_hitting(const WalkModel& model, int i, int j, int n_walks,
                                       std::uint64_t seed, long step_cap = 1000000);

}  // namespace ctembed
