#pragma once

#include <cstdint>
#include <vector>

#include "ctembed/affinity_graph.hpp"
#include "ctembed/types.hpp"

namespace ctembed {

// Top eigenpairs of the symmetric normalized affinity S = D^{-1/2} W D^{-1/2},
// plus the stationary distribution of the induced random walk.
struct SpectralDecomposition {
  Vector eigenvalues;   // descending; leading value is 1 for a connected graph
  Matrix eigenvectors;  // orthonormal columns, largest-|entry| sign convention
  Vector stationary;    // pi_i = d_i / sum of all degrees
  bool degenerate_gap = false;  // some adjacent eigenvalue gap below 1e-10

  int n_pairs() const { return static_cast<int>(eigenvalues.size()); }
};

struct Embedding {
  int dim = 0;
  Matrix coords;  // N x dim, row i = psi(x_i)
  double eigenvalue_gap = 0.0;  // lambda_1 - lambda_2
};

struct ResidualCurve {
  std::vector<int> region;
  std::vector<double> values;  // relative residual energy for K = 1..K_max
};

struct EigensolverOptions {
  double tolerance = 1e-12;
  int max_restarts = 400;
  std::uint64_t seed = 0x00C0FFEEu;  // start-vector seed; fixed for reproducibility
};

// Computes the top n_pairs eigenpairs of S. Small problems (or requests for
// most of the spectrum) use a dense solver; larger ones a restarted Lanczos
// iteration with full reorthogonalization.
SpectralDecomposition decompose(const ConnectivityGraph& graph, int n_pairs,
                                const EigensolverOptions& options = {});

// Commute-time coordinates: psi(x_i)_k = phi_{k+1}(i) / (sqrt(pi_i) * sqrt(1 - lambda_{k+1})).
// The leading (constant-direction) eigenvector carries no information and is skipped.
Embedding embed(const SpectralDecomposition& dec, int n_dims);

// Spectral commute distance sum_{k=2}^{n_terms} (phi_k(i)/sqrt(pi_i) - phi_k(j)/sqrt(pi_j))^2 / (1-lambda_k).
// With n_terms = N this equals the exact commute time of the random walk.
double commute_distance(const SpectralDecomposition& dec, int i, int j, int n_terms);

// Relative residual energy of expanding each time-scan of X in the first K
// eigenvectors, averaged over time then over the region, for K = 1..K_max.
ResidualCurve residual_curve(const TimeSeriesMatrix& data, const SpectralDecomposition& dec,
                             const std::vector<int>& region, int k_max);

// Knee rule: per curve, the smallest K whose forward drop falls below theta
// times the largest single-step drop; the result is the max over curves.
int select_dimension(const std::vector<ResidualCurve>& curves, double theta = 0.1);

}  // namespace ctembed
