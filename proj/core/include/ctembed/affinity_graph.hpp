#pragma once

#include <Eigen/SparseCore>
#include <optional>
#include <vector>

#include "ctembed/types.hpp"

namespace ctembed {

struct GraphConfig {
  int n_neighbors = 0;              // required, >= 1
  double sigma_multiplier = 2.0;    // kernel width as a multiple of the min pairwise distance
  std::optional<double> sigma;      // explicit kernel width; overrides the multiplier
};

// Symmetric kNN-union graph with Gaussian edge weights. Always connected:
// construction fails otherwise.
struct ConnectivityGraph {
  Eigen::SparseMatrix<double> weights;          // N x N, symmetric, zero diagonal
  Vector degrees;                               // row sums, strictly positive
  std::vector<std::vector<int>> neighborhoods;  // sorted adjacency lists
  double sigma = 0.0;

  Eigen::Index size() const { return weights.rows(); }
  double volume() const { return degrees.sum(); }

  // Builds a graph directly from an undirected edge list (i, j, weight in
  // (0,1]); used by oracle suites that need arbitrary seeded topologies.
  static ConnectivityGraph from_edges(int n_nodes,
                                      const std::vector<std::tuple<int, int, double>>& edges);
};

// Directed k-nearest-neighbor lists under Euclidean distance. Ties broken
// toward the smaller row index.
std::vector<std::vector<int>> knn_neighbors(const TimeSeriesMatrix& data, int n_neighbors);

// multiplier times the minimum pairwise distance; duplicates are an error.
double sigma_heuristic(const TimeSeriesMatrix& data, double multiplier);

ConnectivityGraph build_graph(const TimeSeriesMatrix& data, const GraphConfig& config);

struct ClusteringCoefficients {
  Vector per_node;
  double mean = 0.0;
};

ClusteringCoefficients clustering_coefficients(const ConnectivityGraph& graph);

}  // namespace ctembed
