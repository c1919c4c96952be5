#include "ctembed/affinity_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

namespace ctembed {

namespace {

struct NeighborScan {
  std::vector<std::vector<int>> lists;        // k nearest per row
  std::vector<std::vector<double>> sq_dists;  // matching squared distances
  double min_sq_dist = std::numeric_limits<double>::infinity();
  int min_i = -1, min_j = -1;
};

// One pass over all row pairs: exact squared distances, k smallest per row
// (ties toward the smaller index), global minimum pair.
NeighborScan scan_neighbors(const Matrix& x, int k) {
  const Eigen::Index n = x.rows();
  NeighborScan scan;
  scan.lists.resize(static_cast<std::size_t>(n));
  scan.sq_dists.resize(static_cast<std::size_t>(n));
  std::vector<double> d2(static_cast<std::size_t>(n));
  std::vector<int> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) d2[static_cast<std::size_t>(j)] = (x.row(i) - x.row(j)).squaredNorm();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (d2[static_cast<std::size_t>(j)] < scan.min_sq_dist) {
        scan.min_sq_dist = d2[static_cast<std::size_t>(j)];
        scan.min_i = static_cast<int>(i);
        scan.min_j = static_cast<int>(j);
      }
    }
    order.clear();
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) order.push_back(static_cast<int>(j));
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](int a, int b) {
      return std::tie(d2[static_cast<std::size_t>(a)], a) < std::tie(d2[static_cast<std::size_t>(b)], b);
    });
    auto& list = scan.lists[static_cast<std::size_t>(i)];
    auto& dist = scan.sq_dists[static_cast<std::size_t>(i)];
    list.assign(order.begin(), order.begin() + k);
    dist.resize(static_cast<std::size_t>(k));
    for (int m = 0; m < k; ++m) dist[static_cast<std::size_t>(m)] = d2[static_cast<std::size_t>(list[static_cast<std::size_t>(m)])];
  }
  return scan;
}

void check_neighbor_count(Eigen::Index n, int k) {
  if (k < 1 || k >= n)
    throw_invalid("neighbor count must lie in [1, N-1]; got " + std::to_string(k) + " for N = " +
                  std::to_string(n));
}

std::string component_size_list(const std::vector<int>& sizes) {
  std::string s;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(sizes[i]);
  }
  return s;
}

// Assembles the symmetric graph from an undirected edge map and validates
// connectivity, reporting component sizes on failure.
ConnectivityGraph assemble(Eigen::Index n, const std::vector<std::tuple<int, int, double>>& edges,
                           double sigma) {
  ConnectivityGraph g;
  g.sigma = sigma;
  g.neighborhoods.assign(static_cast<std::size_t>(n), {});
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(edges.size() * 2);
  for (const auto& [i, j, w] : edges) {
    triplets.emplace_back(i, j, w);
    triplets.emplace_back(j, i, w);
    g.neighborhoods[static_cast<std::size_t>(i)].push_back(j);
    g.neighborhoods[static_cast<std::size_t>(j)].push_back(i);
  }
  for (auto& nb : g.neighborhoods) std::sort(nb.begin(), nb.end());
  g.weights.resize(n, n);
  g.weights.setFromTriplets(triplets.begin(), triplets.end());
  g.degrees = g.weights * Vector::Ones(n);

  // BFS connectivity
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<int> sizes;
  std::vector<int> queue;
  for (Eigen::Index s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int c = static_cast<int>(sizes.size());
    sizes.push_back(0);
    queue.assign(1, static_cast<int>(s));
    comp[static_cast<std::size_t>(s)] = c;
    while (!queue.empty()) {
      const int u = queue.back();
      queue.pop_back();
      ++sizes[static_cast<std::size_t>(c)];
      for (const int v : g.neighborhoods[static_cast<std::size_t>(u)]) {
        if (comp[static_cast<std::size_t>(v)] < 0) {
          comp[static_cast<std::size_t>(v)] = c;
          queue.push_back(v);
        }
      }
    }
  }
  if (sizes.size() > 1)
    throw_degenerate("graph is disconnected: component sizes " + component_size_list(sizes));
  return g;
}

}  // namespace

std::vector<std::vector<int>> knn_neighbors(const TimeSeriesMatrix& data, int n_neighbors) {
  check_neighbor_count(data.n_points(), n_neighbors);
  return scan_neighbors(data.values, n_neighbors).lists;
}

double sigma_heuristic(const TimeSeriesMatrix& data, double multiplier) {
  if (!(multiplier > 0.0) || multiplier > 5.0)
    throw_invalid("sigma multiplier must lie in (0, 5]; got " + std::to_string(multiplier));
  const Matrix& x = data.values;
  double best = std::numeric_limits<double>::infinity();
  int bi = -1, bj = -1;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = i + 1; j < x.rows(); ++j) {
      const double d2 = (x.row(i) - x.row(j)).squaredNorm();
      if (d2 < best) {
        best = d2;
        bi = static_cast<int>(i);
        bj = static_cast<int>(j);
      }
    }
  if (best <= 0.0)
    throw_degenerate("duplicate points: rows " + std::to_string(bi) + " and " + std::to_string(bj) +
                     " coincide, the distance heuristic is undefined");
  return multiplier * std::sqrt(best);
}

ConnectivityGraph build_graph(const TimeSeriesMatrix& data, const GraphConfig& config) {
  const Eigen::Index n = data.n_points();
  check_neighbor_count(n, config.n_neighbors);
  if (!config.sigma && (!(config.sigma_multiplier > 0.0) || config.sigma_multiplier > 5.0))
    throw_invalid("sigma multiplier must lie in (0, 5]; got " +
                  std::to_string(config.sigma_multiplier));
  if (config.sigma && !(*config.sigma > 0.0)) throw_invalid("explicit sigma must be positive");

  const NeighborScan scan = scan_neighbors(data.values, config.n_neighbors);
  double sigma = 0.0;
  if (config.sigma) {
    sigma = *config.sigma;
  } else {
    if (scan.min_sq_dist <= 0.0)
      throw_degenerate("duplicate points: rows " + std::to_string(scan.min_i) + " and " +
                       std::to_string(scan.min_j) +
                       " coincide, the distance heuristic is undefined");
    sigma = config.sigma_multiplier * std::sqrt(scan.min_sq_dist);
  }

  // kNN union: keep each undirected pair once, with its squared distance.
  std::vector<std::tuple<int, int, double>> edges;
  std::vector<std::vector<std::pair<int, double>>> seen(static_cast<std::size_t>(n));
  const double inv_s2 = 1.0 / (sigma * sigma);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& list = scan.lists[static_cast<std::size_t>(i)];
    const auto& dist = scan.sq_dists[static_cast<std::size_t>(i)];
    for (std::size_t m = 0; m < list.size(); ++m) {
      const int a = std::min<int>(static_cast<int>(i), list[m]);
      const int b = std::max<int>(static_cast<int>(i), list[m]);
      auto& row = seen[static_cast<std::size_t>(a)];
      if (std::find_if(row.begin(), row.end(), [&](const auto& p) { return p.first == b; }) !=
          row.end())
        continue;
      row.emplace_back(b, dist[m]);
      double w = std::exp(-dist[m] * inv_s2);
      if (w < std::numeric_limits<double>::min()) w = std::numeric_limits<double>::min();
      edges.emplace_back(a, b, w);
    }
  }
  return assemble(n, edges, sigma);
}

ConnectivityGraph ConnectivityGraph::from_edges(
    int n_nodes, const std::vector<std::tuple<int, int, double>>& edges) {
  if (n_nodes < 2) throw_invalid("graph needs at least 2 nodes");
  std::vector<std::tuple<int, int, double>> undirected;
  undirected.reserve(edges.size());
  std::vector<std::vector<int>> seen(static_cast<std::size_t>(n_nodes));
  for (const auto& [i, j, w] : edges) {
    if (i < 0 || j < 0 || i >= n_nodes || j >= n_nodes)
      throw_invalid("edge endpoint out of range: (" + std::to_string(i) + ", " + std::to_string(j) +
                    ")");
    if (i == j) throw_invalid("self-loop at node " + std::to_string(i));
    if (!(w > 0.0) || w > 1.0)
      throw_invalid("edge weight must lie in (0, 1]; got " + std::to_string(w));
    const int a = std::min(i, j), b = std::max(i, j);
    auto& row = seen[static_cast<std::size_t>(a)];
    if (std::find(row.begin(), row.end(), b) != row.end())
      throw_invalid("duplicate edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    row.push_back(b);
    undirected.emplace_back(a, b, w);
  }
  return assemble(n_nodes, undirected, 0.0);
}

ClusteringCoefficients clustering_coefficients(const ConnectivityGraph& graph) {
  const Eigen::Index n = graph.size();
  ClusteringCoefficients out;
  out.per_node = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& nb = graph.neighborhoods[static_cast<std::size_t>(i)];
    const std::size_t k = nb.size();
    if (k < 2) continue;  // convention: coefficient 0 below two neighbors
    int links = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        const auto& na = graph.neighborhoods[static_cast<std::size_t>(nb[a])];
        if (std::binary_search(na.begin(), na.end(), nb[b])) ++links;
      }
    out.per_node[i] = 2.0 * links / (static_cast<double>(k) * (static_cast<double>(k) - 1.0));
  }
  out.mean = out.per_node.mean();
  return out;
}

}  // namespace ctembed
