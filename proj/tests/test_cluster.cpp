#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "ctembed/cluster.hpp"
#include "ctembed/rng.hpp"
#include "doctest.h"

using namespace ctembed;

namespace {

Embedding make_embedding(const Matrix& coords) {
  Embedding e;
  e.dim = static_cast<int>(coords.cols());
  e.coords = coords;
  e.eigenvalue_gap = 0.1;
  return e;
}

// Directions on the unit circle at the given angles, scaled by radius.
Matrix ring_points(const std::vector<double>& angles, double radius) {
  Matrix m(static_cast<Eigen::Index>(angles.size()), 2);
  for (std::size_t i = 0; i < angles.size(); ++i) {
    m(static_cast<Eigen::Index>(i), 0) = radius * std::cos(angles[i]);
    m(static_cast<Eigen::Index>(i), 1) = radius * std::sin(angles[i]);
  }
  return m;
}

}  // namespace

TEST_SUITE("cluster") {
  TEST_CASE("background split uses the nearest-rank quantile") {
    Matrix coords(10, 2);
    for (int i = 0; i < 10; ++i) {
      coords(i, 0) = 0.1 * (i + 1);
      coords(i, 1) = 0.0;
    }
    const BackgroundSplit split = split_background(make_embedding(coords), 0.5);
    CHECK(split.threshold == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(split.background.size() == 5);
    CHECK(split.foreground.size() == 5);
    CHECK_FALSE(split.degenerate);

    const BackgroundSplit low = split_background(make_embedding(coords), 0.05);
    CHECK(low.background.size() == 1);  // rank ceil(0.5) - 1 = 0

    CHECK_THROWS_AS(split_background(make_embedding(coords), 0.0), Error);
    CHECK_THROWS_AS(split_background(make_embedding(coords), 1.0), Error);
  }

  TEST_CASE("identical radii push everything into the background") {
    const Matrix coords = ring_points({0.1, 0.9, 1.7, 2.5, 3.3}, 2.0);
    const BackgroundSplit split = split_background(make_embedding(coords), 0.5);
    CHECK(split.degenerate);
    CHECK(split.foreground.empty());
    CHECK(split.background.size() == 5);
  }

  TEST_CASE("angular k-means separates well-separated direction bundles") {
    std::vector<double> angles;
    for (int i = 0; i < 12; ++i) angles.push_back(0.0 + 0.02 * i);         // bundle A
    for (int i = 0; i < 12; ++i) angles.push_back(1.570796 + 0.02 * i);    // bundle B, 90 deg away
    const Matrix pts = ring_points(angles, 3.0);
    const AngularKMeansResult res = angular_kmeans(pts, 2, 42);
    const std::set<int> a(res.labels.begin(), res.labels.begin() + 12);
    const std::set<int> b(res.labels.begin() + 12, res.labels.end());
    CHECK(a.size() == 1);
    CHECK(b.size() == 1);
    CHECK(*a.begin() != *b.begin());
    CHECK(res.objective < 12 * 0.25);  // every point within a quarter radian
    for (int c = 0; c < 2; ++c)
      CHECK(res.centroids.row(c).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("k-means is deterministic per seed and equivariant under reordering") {
    Rng rng(3);
    Matrix pts(40, 2);
    for (int i = 0; i < 40; ++i) {
      pts(i, 0) = rng.normal();
      pts(i, 1) = rng.normal();
    }
    const AngularKMeansResult a = angular_kmeans(pts, 3, 7);
    const AngularKMeansResult b = angular_kmeans(pts, 3, 7);
    CHECK(a.labels == b.labels);
    CHECK(a.objective == b.objective);
    CHECK(a.centroids == b.centroids);

    // reverse the rows; labels must follow the permutation exactly
    Matrix rev(40, 2);
    for (int i = 0; i < 40; ++i) rev.row(i) = pts.row(39 - i);
    const AngularKMeansResult c = angular_kmeans(rev, 3, 7);
    CHECK(c.objective == a.objective);
    CHECK(c.centroids == a.centroids);
    for (int i = 0; i < 40; ++i) CHECK(c.labels[static_cast<std::size_t>(i)] == a.labels[static_cast<std::size_t>(39 - i)]);
  }

  TEST_CASE("k-means argument validation") {
    const Matrix pts = ring_points({0.0, 1.0, 2.0}, 1.0);
    CHECK_THROWS_AS(angular_kmeans(pts, 0, 1), Error);
    CHECK_THROWS_AS(angular_kmeans(pts, 4, 1), Error);
    CHECK_THROWS_AS(angular_kmeans(pts, 2, 1, 0), Error);
    Matrix with_zero = pts;
    with_zero.row(1).setZero();
    CHECK_THROWS_WITH_AS(angular_kmeans(with_zero, 2, 1), doctest::Contains("zero vector"),
                         Error);
    // all points on one direction cannot seed a second cluster
    Matrix same(5, 2);
    for (int i = 0; i < 5; ++i) {
      same(i, 0) = 1.0 + i;
      same(i, 1) = 0.0;
    }
    CHECK_THROWS_WITH_AS(angular_kmeans(same, 2, 1), doctest::Contains("distinct directions"),
                         Error);
  }

  TEST_CASE("embedding pipeline labels a two-armed star") {
    Rng rng(17);
    const int n_bg = 30, n_arm = 10;
    Matrix coords(n_bg + 2 * n_arm, 2);
    for (int i = 0; i < n_bg; ++i) {
      const double a = rng.uniform() * 6.283185307179586;
      const double r = 0.05 + 0.05 * rng.uniform();
      coords(i, 0) = r * std::cos(a);
      coords(i, 1) = r * std::sin(a);
    }
    for (int i = 0; i < n_arm; ++i) {
      coords(n_bg + i, 0) = 1.0 + 0.1 * i;          // +x arm
      coords(n_bg + i, 1) = 0.02 * rng.normal();
      coords(n_bg + n_arm + i, 0) = 0.02 * rng.normal();
      coords(n_bg + n_arm + i, 1) = 1.0 + 0.1 * i;  // +y arm
    }
    ClusterConfig cfg;
    cfg.n_clusters = 3;
    cfg.radius_quantile = static_cast<double>(n_bg) / (n_bg + 2 * n_arm);
    cfg.seed = 11;
    const ClusterLabels out = cluster_embedding(make_embedding(coords), cfg);
    REQUIRE(out.labels.size() == static_cast<std::size_t>(n_bg + 2 * n_arm));
    for (int i = 0; i < n_bg; ++i) CHECK(out.labels[static_cast<std::size_t>(i)] == 0);
    const std::set<int> armx(out.labels.begin() + n_bg, out.labels.begin() + n_bg + n_arm);
    const std::set<int> army(out.labels.begin() + n_bg + n_arm, out.labels.end());
    REQUIRE(armx.size() == 1);
    REQUIRE(army.size() == 1);
    CHECK(*armx.begin() != *army.begin());
    CHECK(*armx.begin() > 0);
    CHECK(*army.begin() > 0);
    CHECK(out.sizes[0] == n_bg);
    CHECK(out.sizes[static_cast<std::size_t>(*armx.begin())] == n_arm);
    CHECK(out.sizes[static_cast<std::size_t>(*army.begin())] == n_arm);
  }

  TEST_CASE("undersized clusters merge into their nearest neighbor") {
    Rng rng(19);
    const int n_bg = 27, n_big = 20, n_tiny = 3;
    Matrix coords(n_bg + n_big + n_tiny, 2);
    for (int i = 0; i < n_bg; ++i) {
      const double a = rng.uniform() * 6.283185307179586;
      coords(i, 0) = 0.05 * std::cos(a);
      coords(i, 1) = 0.05 * std::sin(a);
    }
    for (int i = 0; i < n_big; ++i) {
      coords(n_bg + i, 0) = 1.0 + 0.05 * i;
      coords(n_bg + i, 1) = 0.01 * rng.normal();
    }
    for (int i = 0; i < n_tiny; ++i) {
      coords(n_bg + n_big + i, 0) = 0.01 * rng.normal();
      coords(n_bg + n_big + i, 1) = 1.0 + 0.05 * i;
    }
    ClusterConfig cfg;
    cfg.n_clusters = 3;
    cfg.radius_quantile = static_cast<double>(n_bg) / (n_bg + n_big + n_tiny);
    cfg.min_cluster_fraction = 0.1;  // 5 points; the 3-point arm is undersized
    cfg.seed = 2;
    const ClusterLabels out = cluster_embedding(make_embedding(coords), cfg);
    // both arms collapse into a single structure label
    std::set<int> fg_labels;
    for (int i = n_bg; i < n_bg + n_big + n_tiny; ++i)
      fg_labels.insert(out.labels[static_cast<std::size_t>(i)]);
    CHECK(fg_labels == std::set<int>{1});
    CHECK(out.sizes[1] == n_big + n_tiny);
  }

  TEST_CASE("near-zero foreground points are reassigned to the background") {
    Matrix coords = Matrix::Zero(20, 2);
    coords.row(0) << 0.0, 0.0;
    for (int i = 1; i < 4; ++i) coords.row(i) << 1e-16, 0.0;
    for (int i = 4; i < 20; ++i) coords.row(i) << 1.0 + 0.1 * i, 0.5;
    ClusterConfig cfg;
    cfg.n_clusters = 2;
    cfg.radius_quantile = 0.02;  // threshold lands on the exact-zero point
    const ClusterLabels out = cluster_embedding(make_embedding(coords), cfg);
    for (int i = 0; i < 4; ++i) CHECK(out.labels[static_cast<std::size_t>(i)] == 0);
    for (int i = 4; i < 20; ++i) CHECK(out.labels[static_cast<std::size_t>(i)] == 1);
  }

  TEST_CASE("embedding pipeline validation") {
    const Matrix coords = ring_points({0.0, 0.5, 1.0, 1.5}, 1.0);
    ClusterConfig cfg;
    cfg.n_clusters = 1;
    CHECK_THROWS_AS(cluster_embedding(make_embedding(coords), cfg), Error);
    cfg.n_clusters = 2;
    cfg.min_cluster_fraction = 1.0;
    CHECK_THROWS_AS(cluster_embedding(make_embedding(coords), cfg), Error);
    cfg.min_cluster_fraction = 0.01;
    cfg.n_restarts = 0;
    CHECK_THROWS_AS(cluster_embedding(make_embedding(coords), cfg), Error);
    cfg.n_restarts = 20;
    // equal radii: quantile split sends everything to the background
    CHECK_THROWS_WITH_AS(cluster_embedding(make_embedding(coords), cfg),
                         doctest::Contains("no foreground"), Error);
  }
}
