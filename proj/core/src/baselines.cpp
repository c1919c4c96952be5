#include "ctembed/baselines.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "ctembed/affinity_graph.hpp"
#include "ctembed/errors.hpp"

namespace ctembed {

namespace {

// Continued-fraction core of the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) return h;
  }
  throw_convergence("incomplete beta continued fraction did not settle");
}

void fix_column_signs(Matrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double a = std::abs(m(r, c));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if (m(arg, c) < 0) m.col(c) = -m.col(c);
  }
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0) || !(b > 0)) throw_invalid("beta parameters must be positive");
  if (std::isnan(x) || x < 0.0 || x > 1.0) throw_invalid("beta argument must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_survival(double t, int dof) {
  if (dof < 1) throw_invalid("degrees of freedom must be at least 1");
  if (std::isnan(t)) throw_invalid("t statistic is not a number");
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double nu = static_cast<double>(dof);
  const double tail = 0.5 * regularized_incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
  return t >= 0 ? tail : 1.0 - tail;
}

GlmResult glm_tmap(const TimeSeriesMatrix& data, const Vector& regressor, bool two_sided) {
  const Eigen::Index n = data.n_points();
  const Eigen::Index t_len = data.n_samples();
  if (t_len <= 2) throw_invalid("need more than 2 samples for a t-test");
  if (regressor.size() != t_len)
    throw_invalid("regressor length " + std::to_string(regressor.size()) +
                  " does not match sample count " + std::to_string(t_len));
  if (!regressor.allFinite()) throw_invalid("regressor has non-finite values");
  const Vector centered = regressor.array() - regressor.mean();
  const double sgg = centered.squaredNorm();
  if (sgg <= 0.0) throw_invalid("constant regressor: coefficient not identifiable");

  GlmResult result;
  result.dof = static_cast<int>(t_len) - 2;
  result.beta.resize(n);
  result.t_stat.resize(n);
  result.p_value.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::RowVectorXd row = data.values.row(i).array() - data.values.row(i).mean();
    const double beta = row.dot(centered) / sgg;
    const double rss = (row - beta * centered.transpose()).squaredNorm();
    const double se = std::sqrt(rss / result.dof / sgg);
    double t = 0.0;
    if (se > 0.0)
      t = beta / se;
    else if (beta != 0.0)
      t = std::copysign(std::numeric_limits<double>::infinity(), beta);
    result.beta[i] = beta;
    result.t_stat[i] = t;
    result.p_value[i] =
        two_sided ? 2.0 * student_t_survival(std::abs(t), result.dof)
                  : student_t_survival(t, result.dof);
  }
  return result;
}

Vector dale_hrf_regressor(const StimulusSeries& stimulus, double delta, double tau) {
  if (!(delta > 0) || !(tau > 0)) throw_invalid("response delay and width must be positive");
  if (stimulus.samples.size() < 1) throw_invalid("stimulus is empty");
  if (!(stimulus.tr_seconds > 0)) throw_invalid("repetition time must be positive");
  const Eigen::Index t_len = stimulus.samples.size();
  Vector kernel(t_len);
  for (Eigen::Index k = 0; k < t_len; ++k) {
    const double t = static_cast<double>(k) * stimulus.tr_seconds;
    if (t < delta) {
      kernel[k] = 0.0;
    } else {
      const double u = (t - delta) / tau;
      kernel[k] = u * u * std::exp(-u);
    }
  }
  Vector out = Vector::Zero(t_len);
  for (Eigen::Index n = 0; n < t_len; ++n)
    for (Eigen::Index m = 0; m <= n; ++m) out[n] += stimulus.samples[m] * kernel[n - m];
  return out;
}

Matrix pca_embed(const TimeSeriesMatrix& data, int n_dims) {
  const Eigen::Index n = data.n_points();
  const Eigen::Index t_len = data.n_samples();
  if (n_dims < 1 || n_dims > std::min(n, t_len))
    throw_invalid("component count must lie in [1, min(N, T)]; got " + std::to_string(n_dims));
  const Matrix centered = data.values.rowwise() - data.values.colwise().mean();
  Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinV);
  Matrix axes = svd.matrixV().leftCols(n_dims);
  fix_column_signs(axes);
  return centered * axes;
}

Matrix geodesic_distances(const TimeSeriesMatrix& data, int n_neighbors) {
  const Eigen::Index n = data.n_points();
  const auto lists = knn_neighbors(data, n_neighbors);
  // Union-symmetrized adjacency with Euclidean edge lengths.
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (const int j : lists[static_cast<std::size_t>(i)]) {
      const int a = std::min<int>(static_cast<int>(i), j);
      const int b = std::max<int>(static_cast<int>(i), j);
      auto& row = adj[static_cast<std::size_t>(a)];
      if (std::find_if(row.begin(), row.end(), [&](const auto& p) { return p.first == b; }) !=
          row.end())
        continue;
      const double d = (data.values.row(a) - data.values.row(b)).norm();
      row.emplace_back(b, d);
      adj[static_cast<std::size_t>(b)].emplace_back(a, d);
    }

  constexpr double inf = std::numeric_limits<double>::infinity();
  Matrix dist = Matrix::Constant(n, n, inf);
  using Entry = std::pair<double, int>;
  for (Eigen::Index s = 0; s < n; ++s) {
    auto row = dist.row(s);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    row[s] = 0.0;
    heap.emplace(0.0, static_cast<int>(s));
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > row[u]) continue;  // stale entry
      for (const auto& [v, w] : adj[static_cast<std::size_t>(u)]) {
        const double cand = d + w;
        if (cand < row[v]) {
          row[v] = cand;
          heap.emplace(cand, v);
        }
      }
    }
    if (!row.allFinite()) {
      const auto reachable =
          static_cast<long>((row.array() < inf).count());
      throw_degenerate("graph is disconnected: " + std::to_string(reachable) + " of " +
                       std::to_string(n) + " nodes reachable from node " + std::to_string(s));
    }
  }
  return dist;
}

Matrix classical_mds(const Matrix& distances, int n_dims) {
  const Eigen::Index n = distances.rows();
  if (distances.cols() != n) throw_invalid("distance matrix must be square");
  if (!distances.allFinite()) throw_invalid("distance matrix has non-finite entries");
  if ((distances - distances.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw_invalid("distance matrix must be symmetric");
  if (n_dims < 1 || n_dims >= n)
    throw_invalid("embedding dimension must lie in [1, N-1]; got " + std::to_string(n_dims));

  const Matrix sq = distances.array().square();
  const Matrix j = Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
  const Matrix b = -0.5 * j * sq * j;
  Eigen::SelfAdjointEigenSolver<Matrix> es(b);
  if (es.info() != Eigen::Success) throw_convergence("eigensolver failed on the centered matrix");

  Matrix coords(n, n_dims);
  const double scale = std::max(std::abs(es.eigenvalues()[n - 1]), 1.0);
  for (int k = 0; k < n_dims; ++k) {
    const double lambda = es.eigenvalues()[n - 1 - k];
    if (lambda < -1e-8 * scale)
      throw_degenerate("distances are not embeddable: negative spectrum at component " +
                       std::to_string(k + 1));
    coords.col(k) = es.eigenvectors().col(n - 1 - k) * std::sqrt(std::max(lambda, 0.0));
  }
  fix_column_signs(coords);
  return coords;
}

Matrix isomap_embed(const TimeSeriesMatrix& data, int n_neighbors, int n_dims) {
  return classical_mds(geodesic_distances(data, n_neighbors), n_dims);
}

RocCurve roc_curve(const Vector& scores, const std::vector<int>& truth) {
  const Eigen::Index n = scores.size();
  if (static_cast<Eigen::Index>(truth.size()) != n)
    throw_invalid("scores and truth disagree on length");
  if (!scores.allFinite()) throw_invalid("scores have non-finite values");
  long n_pos = 0, n_neg = 0;
  for (const int t : truth) {
    if (t != 0 && t != 1) throw_invalid("truth labels must be 0 or 1");
    (t == 1 ? n_pos : n_neg)++;
  }
  if (n_pos == 0 || n_neg == 0)
    throw_invalid("degenerate truth: need at least one positive and one negative");

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  long tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double thr = scores[order[i]];
    while (i < order.size() && scores[order[i]] == thr) {
      (truth[static_cast<std::size_t>(order[i])] == 1 ? tp : fp)++;
      ++i;
    }
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                            static_cast<double>(tp) / static_cast<double>(n_pos), thr});
  }
  return curve;
}

double roc_auc(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i)
    area += (curve.points[i + 1].fpr - curve.points[i].fpr) *
            (curve.points[i + 1].tpr + curve.points[i].tpr) / 2.0;
  return area;
}

double tpr_at_fpr(const RocCurve& curve, double fpr) {
  if (std::isnan(fpr) || fpr < 0.0 || fpr > 1.0)
    throw_invalid("false-positive rate must lie in [0, 1]");
  if (curve.points.size() < 2) throw_invalid("curve has fewer than 2 points");
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
    const RocPoint& a = curve.points[i];
    const RocPoint& b = curve.points[i + 1];
    if (fpr < a.fpr || fpr > b.fpr) continue;
    if (b.fpr == a.fpr)
      best = std::max(best, std::max(a.tpr, b.tpr));
    else
      best = std::max(best, a.tpr + (b.tpr - a.tpr) * (fpr - a.fpr) / (b.fpr - a.fpr));
  }
  return best;
}

std::vector<double> average_tpr(const std::vector<RocCurve>& curves,
                                const std::vector<double>& fpr_grid) {
  if (curves.empty()) throw_invalid("no curves to average");
  std::vector<double> out(fpr_grid.size(), 0.0);
  for (const RocCurve& c : curves)
    for (std::size_t g = 0; g < fpr_grid.size(); ++g) out[g] += tpr_at_fpr(c, fpr_grid[g]);
  for (double& v : out) v /= static_cast<double>(curves.size());
  return out;
}

}  // namespace ctembed
