#pragma once

#include <vector>

#include "ctembed/phantom.hpp"
#include "ctembed/types.hpp"

namespace ctembed {

struct GlmResult {
  Vector beta;
  Vector t_stat;
  Vector p_value;  // one-sided by default: probability of a larger t under the null
  int dof = 0;     // samples minus intercept and regressor
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // fpr non-decreasing, (0,0) to (1,1)
};

// Per-row ordinary least squares on [intercept, regressor] with a Student
// t-test on the regressor coefficient.
GlmResult glm_tmap(const TimeSeriesMatrix& data, const Vector& regressor, bool two_sided = false);

// Regularized incomplete beta I_x(a, b), evaluated by continued fraction.
// Exposed for direct validation against tabulated values.
double regularized_incomplete_beta(double a, double b, double x);

// P(T > t) for a Student variable with `dof` degrees of freedom.
double student_t_survival(double t, int dof);

// Quadratic-rise, exponential-decay response ((t-delta)/tau)^2 exp(-(t-delta)/tau)
// for t >= delta, convolved with the stimulus.
Vector dale_hrf_regressor(const StimulusSeries& stimulus, double delta = 2.5, double tau = 1.5);

// Projection onto the top principal axes of the mean-row-centered data, with
// the same deterministic sign convention as the spectral embedding.
Matrix pca_embed(const TimeSeriesMatrix& data, int n_dims);

// All-pairs shortest-path distances along a union kNN graph whose edge
// lengths are Euclidean distances.
Matrix geodesic_distances(const TimeSeriesMatrix& data, int n_neighbors);

// Classical multidimensional scaling of a symmetric distance matrix.
Matrix classical_mds(const Matrix& distances, int n_dims);

Matrix isomap_embed(const TimeSeriesMatrix& data, int n_neighbors, int n_dims);

// Threshold sweep over scores against binary truth.
RocCurve roc_curve(const Vector& scores, const std::vector<int>& truth);

double roc_auc(const RocCurve& curve);

// TPR of the curve's polyline at a fixed FPR; vertical segments contribute
// their upper end.
double tpr_at_fpr(const RocCurve& curve, double fpr);

// Vertical average of several curves on a common FPR grid.
std::vector<double> average_tpr(const std::vector<RocCurve>& curves,
                                const std::vector<double>& fpr_grid);

}  // namespace ctembed
