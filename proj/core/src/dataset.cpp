#include "ctembed/dataset.hpp"

#include <Eigen/SVD>
#include <string>

namespace ctembed {

TimeSeriesMatrix detrend_linear(const TimeSeriesMatrix& data) {
  const Eigen::Index t_len = data.n_samples();
  if (t_len < 3) throw_invalid("detrend needs at least 3 samples, got " + std::to_string(t_len));
  Vector t = Vector::LinSpaced(t_len, 0.0, static_cast<double>(t_len - 1));
  const double t_mean = t.mean();
  t.array() -= t_mean;
  const double sxx = t.squaredNorm();

  Matrix out = data.values;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double x_mean = out.row(i).mean();
    const double slope = (out.row(i) * t)(0) / sxx;
    out.row(i).array() -= x_mean + slope * t.transpose().array();
  }
  return TimeSeriesMatrix(std::move(out));
}

TimeSeriesMatrix svd_denoise(const TimeSeriesMatrix& data, int n_modes) {
  const Eigen::Index limit = std::min(data.n_points(), data.n_samples());
  if (n_modes < 0 || n_modes >= limit)
    throw_invalid("svd_denoise mode count must lie in [0, min(N,T)), got " +
                  std::to_string(n_modes));
  if (n_modes == 0) return data;
  Eigen::BDCSVD<Matrix> svd(data.values, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Matrix out = data.values;
  for (int k = 0; k < n_modes; ++k)
    out.noalias() -= svd.singularValues()[k] * svd.matrixU().col(k) * svd.matrixV().col(k).transpose();
  return TimeSeriesMatrix(std::move(out));
}

TimeSeriesMatrix average_trials(const TimeSeriesMatrix& data, const std::vector<int>& onsets,
                                int trial_len) {
  if (onsets.empty()) throw_invalid("average_trials: empty onset list");
  if (trial_len < 2) throw_invalid("average_trials: trial length must be at least 2");
  for (const int onset : onsets) {
    if (onset < 0 || onset + trial_len > data.n_samples())
      throw_invalid("average_trials: window [" + std::to_string(onset) + ", " +
                    std::to_string(onset + trial_len) + ") exceeds " +
                    std::to_string(data.n_samples()) + " samples");
  }
  Matrix out = Matrix::Zero(data.n_points(), trial_len);
  for (const int onset : onsets) out += data.values.middleCols(onset, trial_len);
  out /= static_cast<double>(onsets.size());
  return TimeSeriesMatrix(std::move(out));
}

}  // namespace ctembed
