#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ctembed/errors.hpp"

namespace ctembed {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// N time series of T samples each, rows are points. Finite values only,
// N >= 2 and T >= 2.
struct TimeSeriesMatrix {
  Matrix values;

  TimeSeriesMatrix() = default;
  explicit TimeSeriesMatrix(Matrix m) : values(std::move(m)) { validate(); }

  Eigen::Index n_points() const { return values.rows(); }
  Eigen::Index n_samples() const { return values.cols(); }

  void validate() const {
    if (values.rows() < 2 || values.cols() < 2)
      throw_invalid("time-series matrix needs at least 2 points and 2 samples, got " +
                    std::to_string(values.rows()) + "x" + std::to_string(values.cols()));
    if (!values.allFinite())
      throw_invalid("time-series matrix contains a non-finite value");
  }
};

// Maps row indices of a dataset back onto grid positions.
struct VoxelSite {
  int x = 0;
  int y = 0;
  int slice = 0;
};

struct VoxelMask {
  std::vector<int> index;       // row index per entry
  std::vector<VoxelSite> site;  // grid position per entry

  std::size_t size() const { return index.size(); }
};

}  // namespace ctembed
