#pragma once

#include <vector>

#include "ctembed/types.hpp"

namespace ctembed {

// Removes the least-squares line a + b*t from every row (t = 0..T-1).
TimeSeriesMatrix detrend_linear(const TimeSeriesMatrix& data);

// Subtracts the rank-n_modes best approximation (top singular triplets) from
// the matrix. n_modes = 0 returns the input unchanged.
TimeSeriesMatrix svd_denoise(const TimeSeriesMatrix& data, int n_modes);

// Averages windows of trial_len samples starting at each onset, per row.
TimeSeriesMatrix average_trials(const TimeSeriesMatrix& data, const std::vector<int>& onsets,
                                int trial_len);

}  // namespace ctembed
