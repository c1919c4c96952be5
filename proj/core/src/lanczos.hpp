#pragma once

#include <cstdint>
#include <functional>

#include "ctembed/types.hpp"

namespace ctembed::detail {

struct LanczosResult {
  Vector eigenvalues;   // descending
  Matrix eigenvectors;  // matching orthonormal columns
};

// Top n_pairs eigenpairs of a symmetric operator on R^n via thick-restart
// Lanczos with full reorthogonalization. Start vector drawn from `seed`, so
// repeated calls are bit-reproducible. Throws on iteration-cap overrun.
LanczosResult lanczos_topk(const std::function<Vector(const Vector&)>& apply, int n, int n_pairs,
                           double tolerance, int max_restarts, std::uint64_t seed);

}  // namespace ctembed::detail
