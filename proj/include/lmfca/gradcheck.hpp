// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

// Central finite-difference oracle for the reverse-mode gradients. Always
// runs in double precision.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lmfca/autograd.hpp"

namespace lmfca {

struct GradCheckOptions {
  double step = 1e-5;
  // Coordinates checked per tensor; 0 checks every element. Sampled
  // coordinates are drawn without replacement from `seed`.
  std::size_t max_coords_per_tensor = 0;
  std::uint64_t seed = 0;
};

struct GradCheckResult {
  double relative_error = 0;  // ||analytic - numeric|| / max(||analytic||, ||numeric||)
  double max_abs_error = 0;
  std::size_t coords = 0;
};

/// `loss` rebuilds the scalar from the current values of `wrt` each call.
GradCheckResult check_gradients(const std::function<Var<double>()>& loss,
                                std::vector<Var<double>> wrt, const GradCheckOptions& options = {});

}  // namespace lmfca
