// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace lmfca {

GradCheckResult check_gradients(const std::function<Var<double>()>& loss,
                                std::vector<Var<double>> wrt, const GradCheckOptions& options) {
  for (auto& v : wrt) {
    require(v.requires_grad(), "check_gradients: inputs must require gradients");
    v.zero_grad();
  }
  backward(loss());

  std::mt19937_64 rng(options.seed);
  double diff_sq = 0, ana_sq = 0, num_sq = 0;
  GradCheckResult result;
  for (auto& v : wrt) {
    const std::size_t n = v.value().size();
    std::vector<std::size_t> coords(n);
    std::iota(coords.begin(), coords.end(), 0);
    if (options.max_coords_per_tensor && n > options.max_coords_per_tensor) {
      std::shuffle(coords.begin(), coords.end(), rng);
      coords.resize(options.max_coords_per_tensor);
    }
    for (std::size_t i : coords) {
      double& x = v.mutable_value()[i];
      const double saved = x;
      x = saved + options.step;
      const double up = loss().value()[0];
      x = saved - options.step;
      const double down = loss().value()[0];
      x = saved;
      const double numeric = (up - down) / (2 * options.step);
      const double analytic = v.grad()[i];
      diff_sq += (analytic - numeric) * (analytic - numeric);
      ana_sq += analytic * analytic;
      num_sq += numeric * numeric;
      result.max_abs_error = std::max(result.max_abs_error, std::abs(analytic - numeric));
      ++result.coords;
    }
  }
  const double denom = std::max({std::sqrt(ana_sq), std::sqrt(num_sq), 1e-300});
  result.relative_error = (ana_sq == 0 && num_sq == 0) ? 0.0 : std::sqrt(diff_sq) / denom;
  return result;
}

}  // namespace lmfca
