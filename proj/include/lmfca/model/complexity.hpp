// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

// Static multiply-accumulate and FLOP count of one forward pass.

#pragma once

#include <string>
#include <vector>

#include "lmfca/model/config.hpp"

namespace lmfca::model {

struct LayerCost {
  std::string name;
  std::string shape;  // output F x T x C
  unsigned long long macs = 0;
  unsigned long long bias = 0;         // bias additions
  unsigned long long elementwise = 0;  // activations, gates, residuals, pooling
  unsigned long long flops() const { return 2 * macs + elementwise; }
};

struct Complexity {
  std::vector<LayerCost> layers;
  unsigned long long macs = 0;
  unsigned long long elementwise = 0;
  unsigned long long bias = 0;
  std::size_t params = 0;

  /// 2 per MAC plus one per elementwise operation.
  unsigned long long flops() const { return 2 * macs + elementwise; }
  /// One per MAC, bias add and elementwise operation (profiler convention).
  unsigned long long flops_unit_mac() const { return macs + bias + elementwise; }

  std::string table() const;
};

Complexity count_macs_flops(const ModelConfig& cfg, std::size_t freq = 256, std::size_t frames = 192);

inline unsigned long long pointwise_macs(std::size_t f, std::size_t t, std::size_t cin, std::size_t cout) {
  return 1ULL * f * t * cin * cout;
}
inline unsigned long long depthwise_macs(std::size_t f, std::size_t t, std::size_t c, std::size_t k) {
  return 1ULL * f * t * c * k * k;
}
inline unsigned long long conv1d_macs(std::size_t f, std::size_t t, std::size_t c, std::size_t k) {
  return 1ULL * f * t * c * k;
}
/// f, t are the input extents; the output is 2f x 2t.
inline unsigned long long transposed_macs(std::size_t f, std::size_t t, std::size_t cin, std::size_t cout) {
  return 4ULL * f * t * cin * cout;
}

/// Attention cost of one decoupled branch on an F^ x T^ x C map.
inline unsigned long long fca_branch_macs(std::size_t f_hat, std::size_t t_hat, std::size_t c, std::size_t k) {
  return 2 * conv1d_macs(f_hat, t_hat, c, k);
}
/// Same map with a dense time-axis weight per (t, f): F^ T^^2 C.
inline unsigned long long dense_fca_macs(std::size_t f_hat, std::size_t t_hat, std::size_t c) {
  return 1ULL * f_hat * t_hat * t_hat * c;
}

}  // namespace lmfca::model
