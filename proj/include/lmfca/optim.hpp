// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>

#include "lmfca/parameters.hpp"

namespace lmfca {

struct AdamMoments {
  Tensor<float> m;
  Tensor<float> v;

  friend bool operator==(const AdamMoments& a, const AdamMoments& b) { return a.m == b.m && a.v == b.v; }
};

/// Optimizer and schedule state carried across steps and persisted in checkpoints.
struct TrainState {
  std::uint64_t epoch = 0;
  std::uint64_t step = 0;  // completed optimizer steps
  double lr = 1e-4;
  double best_val_loss = std::numeric_limits<double>::infinity();
  std::uint64_t epochs_since_improvement = 0;
  std::uint64_t seed = 0;
  std::map<std::string, AdamMoments> moments;

  friend bool operator==(const TrainState&, const TrainState&) = default;
};

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double grad_clip_norm = 0.0;  // 0 disables global-norm clipping
};

/// One bias-corrected Adam update over every trainable parameter. Increments
/// state.step. Throws ContractViolation if a trainable parameter has no
/// gradient buffer (call zero_grad before backward).
void adam_step(ParameterStore<float>& store, TrainState& state, double lr,
               const AdamConfig& config = {});

}  // namespace lmfca
