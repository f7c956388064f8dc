// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/optim.hpp"

#include <cmath>

namespace lmfca {

void adam_step(ParameterStore<float>& store, TrainState& state, double lr, const AdamConfig& config) {
  for (const auto& p : store.params()) {
    if (p.trainable && !p.var.has_grad()) {
      throw ContractViolation("adam_step: parameter '" + p.name + "' has no gradient");
    }
  }

  double clip = 1.0;
  if (config.grad_clip_norm > 0) {
    double sq = 0;
    for (const auto& p : store.params())
      if (p.trainable)
        for (float g : p.var.grad().data()) sq += double(g) * g;
    const double norm = std::sqrt(sq);
    if (norm > config.grad_clip_norm) clip = config.grad_clip_norm / norm;
  }

  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(config.beta1, t);
  const double c2 = 1.0 - std::pow(config.beta2, t);

  for (auto& p : store.params()) {
    if (!p.trainable) continue;
    auto& mom = state.moments[p.name];
    const auto& shape = p.var.shape();
    if (mom.m.shape() != shape) mom.m = Tensor<float>(shape);
    if (mom.v.shape() != shape) mom.v = Tensor<float>(shape);
    auto w = p.var.mutable_value().data();
    auto g = p.var.grad().data();
    auto m = mom.m.data();
    auto v = mom.v.data();
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double gi = clip * g[i];
      const double mi = config.beta1 * m[i] + (1.0 - config.beta1) * gi;
      const double vi = config.beta2 * v[i] + (1.0 - config.beta2) * gi * gi;
      m[i] = static_cast<float>(mi);
      v[i] = static_cast<float>(vi);
      const double update = lr * (mi / c1) / (std::sqrt(vi / c2) + config.eps);
      w[i] = static_cast<float>(w[i] - update);
    }
  }
}

}  // namespace lmfca
