// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lmfca/autograd.hpp"

namespace lmfca {

template <typename S>
struct Parameter {
  std::string name;  // dotted path, e.g. enc.0.trunk.pw.weight
  Var<S> var;
  bool trainable = true;
};

/// Named parameter tensors in insertion order. Names are unique.
template <typename S>
class ParameterStore {
 public:
  const Var<S>& add(std::string name, Tensor<S> init, bool trainable = true) {
    require(!name.empty(), "parameter name must not be empty");
    require(!index_.contains(name), "duplicate parameter name: " + name);
    index_.emplace(name, params_.size());
    params_.push_back({std::move(name), Var<S>(std::move(init), trainable), trainable});
    return params_.back().var;
  }

  bool contains(std::string_view name) const { return index_.contains(std::string(name)); }

  const Var<S>& get(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw ContractViolation("unknown parameter: " + std::string(name));
    return params_[it->second].var;
  }
  Var<S>& get(std::string_view name) {
    return const_cast<Var<S>&>(static_cast<const ParameterStore&>(*this).get(name));
  }

  std::vector<Parameter<S>>& params() { return params_; }
  const std::vector<Parameter<S>>& params() const { return params_; }
  std::size_t size() const { return params_.size(); }

  std::size_t element_count() const {
    std::size_t n = 0;
    for (const auto& p : params_) n += p.var.value().size();
    return n;
  }

  /// Allocates (if needed) and zeroes every trainable gradient.
  void zero_grad() {
    for (auto& p : params_)
      if (p.trainable) p.var.zero_grad();
  }

  /// Deep copy with converted scalar type; gradients are not carried over.
  template <typename U>
  ParameterStore<U> cast() const {
    ParameterStore<U> out;
    for (const auto& p : params_) out.add(p.name, p.var.value().template cast<U>(), p.trainable);
    return out;
  }

 private:
  std::vector<Parameter<S>> params_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Uniform fan-in initialisation, bound = sqrt(3 / fan_in) (unit-variance
/// preserving for a linear layer).
template <typename S>
Tensor<S> fan_in_uniform(Shape shape, std::size_t fan_in, std::mt19937_64& rng) {
  require(fan_in > 0, "fan_in must be positive");
  const double bound = std::sqrt(3.0 / static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  Tensor<S> t(std::move(shape));
  for (auto& v : t.data()) v = static_cast<S>(dist(rng));
  return t;
}

}  // namespace lmfca
