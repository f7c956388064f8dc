// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

// Encoder-decoder mask estimator. Parameter names follow the module path,
// e.g. enc.1.fca.d1.weight, mid.bottleneck.0.pw1.bias, dec.2.up.weight.

#pragma once

#include <random>
#include <string>

#include "lmfca/model/config.hpp"
#include "lmfca/model/fca.hpp"
#include "lmfca/parameters.hpp"

namespace lmfca::model {

inline constexpr float kPreluInit = 0.25f;

template <typename S>
void add_fca_block_params(ParameterStore<S>& store, const std::string& prefix, std::size_t cin, std::size_t cout,
                          const ModelConfig& cfg, std::mt19937_64& rng);
template <typename S>
void add_sandglass_params(ParameterStore<S>& store, const std::string& prefix, std::size_t c,
                          const ModelConfig& cfg, std::mt19937_64& rng);
template <typename S>
void add_bottleneck_params(ParameterStore<S>& store, const std::string& prefix, std::size_t c,
                           const ModelConfig& cfg, std::mt19937_64& rng);

/// All parameters of the network, initialised from `seed`.
template <typename S>
ParameterStore<S> build_parameters(const ModelConfig& cfg, std::uint64_t seed);
template <typename S>
ParameterStore<S> build_parameters(const ModelConfig& cfg) {
  return build_parameters<S>(cfg, cfg.init_seed);
}

/// Trunk: PConv(Cin->Cout/2), PReLU, DConv, PReLU, then concat (ghost) or
/// PConv(Cout/2->Cout) (pconv). Output trunk * attention map, plus x when
/// Cin == Cout. Without FCA the map is the constant 1.
template <typename S>
Var<S> fca_block(const Var<S>& x, std::size_t cout, FcaKind kind, const ModelConfig& cfg,
                 const ParameterStore<S>& store, const std::string& prefix);

/// DConv, PReLU, PConv(C->C/2), PConv(C/2->C), PReLU, DConv, plus identity.
/// With pconv_for_sandglass the unit is a single PConv(C->C).
template <typename S>
Var<S> sandglass_unit(const Var<S>& x, const ModelConfig& cfg, const ParameterStore<S>& store,
                      const std::string& prefix);

template <typename S>
Var<S> bottleneck_block(const Var<S>& x, const ModelConfig& cfg, const ParameterStore<S>& store,
                        const std::string& prefix);

/// F x T x 2M (F, T divisible by 8) -> F x T x 2 mask estimate.
template <typename S>
Var<S> model_forward(const Var<S>& x, const ModelConfig& cfg, const ParameterStore<S>& store);

}  // namespace lmfca::model
