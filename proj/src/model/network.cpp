// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/model/network.hpp"

namespace lmfca::model {
namespace {

template <typename S>
void add_pointwise(ParameterStore<S>& st, const std::string& p, std::size_t cin, std::size_t cout,
                   std::mt19937_64& rng) {
  st.add(p + ".weight", fan_in_uniform<S>({cin, cout}, cin, rng));
  st.add(p + ".bias", Tensor<S>({cout}));
}

template <typename S>
void add_depthwise(ParameterStore<S>& st, const std::string& p, std::size_t k, std::size_t c, std::mt19937_64& rng) {
  st.add(p + ".weight", fan_in_uniform<S>({k, k, c}, k * k, rng));
}

template <typename S>
void add_prelu(ParameterStore<S>& st, const std::string& p, std::size_t c) {
  st.add(p + ".slope", Tensor<S>({c}, static_cast<S>(kPreluInit)));
}

template <typename S>
Var<S> pointwise(const Var<S>& x, const ParameterStore<S>& st, const std::string& p) {
  return ops::conv2d_pointwise(x, st.get(p + ".weight"), st.get(p + ".bias"));
}

template <typename S>
Var<S> act(const Var<S>& x, const ParameterStore<S>& st, const std::string& p) {
  return ops::prelu(x, st.get(p + ".slope"));
}

}  // namespace

template <typename S>
void add_fca_block_params(ParameterStore<S>& st, const std::string& p, std::size_t cin, std::size_t cout,
                          const ModelConfig& cfg, std::mt19937_64& rng) {
  require(cout % 2 == 0, "fca block output width must be even");
  const std::size_t half = cout / 2;
  add_pointwise(st, p + ".trunk.pw", cin, half, rng);
  add_prelu(st, p + ".trunk.pw", half);
  add_depthwise(st, p + ".trunk.dw", cfg.dconv_kernel, half, rng);
  add_prelu(st, p + ".trunk.dw", half);
  if (cfg.trunk_expand == TrunkExpand::Pconv) add_pointwise(st, p + ".trunk.expand", half, cout, rng);
  if (cfg.enable_fca) {
    add_pointwise(st, p + ".fca.proj", cin, cout, rng);
    st.add(p + ".fca.d1.weight", fan_in_uniform<S>({cfg.fca_kernel, cout}, cfg.fca_kernel, rng));
    st.add(p + ".fca.d2.weight", fan_in_uniform<S>({cfg.fca_kernel, cout}, cfg.fca_kernel, rng));
  }
}

template <typename S>
void add_sandglass_params(ParameterStore<S>& st, const std::string& p, std::size_t c, const ModelConfig& cfg,
                          std::mt19937_64& rng) {
  if (cfg.pconv_for_sandglass) {
    add_pointwise(st, p + ".pw", c, c, rng);
    return;
  }
  require(c % 2 == 0, "sandglass width must be even");
  add_depthwise(st, p + ".dw1", cfg.dconv_kernel, c, rng);
  add_prelu(st, p + ".dw1", c);
  add_pointwise(st, p + ".pw1", c, c / 2, rng);
  add_pointwise(st, p + ".pw2", c / 2, c, rng);
  add_prelu(st, p + ".pw2", c);
  add_depthwise(st, p + ".dw2", cfg.dconv_kernel, c, rng);
}

template <typename S>
void add_bottleneck_params(ParameterStore<S>& st, const std::string& p, std::size_t c, const ModelConfig& cfg,
                           std::mt19937_64& rng) {
  add_sandglass_params(st, p + ".0", c, cfg, rng);
  add_sandglass_params(st, p + ".1", c, cfg, rng);
}

template <typename S>
ParameterStore<S> build_parameters(const ModelConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  ParameterStore<S> st;
  const auto [c1, c2, c3, c4] = cfg.channels;
  const std::size_t enc_in[3] = {cfg.input_channels(), c1, c2}, enc_out[3] = {c1, c2, c3};
  for (std::size_t i = 0; i < 3; ++i)
    add_fca_block_params(st, "enc." + std::to_string(i), enc_in[i], enc_out[i], cfg, rng);
  add_pointwise(st, "mid.entry", c3, c4, rng);
  add_prelu(st, "mid.entry", c4);
  add_bottleneck_params(st, "mid.bottleneck", c4, cfg, rng);
  const std::size_t dec_in[3] = {c4, c3, c2}, dec_out[3] = {c3, c2, c1};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string p = "dec." + std::to_string(i);
    st.add(p + ".up.weight", fan_in_uniform<S>({2, 2, dec_in[i], dec_out[i]}, dec_in[i], rng));
    st.add(p + ".up.bias", Tensor<S>({dec_out[i]}));
    const std::size_t fused = cfg.skip_fusion == SkipFusion::Concat ? 2 * dec_out[i] : dec_out[i];
    add_fca_block_params(st, p + ".block", fused, dec_out[i], cfg, rng);
  }
  add_bottleneck_params(st, "tail.bottleneck", c1, cfg, rng);
  add_pointwise(st, "out", c1, 2, rng);
  return st;
}

template <typename S>
Var<S> fca_block(const Var<S>& x, std::size_t cout, FcaKind kind, const ModelConfig& cfg,
                 const ParameterStore<S>& st, const std::string& p) {
  const Var<S> h = act(pointwise(x, st, p + ".trunk.pw"), st, p + ".trunk.pw");
  const Var<S> g = act(ops::conv2d_depthwise(h, st.get(p + ".trunk.dw.weight")), st, p + ".trunk.dw");
  Var<S> y = cfg.trunk_expand == TrunkExpand::Ghost ? ops::concat_channels(h, g) : pointwise(g, st, p + ".trunk.expand");
  require(y.shape()[2] == cout, "fca_block: trunk width mismatch for " + p);
  if (cfg.enable_fca) {
    const FcaBranchParams<S> bp{st.get(p + ".fca.proj.weight"), st.get(p + ".fca.proj.bias"),
                                st.get(p + ".fca.d1.weight"), st.get(p + ".fca.d2.weight")};
    y = ops::mul(y, fca_branch(x, kind, bp));
  }
  if (x.shape()[2] == cout) y = ops::add(y, x);
  return y;
}

template <typename S>
Var<S> sandglass_unit(const Var<S>& x, const ModelConfig& cfg, const ParameterStore<S>& st, const std::string& p) {
  if (cfg.pconv_for_sandglass) return pointwise(x, st, p + ".pw");
  Var<S> y = act(ops::conv2d_depthwise(x, st.get(p + ".dw1.weight")), st, p + ".dw1");
  y = pointwise(y, st, p + ".pw1");
  y = act(pointwise(y, st, p + ".pw2"), st, p + ".pw2");
  y = ops::conv2d_depthwise(y, st.get(p + ".dw2.weight"));
  return ops::add(y, x);
}

template <typename S>
Var<S> bottleneck_block(const Var<S>& x, const ModelConfig& cfg, const ParameterStore<S>& st, const std::string& p) {
  return sandglass_unit(sandglass_unit(x, cfg, st, p + ".0"), cfg, st, p + ".1");
}

template <typename S>
Var<S> model_forward(const Var<S>& x, const ModelConfig& cfg, const ParameterStore<S>& st) {
  const auto& s = x.shape();
  require(s.size() == 3 && s[2] == cfg.input_channels(),
          "model input must be F x T x " + std::to_string(cfg.input_channels()) + ", got " + lmfca::to_string(s));
  require(s[0] % 8 == 0 && s[1] % 8 == 0, "model input F and T must be divisible by 8, got " + lmfca::to_string(s));
  const auto [c1, c2, c3, c4] = cfg.channels;
  const std::size_t widths[3] = {c1, c2, c3};

  Var<S> skips[3];
  Var<S> h = x;
  for (std::size_t i = 0; i < 3; ++i) {
    skips[i] = fca_block(h, widths[i], cfg.encoder_kind(i), cfg, st, "enc." + std::to_string(i));
    h = ops::max_pool2(skips[i]);
  }
  h = act(pointwise(h, st, "mid.entry"), st, "mid.entry");
  h = bottleneck_block(h, cfg, st, "mid.bottleneck");
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string p = "dec." + std::to_string(i);
    const Var<S>& skip = skips[2 - i];
    Var<S> up = ops::transposed_conv2(h, st.get(p + ".up.weight"), st.get(p + ".up.bias"));
    up = cfg.skip_fusion == SkipFusion::Concat ? ops::concat_channels(up, skip) : ops::add(up, skip);
    h = fca_block(up, widths[2 - i], FcaKind::FreqTime, cfg, st, p + ".block");
  }
  h = bottleneck_block(h, cfg, st, "tail.bottleneck");
  (void)c4;
  return pointwise(h, st, "out");
}

#define LMFCA_INSTANTIATE(S)                                                                                    \
  template void add_fca_block_params<S>(ParameterStore<S>&, const std::string&, std::size_t, std::size_t,     \
                                        const ModelConfig&, std::mt19937_64&);                                 \
  template void add_sandglass_params<S>(ParameterStore<S>&, const std::string&, std::size_t, const ModelConfig&, \
                                        std::mt19937_64&);                                                     \
  template void add_bottleneck_params<S>(ParameterStore<S>&, const std::string&, std::size_t,                  \
                                         const ModelConfig&, std::mt19937_64&);                                \
  template ParameterStore<S> build_parameters<S>(const ModelConfig&, std::uint64_t);                           \
  template Var<S> fca_block<S>(const Var<S>&, std::size_t, FcaKind, const ModelConfig&, const ParameterStore<S>&, \
                               const std::string&);                                                            \
  template Var<S> sandglass_unit<S>(const Var<S>&, const ModelConfig&, const ParameterStore<S>&,               \
                                    const std::string&);                                                       \
  template Var<S> bottleneck_block<S>(const Var<S>&, const ModelConfig&, const ParameterStore<S>&,             \
                                      const std::string&);                                                     \
  template Var<S> model_forward<S>(const Var<S>&, const ModelConfig&, const ParameterStore<S>&);
LMFCA_INSTANTIATE(float)
LMFCA_INSTANTIATE(double)
#undef LMFCA_INSTANTIATE

}  // namespace lmfca::model
