// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/model/complexity.hpp"

#include <fmt/format.h>

#include "lmfca/errors.hpp"

namespace lmfca::model {
namespace {

class Walker {
 public:
  Walker(const ModelConfig& cfg, Complexity& out) : cfg_(cfg), out_(out) {}

  struct Map {
    std::size_t f, t, c;
    unsigned long long n() const { return 1ULL * f * t * c; }
  };

  Map pointwise(const std::string& name, Map x, std::size_t cout) {
    Map y{x.f, x.t, cout};
    emit(name, y, pointwise_macs(x.f, x.t, x.c, cout), y.n(), 0);
    return y;
  }
  Map depthwise(const std::string& name, Map x) {
    const std::size_t k = cfg_.dconv_kernel;
    emit(name, x, depthwise_macs(x.f, x.t, x.c, k), 0, 0);
    return x;
  }
  void elementwise(const std::string& name, Map x, unsigned long long per_element = 1) {
    emit(name, x, 0, 0, x.n() * per_element);
  }

  Map fca_block(const std::string& p, Map x, std::size_t cout) {
    const Map h = pointwise(p + ".trunk.pw", x, cout / 2);
    elementwise(p + ".trunk.pw.act", h);
    depthwise(p + ".trunk.dw", h);
    elementwise(p + ".trunk.dw.act", h);
    Map y{x.f, x.t, cout};
    if (cfg_.trunk_expand == TrunkExpand::Pconv) y = pointwise(p + ".trunk.expand", h, cout);
    if (cfg_.enable_fca) {
      const Map pooled{x.f / 2, x.t / 2, x.c};
      elementwise(p + ".fca.pool", x);
      const Map z = pointwise(p + ".fca.proj", pooled, cout);
      const std::size_t k = cfg_.fca_kernel;
      emit(p + ".fca.d1", z, conv1d_macs(z.f, z.t, z.c, k), 0, 0);
      emit(p + ".fca.d2", z, conv1d_macs(z.f, z.t, z.c, k), 0, 0);
      elementwise(p + ".fca.sigmoid", z);
      elementwise(p + ".fca.gate", y);
    }
    if (x.c == cout) elementwise(p + ".residual", y);
    return y;
  }

  Map sandglass(const std::string& p, Map x) {
    if (cfg_.pconv_for_sandglass) return pointwise(p + ".pw", x, x.c);
    depthwise(p + ".dw1", x);
    elementwise(p + ".dw1.act", x);
    const Map m = pointwise(p + ".pw1", x, x.c / 2);
    pointwise(p + ".pw2", m, x.c);
    elementwise(p + ".pw2.act", x);
    depthwise(p + ".dw2", x);
    elementwise(p + ".residual", x);
    return x;
  }

  Map bottleneck(const std::string& p, Map x) { return sandglass(p + ".1", sandglass(p + ".0", x)); }

  void run(std::size_t freq, std::size_t frames) {
    const auto [c1, c2, c3, c4] = cfg_.channels;
    const std::size_t widths[3] = {c1, c2, c3};
    Map skips[3];
    Map h{freq, frames, cfg_.input_channels()};
    for (std::size_t i = 0; i < 3; ++i) {
      const std::string p = "enc." + std::to_string(i);
      skips[i] = fca_block(p, h, widths[i]);
      elementwise(p + ".pool", skips[i]);
      h = {skips[i].f / 2, skips[i].t / 2, skips[i].c};
    }
    h = pointwise("mid.entry", h, c4);
    elementwise("mid.entry.act", h);
    h = bottleneck("mid.bottleneck", h);
    for (std::size_t i = 0; i < 3; ++i) {
      const std::string p = "dec." + std::to_string(i);
      const Map skip = skips[2 - i];
      const Map up{h.f * 2, h.t * 2, skip.c};
      emit(p + ".up", up, transposed_macs(h.f, h.t, h.c, skip.c), up.n(), 0);
      Map fused = up;
      if (cfg_.skip_fusion == SkipFusion::Concat) fused.c += skip.c;
      else elementwise(p + ".skip_add", up);
      h = fca_block(p + ".block", fused, widths[2 - i]);
    }
    h = bottleneck("tail.bottleneck", h);
    pointwise("out", h, 2);
  }

 private:
  void emit(const std::string& name, Map y, unsigned long long macs, unsigned long long bias,
            unsigned long long elem) {
    out_.layers.push_back({name, fmt::format("{}x{}x{}", y.f, y.t, y.c), macs, bias, elem});
    out_.macs += macs;
    out_.bias += bias;
    out_.elementwise += elem;
  }

  const ModelConfig& cfg_;
  Complexity& out_;
};

std::size_t count_params(const ModelConfig& cfg) {
  const std::size_t k2 = cfg.dconv_kernel * cfg.dconv_kernel;
  auto block = [&](std::size_t cin, std::size_t cout) {
    const std::size_t h = cout / 2;
    std::size_t n = cin * h + h + h + k2 * h + h;
    if (cfg.trunk_expand == TrunkExpand::Pconv) n += h * cout + cout;
    if (cfg.enable_fca) n += cin * cout + cout + 2 * cfg.fca_kernel * cout;
    return n;
  };
  auto unit = [&](std::size_t c) {
    if (cfg.pconv_for_sandglass) return c * c + c;
    return k2 * c + c + (c * (c / 2) + c / 2) + ((c / 2) * c + c) + c + k2 * c;
  };
  const auto [c1, c2, c3, c4] = cfg.channels;
  std::size_t n = block(cfg.input_channels(), c1) + block(c1, c2) + block(c2, c3);
  n += c3 * c4 + c4 + c4 + 2 * unit(c4);
  const std::size_t din[3] = {c4, c3, c2}, dout[3] = {c3, c2, c1};
  for (std::size_t i = 0; i < 3; ++i) {
    n += 4 * din[i] * dout[i] + dout[i];
    n += block(cfg.skip_fusion == SkipFusion::Concat ? 2 * dout[i] : dout[i], dout[i]);
  }
  n += 2 * unit(c1) + c1 * 2 + 2;
  return n;
}

}  // namespace

Complexity count_macs_flops(const ModelConfig& cfg, std::size_t freq, std::size_t frames) {
  cfg.validate();
  require(freq % 8 == 0 && frames % 8 == 0, "count_macs_flops: F and T must be divisible by 8");
  Complexity c;
  Walker(cfg, c).run(freq, frames);
  c.params = count_params(cfg);
  return c;
}

std::string Complexity::table() const {
  std::string s = "layer\toutput\tmacs\tflops\n";
  for (const auto& l : layers) s += fmt::format("{}\t{}\t{}\t{}\n", l.name, l.shape, l.macs, l.flops());
  s += fmt::format("total\t-\t{}\t{}\n", macs, flops());
  return s;
}

}  // namespace lmfca::model
