// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/train/loss.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "lmfca/ops.hpp"

namespace lmfca::train {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct SdrTerms {
  double alpha, target, noise, value;
  bool clamped;
};

SdrTerms sdr_terms(std::span<const double> est, std::span<const double> ref, double eps, double cap) {
  require(est.size() == ref.size(), "si_sdr: length mismatch");
  const double rr = dot(ref, ref);
  if (!(rr > 0)) throw DegenerateInput("si_sdr: reference is all zero");
  SdrTerms s{};
  s.alpha = dot(est, ref) / (rr + eps);
  s.target = s.alpha * s.alpha * rr;
  double n = 0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double e = s.alpha * ref[i] - est[i];
    n += e * e;
  }
  s.noise = n + eps;
  const double raw = s.target > 0 ? 10.0 * std::log10(s.target / s.noise) : -cap;
  s.value = std::clamp(raw, -cap, cap);
  s.clamped = !(raw > -cap && raw < cap);
  return s;
}

}  // namespace

void LossWeights::validate() const {
  if (!(alpha >= 0 && alpha <= 1)) throw ConfigError("loss alpha must lie in [0, 1]");
  if (!(beta >= 0)) throw ConfigError("loss beta must be non-negative");
  if (!(sisdr_eps > 0) || !(sisdr_cap_db > 0)) throw ConfigError("si-sdr eps and cap must be positive");
}

double si_sdr(std::span<const double> est, std::span<const double> ref, double eps, double cap_db) {
  return sdr_terms(est, ref, eps, cap_db).value;
}

double si_sdr(const dsp::Waveform& est, const dsp::Waveform& ref, double eps, double cap_db) {
  require(est.num_channels() == 1 && ref.num_channels() == 1, "si_sdr expects mono signals");
  return si_sdr(est.channels[0], ref.channels[0], eps, cap_db);
}

std::vector<double> si_sdr_gradient(std::span<const double> est, std::span<const double> ref, double eps,
                                    double cap_db) {
  const SdrTerms s = sdr_terms(est, ref, eps, cap_db);
  std::vector<double> g(est.size(), 0.0);
  if (s.clamped) return g;
  const double rr = dot(ref, ref);
  std::vector<double> u(est.size());
  for (std::size_t i = 0; i < est.size(); ++i) u[i] = s.alpha * ref[i] - est[i];
  const double ru = dot(ref, u);
  const double k = 10.0 / std::numbers::ln10;
  // d target = 2 alpha rr r / (rr + eps); d noise = 2 (r.u) r / (rr + eps) - 2 u
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double dt = 2.0 * s.alpha * rr * ref[i] / (rr + eps);
    const double dn = 2.0 * ru * ref[i] / (rr + eps) - 2.0 * u[i];
    g[i] = k * (dt / s.target - dn / s.noise);
  }
  return g;
}

template <typename S>
Var<S> mask_magnitude(const Var<S>& mask) {
  const auto& v = mask.value();
  require(v.rank() == 3 && v.extent(2) == 2, "mask_magnitude: expected F x T x 2, got " + to_string(v.shape()));
  Tensor<S> out({v.extent(0), v.extent(1), 1});
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<S>(std::sqrt(double(v[2 * i]) * v[2 * i] + double(v[2 * i + 1]) * v[2 * i + 1] +
                                      kMagnitudeFloor));
  return make_result<S>(
      std::move(out), {mask},
      [](Node<S>& self) {
        auto* g = input_grad(self, 0);
        if (!g) return;
        const auto& in = self.inputs[0]->value;
        for (std::size_t i = 0; i < self.value.size(); ++i) {
          const S k = self.grad[i] / self.value[i];
          (*g)[2 * i] += k * in[2 * i];
          (*g)[2 * i + 1] += k * in[2 * i + 1];
        }
      },
      "mask_magnitude");
}

template <typename S>
Var<S> negative_si_sdr(const Var<S>& mask, const dsp::ComplexSpectrogram& mix_ref,
                       std::span<const double> direct_ref, const LossWeights& w) {
  require(mix_ref.channels() == 1, "negative_si_sdr: mix_ref must be single-channel");
  const dsp::MaskPair m = dsp::MaskPair::from_stacked(mask.value());
  require(m.re.extent(0) == mix_ref.bins() && m.re.extent(1) == mix_ref.frames(),
          "negative_si_sdr: mask and spectrogram differ in shape");
  require(direct_ref.size() == mix_ref.num_samples, "negative_si_sdr: reference length mismatch");
  const dsp::Waveform est = dsp::apply_mask_and_reconstruct(m, mix_ref);
  const double value = si_sdr(est.channels[0], direct_ref, w.sisdr_eps, w.sisdr_cap_db);
  std::vector<double> g_wave = si_sdr_gradient(est.channels[0], direct_ref, w.sisdr_eps, w.sisdr_cap_db);

  return make_result<S>(
      Tensor<S>::scalar(static_cast<S>(-value)), {mask},
      [g_wave = std::move(g_wave), mix = std::make_shared<const dsp::ComplexSpectrogram>(mix_ref)](Node<S>& self) mutable {
        auto* g = input_grad(self, 0);
        if (!g) return;
        const double up = -static_cast<double>(self.grad[0]);
        for (auto& v : g_wave) v *= up;
        const auto [g_re, g_im] = dsp::istft_adjoint(g_wave, mix->frames());
        // P = Y X: dY_re = gP_re X_re + gP_im X_im, dY_im = -gP_re X_im + gP_im X_re
        for (std::size_t i = 0; i < g_re.size(); ++i) {
          const double xr = mix->re[i], xi = mix->im[i];
          (*g)[2 * i] += static_cast<S>(g_re[i] * xr + g_im[i] * xi);
          (*g)[2 * i + 1] += static_cast<S>(-g_re[i] * xi + g_im[i] * xr);
        }
      },
      "negative_si_sdr");
}

template <typename S>
Var<S> composite_loss(const Var<S>& mask_est, const dsp::MaskPair& target, const dsp::ComplexSpectrogram& mix_ref,
                      std::span<const double> direct_ref, const LossWeights& w, LossParts* parts) {
  const Var<S> target_stacked(target.stacked().template cast<S>());
  const Var<S> l_mag = ops::mse(mask_magnitude(mask_est), mask_magnitude(target_stacked));
  const Var<S> l_spec = ops::mse(mask_est, target_stacked);
  Var<S> total = ops::add(ops::scale(l_mag, static_cast<S>(w.alpha)), ops::scale(l_spec, static_cast<S>(1 - w.alpha)));
  double sisdr = 0;
  if (w.beta > 0 || parts) {
    const Var<S> l_sdr = negative_si_sdr(mask_est, mix_ref, direct_ref, w);
    sisdr = -static_cast<double>(l_sdr.value()[0]);
    if (w.beta > 0) total = ops::add(total, ops::scale(l_sdr, static_cast<S>(w.beta)));
  }
  if (parts) {
    *parts = {static_cast<double>(total.value()[0]), static_cast<double>(l_mag.value()[0]),
              static_cast<double>(l_spec.value()[0]), sisdr};
  }
  return total;
}

#define LMFCA_INSTANTIATE(S)                                                                                 \
  template Var<S> mask_magnitude<S>(const Var<S>&);                                                         \
  template Var<S> negative_si_sdr<S>(const Var<S>&, const dsp::ComplexSpectrogram&, std::span<const double>, \
                                     const LossWeights&);                                                    \
  template Var<S> composite_loss<S>(const Var<S>&, const dsp::MaskPair&, const dsp::ComplexSpectrogram&,     \
                                    std::span<const double>, const LossWeights&, LossParts*);
LMFCA_INSTANTIATE(float)
LMFCA_INSTANTIATE(double)
#undef LMFCA_INSTANTIATE

}  // namespace lmfca::train
