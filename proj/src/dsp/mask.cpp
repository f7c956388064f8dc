// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/dsp/mask.hpp"

#include <cmath>

namespace lmfca::dsp {

StackedInput normalize_and_stack(const ComplexSpectrogram& spec, std::size_t ref_channel) {
  const std::size_t F = spec.bins(), T = spec.frames(), M = spec.channels();
  require(ref_channel < M, "reference channel " + std::to_string(ref_channel) +
                               " out of range for " + std::to_string(M) + " channels");
  double sum = 0.0;
  for (std::size_t f = 0; f < F; ++f)
    for (std::size_t t = 0; t < T; ++t)
      sum += std::hypot(spec.re.at(f, t, ref_channel), spec.im.at(f, t, ref_channel));
  const double norm = sum / static_cast<double>(F * T);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DegenerateInput("reference channel is silent; cannot normalise");
  }

  StackedInput out;
  out.norm = norm;
  out.x = Tensor<double>({F, T, 2 * M});
  for (std::size_t f = 0; f < F; ++f)
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t m = 0; m < M; ++m) {
        out.x.at(f, t, 2 * m) = spec.re.at(f, t, m) / norm;
        out.x.at(f, t, 2 * m + 1) = spec.im.at(f, t, m) / norm;
      }
  return out;
}

Tensor<double> MaskPair::stacked() const {
  Tensor<double> y({re.extent(0), re.extent(1), 2});
  for (std::size_t i = 0; i < re.size(); ++i) {
    y[2 * i] = re[i];
    y[2 * i + 1] = im[i];
  }
  return y;
}

MaskPair MaskPair::unit(std::size_t frames) {
  MaskPair m = zeros(frames);
  m.re.fill(1.0);
  return m;
}

MaskPair MaskPair::zeros(std::size_t frames) {
  return {Tensor<double>({kBins, frames, 1}), Tensor<double>({kBins, frames, 1})};
}

MaskPair compute_cirm(const ComplexSpectrogram& mix_ref, const ComplexSpectrogram& clean,
                      double clip, double eps) {
  require(mix_ref.channels() == 1 && clean.channels() == 1, "compute_cirm: expected single-channel spectrograms");
  require(mix_ref.re.shape() == clean.re.shape(), "compute_cirm: spectrogram shapes differ");
  MaskPair m{Tensor<double>(mix_ref.re.shape()), Tensor<double>(mix_ref.re.shape())};
  for (std::size_t i = 0; i < m.re.size(); ++i) {
    const double xr = mix_ref.re[i], xi = mix_ref.im[i];
    const double sr = clean.re[i], si = clean.im[i];
    const double den = xr * xr + xi * xi + eps;
    double yr = (sr * xr + si * xi) / den;
    double yi = (si * xr - sr * xi) / den;
    const double mag = std::hypot(yr, yi);
    if (clip > 0.0 && mag > clip) {
      yr *= clip / mag;
      yi *= clip / mag;
    }
    m.re[i] = yr;
    m.im[i] = yi;
  }
  return m;
}

ComplexSpectrogram apply_mask(const MaskPair& mask, const ComplexSpectrogram& mix_ref) {
  require(mix_ref.channels() == 1, "apply_mask: expected the single reference channel");
  require(mask.re.shape() == mix_ref.re.shape(),
          "apply_mask: mask " + to_string(mask.re.shape()) + " vs spectrogram " + to_string(mix_ref.re.shape()));
  ComplexSpectrogram out = ComplexSpectrogram::zeros(mix_ref.frames(), 1, mix_ref.num_samples);
  for (std::size_t i = 0; i < out.re.size(); ++i) {
    out.re[i] = mask.re[i] * mix_ref.re[i] - mask.im[i] * mix_ref.im[i];
    out.im[i] = mask.re[i] * mix_ref.im[i] + mask.im[i] * mix_ref.re[i];
  }
  return out;
}

Waveform apply_mask_and_reconstruct(const MaskPair& mask, const ComplexSpectrogram& mix_ref) {
  return istft(apply_mask(mask, mix_ref));
}

}  // namespace lmfca::dsp
