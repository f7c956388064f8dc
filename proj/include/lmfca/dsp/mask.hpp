// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lmfca/dsp/stft.hpp"
#include "lmfca/tensor.hpp"

namespace lmfca::dsp {

inline constexpr std::size_t kReferenceMic = 4;
inline constexpr double kMaskClip = 5.0;
inline constexpr double kMaskEps = 1e-8;

/// Network input: F x T x 2M laid out [re_1, im_1, ..., re_M, im_M].
struct StackedInput {
  Tensor<double> x;
  double norm = 0.0;
};

/// Divides every channel by the mean magnitude of the reference channel.
StackedInput normalize_and_stack(const ComplexSpectrogram& spec, std::size_t ref_channel);

/// Complex mask, re/im each F x T x 1.
struct MaskPair {
  Tensor<double> re;
  Tensor<double> im;

  /// Interleaved F x T x 2 view as produced by the network.
  Tensor<double> stacked() const;
  template <typename S>
  static MaskPair from_stacked(const Tensor<S>& y);
  static MaskPair unit(std::size_t frames);
  static MaskPair zeros(std::size_t frames);
};

/// Y = S conj(X) / (|X|^2 + eps), magnitude clipped to `clip` (clip <= 0 disables).
MaskPair compute_cirm(const ComplexSpectrogram& mix_ref, const ComplexSpectrogram& clean,
                      double clip = kMaskClip, double eps = kMaskEps);

ComplexSpectrogram apply_mask(const MaskPair& mask, const ComplexSpectrogram& mix_ref);
Waveform apply_mask_and_reconstruct(const MaskPair& mask, const ComplexSpectrogram& mix_ref);

template <typename S>
MaskPair MaskPair::from_stacked(const Tensor<S>& y) {
  require(y.rank() == 3 && y.extent(2) == 2, "mask tensor must be F x T x 2, got " + to_string(y.shape()));
  MaskPair m;
  m.re = Tensor<double>({y.extent(0), y.extent(1), 1});
  m.im = Tensor<double>({y.extent(0), y.extent(1), 1});
  for (std::size_t i = 0; i < m.re.size(); ++i) {
    m.re[i] = static_cast<double>(y[2 * i]);
    m.im[i] = static_cast<double>(y[2 * i + 1]);
  }
  return m;
}

}  // namespace lmfca::dsp
