// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

// STFT analysis/synthesis: periodic Hann window of 510 samples, hop 255,
// frames centred on multiples of the hop with reflect padding, 256 one-sided
// bins. Synthesis is weighted overlap-add normalised by the squared-window
// envelope, which makes istft(stft(x)) == x.

#pragma once

#include <span>
#include <vector>

#include "lmfca/dsp/waveform.hpp"
#include "lmfca/tensor.hpp"

namespace lmfca::dsp {

inline constexpr std::size_t kWindow = 510;
inline constexpr std::size_t kHop = 255;
inline constexpr std::size_t kBins = kWindow / 2 + 1;  // 256

const std::vector<double>& hann_window();

/// Frames produced for an n-sample signal: 1 + floor(n / hop).
inline std::size_t frame_count(std::size_t num_samples) { return 1 + num_samples / kHop; }

/// F x T x M complex spectrogram with the length of the analysed signal.
struct ComplexSpectrogram {
  Tensor<double> re;
  Tensor<double> im;
  std::size_t num_samples = 0;

  std::size_t bins() const { return re.extent(0); }
  std::size_t frames() const { return re.extent(1); }
  std::size_t channels() const { return re.extent(2); }

  ComplexSpectrogram channel(std::size_t m) const;
  static ComplexSpectrogram zeros(std::size_t frames, std::size_t channels, std::size_t num_samples);
};

ComplexSpectrogram stft(const Waveform& w);

/// Synthesises every channel; output length is spec.num_samples.
Waveform istft(const ComplexSpectrogram& spec);

/// Adjoint of single-channel istft with respect to the real coordinates
/// (re, im) of the spectrogram: returns (d re, d im), each F x T x 1.
std::pair<Tensor<double>, Tensor<double>> istft_adjoint(std::span<const double> grad_out,
                                                        std::size_t frames);

}  // namespace lmfca::dsp
