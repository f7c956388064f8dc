// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

// Training objective: alpha * MSE on mask magnitudes + (1 - alpha) * MSE on
// stacked re/im + beta * negative SI-SDR of the reconstructed waveform.

#pragma once

#include <span>
#include <vector>

#include "lmfca/autograd.hpp"
#include "lmfca/dsp/mask.hpp"

namespace lmfca::train {

struct LossWeights {
  double alpha = 0.1;
  double beta = 1e-4;
  double sisdr_eps = 1e-8;
  double sisdr_cap_db = 30.0;

  /// Throws ConfigError.
  void validate() const;
};

/// Scale-invariant SDR in dB, clamped to +-cap. Zero reference throws DegenerateInput.
double si_sdr(std::span<const double> est, std::span<const double> ref, double eps = 1e-8, double cap_db = 30.0);
double si_sdr(const dsp::Waveform& est, const dsp::Waveform& ref, double eps = 1e-8, double cap_db = 30.0);

/// d si_sdr / d est; zero wherever the value is clamped.
std::vector<double> si_sdr_gradient(std::span<const double> est, std::span<const double> ref, double eps = 1e-8,
                                    double cap_db = 30.0);

/// sqrt(re^2 + im^2 + floor) of an F x T x 2 mask, F x T x 1.
inline constexpr double kMagnitudeFloor = 1e-12;
template <typename S>
Var<S> mask_magnitude(const Var<S>& mask);

/// -si_sdr(istft(mask * mix_ref), direct_ref) as a differentiable scalar of an F x T x 2 mask.
template <typename S>
Var<S> negative_si_sdr(const Var<S>& mask, const dsp::ComplexSpectrogram& mix_ref,
                       std::span<const double> direct_ref, const LossWeights& w = {});

struct LossParts {
  double total = 0;
  double magnitude = 0;
  double spectral = 0;
  double sisdr_db = 0;
};

template <typename S>
Var<S> composite_loss(const Var<S>& mask_est, const dsp::MaskPair& target, const dsp::ComplexSpectrogram& mix_ref,
                      std::span<const double> direct_ref, const LossWeights& w = {}, LossParts* parts = nullptr);

}  // namespace lmfca::train
