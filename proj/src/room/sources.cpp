// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/room/sources.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace lmfca::room {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double formant_gain(double f, double f1, double f2) {
  auto peak = [](double f, double c, double bw) { return 1.0 / (1.0 + std::pow((f - c) / bw, 2)); };
  return 0.15 + peak(f, f1, 120.0) + 0.6 * peak(f, f2, 180.0);
}

void normalise_peak(std::vector<double>& x, double peak) {
  double m = 0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m > 0)
    for (double& v : x) v *= peak / m;
}

}  // namespace

dsp::Waveform synthetic_speech(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto U = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  std::normal_distribution<double> gauss;
  const double fs = dsp::kSampleRate;
  std::vector<double> x(n, 0.0);

  std::size_t pos = static_cast<std::size_t>(U(0.02, 0.1) * fs);
  while (pos < n) {
    const auto len = static_cast<std::size_t>(U(0.12, 0.3) * fs);
    const std::size_t end = std::min(n, pos + len);
    if (U(0, 1) < 0.75) {
      const double f0a = U(90, 240), f0b = f0a * U(0.8, 1.2);
      const double f1 = U(300, 900), f2 = U(900, 2500);
      double phase = 0;
      for (std::size_t i = pos; i < end; ++i) {
        const double r = double(i - pos) / double(len);
        const double f0 = f0a + (f0b - f0a) * r;
        phase += kTwoPi * f0 / fs;
        double v = 0;
        for (int h = 1; h * f0 < 4000; ++h) v += formant_gain(h * f0, f1, f2) * std::sin(h * phase) / std::sqrt(h);
        x[i] += v * std::sin(std::numbers::pi * r);
      }
    } else {
      // Fricative: differenced noise with a smooth envelope.
      double prev = 0;
      for (std::size_t i = pos; i < end; ++i) {
        const double r = double(i - pos) / double(len);
        const double w = gauss(rng);
        x[i] += 0.3 * (w - prev) * std::sin(std::numbers::pi * r);
        prev = w;
      }
    }
    pos = end + static_cast<std::size_t>(U(0.03, 0.15) * fs);
  }
  normalise_peak(x, 0.5);
  return dsp::Waveform::mono(std::move(x));
}

dsp::Waveform synthetic_noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double hum_f = U(rng) < 0.5 ? 50.0 : 60.0, hum_a = 0.05 + 0.1 * U(rng), drift_f = 0.1 + 0.4 * U(rng);
  std::vector<double> x(n);
  // Kellet pink-noise filter.
  double b0 = 0, b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0, b6 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = gauss(rng);
    b0 = 0.99886 * b0 + w * 0.0555179;
    b1 = 0.99332 * b1 + w * 0.0750759;
    b2 = 0.96900 * b2 + w * 0.1538520;
    b3 = 0.86650 * b3 + w * 0.3104856;
    b4 = 0.55000 * b4 + w * 0.5329522;
    b5 = -0.7616 * b5 - w * 0.0168980;
    const double pink = b0 + b1 + b2 + b3 + b4 + b5 + b6 + w * 0.5362;
    b6 = w * 0.115926;
    const double t = double(i) / dsp::kSampleRate;
    x[i] = pink * (1.0 + 0.3 * std::sin(kTwoPi * drift_f * t)) + hum_a * std::sin(kTwoPi * hum_f * t);
  }
  normalise_peak(x, 0.5);
  return dsp::Waveform::mono(std::move(x));
}

}  // namespace lmfca::room
