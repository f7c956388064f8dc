// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/dsp/stft.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "lmfca/dsp/fft.hpp"

namespace lmfca::dsp {
namespace {

constexpr std::size_t kPad = kWindow / 2;

// Index into x under reflect (no edge repeat) extension.
std::size_t reflect_index(long i, std::size_t n) {
  if (n == 1) return 0;
  const long period = 2 * (static_cast<long>(n) - 1);
  long r = i % period;
  if (r < 0) r += period;
  return static_cast<std::size_t>(r < static_cast<long>(n) ? r : period - r);
}

// Sum over frames of window^2 at each padded position.
std::vector<double> window_envelope(std::size_t frames) {
  const auto& w = hann_window();
  std::vector<double> env((frames - 1) * kHop + kWindow, 0.0);
  for (std::size_t t = 0; t < frames; ++t)
    for (std::size_t n = 0; n < kWindow; ++n) env[t * kHop + n] += w[n] * w[n];
  return env;
}

}  // namespace

const std::vector<double>& hann_window() {
  static const std::vector<double> w = [] {
    std::vector<double> v(kWindow);
    for (std::size_t n = 0; n < kWindow; ++n)
      v[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / kWindow);
    return v;
  }();
  return w;
}

ComplexSpectrogram ComplexSpectrogram::channel(std::size_t m) const {
  require(m < channels(), "spectrogram channel index out of range");
  ComplexSpectrogram out = zeros(frames(), 1, num_samples);
  for (std::size_t f = 0; f < bins(); ++f)
    for (std::size_t t = 0; t < frames(); ++t) {
      out.re.at(f, t, 0) = re.at(f, t, m);
      out.im.at(f, t, 0) = im.at(f, t, m);
    }
  return out;
}

ComplexSpectrogram ComplexSpectrogram::zeros(std::size_t frames, std::size_t channels,
                                             std::size_t num_samples) {
  ComplexSpectrogram s;
  s.re = Tensor<double>({kBins, frames, channels});
  s.im = Tensor<double>({kBins, frames, channels});
  s.num_samples = num_samples;
  return s;
}

ComplexSpectrogram stft(const Waveform& w) {
  require(w.num_channels() > 0 && w.num_samples() > 0, "stft: empty signal");
  const std::size_t n = w.num_samples();
  const std::size_t frames = frame_count(n);
  const std::size_t M = w.num_channels();
  const auto& win = hann_window();
  const RealFft& fft = RealFft::cached(kWindow);

  ComplexSpectrogram spec = ComplexSpectrogram::zeros(frames, M, n);
  std::vector<double> frame(kWindow);
  std::vector<std::complex<double>> bins(kBins);
  for (std::size_t m = 0; m < M; ++m) {
    const auto& x = w.channels[m];
    require(x.size() == n, "stft: channels differ in length");
    for (std::size_t t = 0; t < frames; ++t) {
      const long start = static_cast<long>(t * kHop) - static_cast<long>(kPad);
      for (std::size_t i = 0; i < kWindow; ++i) frame[i] = x[reflect_index(start + static_cast<long>(i), n)] * win[i];
      fft.forward(frame.data(), bins.data());
      for (std::size_t f = 0; f < kBins; ++f) {
        spec.re.at(f, t, m) = bins[f].real();
        spec.im.at(f, t, m) = bins[f].imag();
      }
    }
  }
  return spec;
}

Waveform istft(const ComplexSpectrogram& spec) {
  const std::size_t frames = spec.frames();
  const std::size_t M = spec.channels();
  require(spec.bins() == kBins, "istft: expected 256 bins");
  const auto& win = hann_window();
  const RealFft& fft = RealFft::cached(kWindow);
  const std::vector<double> env = window_envelope(frames);
  const double inv_n = 1.0 / static_cast<double>(kWindow);

  Waveform out;
  out.channels.assign(M, std::vector<double>(spec.num_samples, 0.0));
  std::vector<double> ola(env.size());
  std::vector<std::complex<double>> bins(kBins);
  std::vector<double> frame(kWindow);
  for (std::size_t m = 0; m < M; ++m) {
    std::fill(ola.begin(), ola.end(), 0.0);
    for (std::size_t t = 0; t < frames; ++t) {
      for (std::size_t f = 0; f < kBins; ++f) bins[f] = {spec.re.at(f, t, m), spec.im.at(f, t, m)};
      fft.inverse(bins.data(), frame.data());
      for (std::size_t i = 0; i < kWindow; ++i) ola[t * kHop + i] += frame[i] * inv_n * win[i];
    }
    for (std::size_t i = 0; i < spec.num_samples && i + kPad < ola.size(); ++i) {
      const double e = env[i + kPad];
      out.channels[m][i] = e > 1e-11 ? ola[i + kPad] / e : 0.0;
    }
  }
  return out;
}

std::pair<Tensor<double>, Tensor<double>> istft_adjoint(std::span<const double> grad_out,
                                                        std::size_t frames) {
  const auto& win = hann_window();
  const RealFft& fft = RealFft::cached(kWindow);
  const std::vector<double> env = window_envelope(frames);
  const double inv_n = 1.0 / static_cast<double>(kWindow);

  // Adjoint of trim + envelope normalisation.
  std::vector<double> g_ola(env.size(), 0.0);
  for (std::size_t i = 0; i < grad_out.size() && i + kPad < env.size(); ++i) {
    const double e = env[i + kPad];
    g_ola[i + kPad] = e > 1e-11 ? grad_out[i] / e : 0.0;
  }

  Tensor<double> g_re({kBins, frames, 1}), g_im({kBins, frames, 1});
  std::vector<double> frame(kWindow);
  std::vector<std::complex<double>> bins(kBins);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t i = 0; i < kWindow; ++i) frame[i] = g_ola[t * kHop + i] * win[i] * inv_n;
    fft.forward(frame.data(), bins.data());
    // Adjoint of the unnormalised c2r: DC and Nyquist weight 1, others 2;
    // imaginary parts of DC and Nyquist do not reach the output.
    for (std::size_t f = 0; f < kBins; ++f) {
      const bool edge = f == 0 || f == kBins - 1;
      const double c = edge ? 1.0 : 2.0;
      g_re.at(f, t, 0) = c * bins[f].real();
      g_im.at(f, t, 0) = edge ? 0.0 : c * bins[f].imag();
    }
  }
  return {std::move(g_re), std::move(g_im)};
}

}  // namespace lmfca::dsp
