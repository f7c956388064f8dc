// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lmfca::dsp {

/// Real-input FFT of a fixed size backed by FFTW. Plans are created once per
/// size (serialised internally); execution is safe from any thread.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }

  /// n reals -> n/2+1 complex bins.
  void forward(const double* in, std::complex<double>* out) const;
  /// n/2+1 bins -> n reals, unnormalised (result is n times the true inverse).
  /// Imaginary parts of the DC and (for even n) Nyquist bins are ignored.
  void inverse(const std::complex<double>* in, double* out) const;

  static const RealFft& cached(std::size_t n);

 private:
  std::size_t n_;
  void* forward_plan_;
  void* inverse_plan_;
};

/// Linear convolution truncated to `out_len` samples (full length when 0).
std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b,
                                 std::size_t out_len = 0);

}  // namespace lmfca::dsp
