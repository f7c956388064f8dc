// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/dsp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

#include "lmfca/errors.hpp"

namespace lmfca::dsp {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  require(n >= 2, "RealFft: size must be at least 2");
  std::lock_guard lock(planner_mutex());
  double* r = fftw_alloc_real(n);
  fftw_complex* c = fftw_alloc_complex(n / 2 + 1);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), r, c, flags);
  inverse_plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), c, r, flags | FFTW_DESTROY_INPUT);
  fftw_free(r);
  fftw_free(c);
  if (!forward_plan_ || !inverse_plan_) throw std::runtime_error("FFTW planning failed");
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void RealFft::forward(const double* in, std::complex<double>* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void RealFft::inverse(const std::complex<double>* in, double* out) const {
  thread_local std::vector<std::complex<double>> scratch;
  scratch.assign(in, in + bins());
  scratch[0].imag(0.0);
  if (n_ % 2 == 0) scratch[n_ / 2].imag(0.0);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

const RealFft& RealFft::cached(std::size_t n) {
  static std::mutex m;
  static std::map<std::size_t, std::unique_ptr<RealFft>> cache;
  std::lock_guard lock(m);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RealFft>(n);
  return *slot;
}

std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b,
                                 std::size_t out_len) {
  if (a.empty() || b.empty()) return std::vector<double>(out_len, 0.0);
  const std::size_t full = a.size() + b.size() - 1;
  if (out_len == 0) out_len = full;
  const std::size_t n = next_pow2(full);
  const RealFft& fft = RealFft::cached(n);
  std::vector<double> pa(n, 0.0), pb(n, 0.0);
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());
  std::vector<std::complex<double>> A(fft.bins()), B(fft.bins());
  fft.forward(pa.data(), A.data());
  fft.forward(pb.data(), B.data());
  for (std::size_t k = 0; k < A.size(); ++k) A[k] *= B[k];
  fft.inverse(A.data(), pa.data());
  std::vector<double> out(out_len, 0.0);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < std::min(out_len, full); ++i) out[i] = pa[i] * inv;
  return out;
}

}  // namespace lmfca::dsp
