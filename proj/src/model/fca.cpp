// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/model/fca.hpp"

namespace lmfca::model {
namespace {

// Rank-4 index helper for the dense weight tensors.
inline std::size_t idx4(const Tensor<double>& w, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  const auto& s = w.shape();
  return ((a * s[1] + b) * s[2] + c) * s[3] + d;
}

// Banded matrix of a same-padded correlation along an axis of length n:
// out[i] = sum_j band[i][j] in[j], band[i][j] = w[j - i + p] for channel c.
std::vector<double> band(const Tensor<double>& w, std::size_t c, std::size_t n) {
  const long K = static_cast<long>(w.extent(0)), C = static_cast<long>(w.extent(1)), p = K / 2;
  std::vector<double> m(n * n, 0.0);
  for (long i = 0; i < static_cast<long>(n); ++i)
    for (long j = 0; j < static_cast<long>(n); ++j) {
      const long k = j - i + p;
      if (k >= 0 && k < K) m[i * n + j] = w[k * C + c];
    }
  return m;
}

std::vector<double> matmul(const std::vector<double>& a, const std::vector<double>& b, std::size_t n) {
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += a[i * n + k] * b[k * n + j];
  return out;
}

}  // namespace

Tensor<double> fca_attention_dense(const Tensor<double>& z, FcaKind kind, const DenseFcaWeights& w) {
  require(z.rank() == 3, "fca_attention_dense: expected F x T x C input");
  const std::size_t F = z.extent(0), T = z.extent(1), C = z.extent(2);
  const bool use_t = kind != FcaKind::Frequency, use_f = kind != FcaKind::Time;
  if (use_t) require(w.wt.shape() == Shape{T, F, T, C}, "fca_attention_dense: wt must be T x F x T x C");
  if (use_f) require(w.wf.shape() == Shape{T, F, F, C}, "fca_attention_dense: wf must be T x F x F x C");

  Tensor<double> a = z;
  if (use_t) {
    Tensor<double> out({F, T, C});
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t f = 0; f < F; ++f)
        for (std::size_t c = 0; c < C; ++c) {
          double acc = 0;
          for (std::size_t tp = 0; tp < T; ++tp) acc += w.wt[idx4(w.wt, t, f, tp, c)] * a.at(f, tp, c);
          out.at(f, t, c) = acc;
        }
    a = std::move(out);
  }
  if (use_f) {
    Tensor<double> out({F, T, C});
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t f = 0; f < F; ++f)
        for (std::size_t c = 0; c < C; ++c) {
          double acc = 0;
          for (std::size_t fp = 0; fp < F; ++fp) acc += w.wf[idx4(w.wf, t, f, fp, c)] * a.at(fp, t, c);
          out.at(f, t, c) = acc;
        }
    a = std::move(out);
  }
  return a;
}

DenseFcaWeights banded_dense_weights(const Tensor<double>& d1, const Tensor<double>& d2, FcaKind kind,
                                     std::size_t F, std::size_t T) {
  require(d1.shape() == d2.shape() && d1.rank() == 2, "banded_dense_weights: kernels must both be K x C");
  const std::size_t C = d1.extent(1);
  DenseFcaWeights w;
  // Time weights are indexed by the output frame, frequency weights by the output bin.
  auto fill = [&](Tensor<double>& dst, bool along_time, auto matrix_for) {
    const std::size_t n = along_time ? T : F;
    for (std::size_t c = 0; c < C; ++c) {
      const auto m = matrix_for(c);
      for (std::size_t t = 0; t < T; ++t)
        for (std::size_t f = 0; f < F; ++f)
          for (std::size_t i = 0; i < n; ++i) dst[idx4(dst, t, f, i, c)] = m[(along_time ? t : f) * n + i];
    }
  };
  switch (kind) {
    case FcaKind::Time:
      w.wt = Tensor<double>({T, F, T, C});
      fill(w.wt, true, [&](std::size_t c) { return matmul(band(d2, c, T), band(d1, c, T), T); });
      break;
    case FcaKind::Frequency:
      w.wf = Tensor<double>({T, F, F, C});
      fill(w.wf, false, [&](std::size_t c) { return matmul(band(d2, c, F), band(d1, c, F), F); });
      break;
    case FcaKind::FreqTime:
      w.wt = Tensor<double>({T, F, T, C});
      w.wf = Tensor<double>({T, F, F, C});
      fill(w.wt, true, [&](std::size_t c) { return band(d1, c, T); });
      fill(w.wf, false, [&](std::size_t c) { return band(d2, c, F); });
      break;
  }
  return w;
}

template <typename S>
Var<S> fca_attention_decoupled(const Var<S>& z, FcaKind kind, const Var<S>& d1, const Var<S>& d2) {
  const Axis a1 = kind == FcaKind::Frequency ? Axis::Frequency : Axis::Time;
  const Axis a2 = kind == FcaKind::Time ? Axis::Time : Axis::Frequency;
  return ops::conv1d_depthwise_axis(ops::conv1d_depthwise_axis(z, d1, a1), d2, a2);
}

template <typename S>
Var<S> fca_branch(const Var<S>& x, FcaKind kind, const FcaBranchParams<S>& p) {
  const auto& s = x.shape();
  require(s.size() == 3 && s[0] % 2 == 0 && s[1] % 2 == 0,
          "fca_branch: F and T must be even, got " + lmfca::to_string(s));
  // Pooling and projection are both linear, so pooling first is exact.
  Var<S> z = ops::conv2d_pointwise(ops::avg_pool2(x), p.proj_weight, p.proj_bias);
  return ops::nearest_upsample2(ops::sigmoid(fca_attention_decoupled(z, kind, p.d1, p.d2)));
}

#define LMFCA_INSTANTIATE(S)                                                                     \
  template Var<S> fca_attention_decoupled<S>(const Var<S>&, FcaKind, const Var<S>&, const Var<S>&); \
  template Var<S> fca_branch<S>(const Var<S>&, FcaKind, const FcaBranchParams<S>&);
LMFCA_INSTANTIATE(float)
LMFCA_INSTANTIATE(double)
#undef LMFCA_INSTANTIATE

}  // namespace lmfca::model
