// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/ops.hpp"

#include <Eigen/Core>
#include <cmath>

namespace lmfca {

const char* to_string(Axis axis) { return axis == Axis::Time ? "time" : "frequency"; }

namespace ops {
namespace {

template <typename S>
using RowMat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename S>
using MapMat = Eigen::Map<RowMat<S>>;
template <typename S>
using CMapMat = Eigen::Map<const RowMat<S>>;

struct Dims {
  std::size_t f, t, c;
};

template <typename S>
Dims dims3(const Tensor<S>& x, const char* op) {
  require(x.rank() == 3, std::string(op) + ": expected F x T x C input, got " + to_string(x.shape()));
  return {x.extent(0), x.extent(1), x.extent(2)};
}

template <typename S>
void require_same_shape(const Var<S>& a, const Var<S>& b, const char* op) {
  require(a.shape() == b.shape(), std::string(op) + ": shape mismatch " + to_string(a.shape()) +
                                      " vs " + to_string(b.shape()));
}

// out[f,t,c] += sum_{i,j} x[f+i-p, t+j-p, c] * w[i,j,c]
template <typename S>
void depthwise_forward(const S* x, const S* w, S* out, Dims d, std::size_t k) {
  const long p = static_cast<long>(k / 2);
  const long F = static_cast<long>(d.f), T = static_cast<long>(d.t);
  const std::size_t C = d.c;
  for (long i = 0; i < static_cast<long>(k); ++i) {
    for (long j = 0; j < static_cast<long>(k); ++j) {
      const S* wij = w + (i * k + j) * C;
      const long df = i - p, dt = j - p;
      for (long f = std::max(0L, -df); f < std::min(F, F - df); ++f) {
        for (long t = std::max(0L, -dt); t < std::min(T, T - dt); ++t) {
          S* o = out + (f * T + t) * C;
          const S* xi = x + ((f + df) * T + (t + dt)) * C;
          for (std::size_t c = 0; c < C; ++c) o[c] += xi[c] * wij[c];
        }
      }
    }
  }
}

template <typename S>
void depthwise_backward(const S* x, const S* w, const S* gy, S* gx, S* gw, Dims d, std::size_t k) {
  const long p = static_cast<long>(k / 2);
  const long F = static_cast<long>(d.f), T = static_cast<long>(d.t);
  const std::size_t C = d.c;
  for (long i = 0; i < static_cast<long>(k); ++i) {
    for (long j = 0; j < static_cast<long>(k); ++j) {
      const S* wij = w + (i * k + j) * C;
      S* gwij = gw ? gw + (i * k + j) * C : nullptr;
      const long df = i - p, dt = j - p;
      for (long f = std::max(0L, -df); f < std::min(F, F - df); ++f) {
        for (long t = std::max(0L, -dt); t < std::min(T, T - dt); ++t) {
          const S* g = gy + (f * T + t) * C;
          const std::size_t src = ((f + df) * T + (t + dt)) * C;
          if (gx) {
            S* gxi = gx + src;
            for (std::size_t c = 0; c < C; ++c) gxi[c] += g[c] * wij[c];
          }
          if (gwij) {
            const S* xi = x + src;
            for (std::size_t c = 0; c < C; ++c) gwij[c] += g[c] * xi[c];
          }
        }
      }
    }
  }
}

// Offsets along the convolved axis: element stride and extent.
struct AxisWalk {
  std::size_t outer, len, inner_stride, outer_stride;
};

AxisWalk axis_walk(Dims d, Axis axis) {
  // Time: for each f, walk t with stride C. Frequency: for each t, walk f with stride T*C.
  if (axis == Axis::Time) return {d.f, d.t, d.c, d.t * d.c};
  return {d.t, d.f, d.t * d.c, d.c};
}

template <typename S>
void axis_forward(const S* x, const S* w, S* out, Dims d, std::size_t K, Axis axis) {
  const AxisWalk a = axis_walk(d, axis);
  const long p = static_cast<long>(K / 2), L = static_cast<long>(a.len);
  for (std::size_t o = 0; o < a.outer; ++o) {
    const std::size_t base = o * a.outer_stride;
    for (long k = 0; k < static_cast<long>(K); ++k) {
      const S* wk = w + k * d.c;
      const long off = k - p;
      for (long n = std::max(0L, -off); n < std::min(L, L - off); ++n) {
        S* y = out + base + n * a.inner_stride;
        const S* xi = x + base + (n + off) * a.inner_stride;
        for (std::size_t c = 0; c < d.c; ++c) y[c] += xi[c] * wk[c];
      }
    }
  }
}

template <typename S>
void axis_backward(const S* x, const S* w, const S* gy, S* gx, S* gw, Dims d, std::size_t K,
                   Axis axis) {
  const AxisWalk a = axis_walk(d, axis);
  const long p = static_cast<long>(K / 2), L = static_cast<long>(a.len);
  for (std::size_t o = 0; o < a.outer; ++o) {
    const std::size_t base = o * a.outer_stride;
    for (long k = 0; k < static_cast<long>(K); ++k) {
      const S* wk = w + k * d.c;
      S* gwk = gw ? gw + k * d.c : nullptr;
      const long off = k - p;
      for (long n = std::max(0L, -off); n < std::min(L, L - off); ++n) {
        const S* g = gy + base + n * a.inner_stride;
        const std::size_t src = base + (n + off) * a.inner_stride;
        if (gx) {
          for (std::size_t c = 0; c < d.c; ++c) gx[src + c] += g[c] * wk[c];
        }
        if (gwk) {
          for (std::size_t c = 0; c < d.c; ++c) gwk[c] += g[c] * x[src + c];
        }
      }
    }
  }
}

template <typename S>
void check_pool_input(Dims d, const char* op) {
  require(d.f % 2 == 0 && d.t % 2 == 0,
          std::string(op) + ": F and T must be even, got " + std::to_string(d.f) + "x" +
              std::to_string(d.t));
}

}  // namespace

// Row by row so the summation order does not depend on buffer alignment.
template <typename S>
void add_column_sums(const S* g, std::size_t rows, std::size_t cols, S* out) {
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out[c] += g[r * cols + c];
}

template <typename S>
Var<S> conv2d_pointwise(const Var<S>& x, const Var<S>& w, const Var<S>& b) {
  const Dims d = dims3(x.value(), "conv2d_pointwise");
  require(w.value().rank() == 2 && w.value().extent(0) == d.c,
          "conv2d_pointwise: kernel " + to_string(w.shape()) + " does not match input channels " +
              std::to_string(d.c));
  const std::size_t cout = w.value().extent(1);
  if (b.defined()) {
    require(b.value().rank() == 1 && b.value().extent(0) == cout, "conv2d_pointwise: bad bias shape");
  }
  const std::size_t P = d.f * d.t;
  Tensor<S> out({d.f, d.t, cout});
  MapMat<S> Y(out.ptr(), P, cout);
  Y.noalias() = CMapMat<S>(x.value().ptr(), P, d.c) * CMapMat<S>(w.value().ptr(), d.c, cout);
  if (b.defined()) {
    Y.rowwise() += Eigen::Map<const Eigen::Matrix<S, 1, Eigen::Dynamic>>(b.value().ptr(), cout);
  }
  MacTally::add(static_cast<unsigned long long>(P) * d.c * cout);

  return make_result<S>(
      std::move(out), {x, w, b},
      [d, cout, P](Node<S>& self) {
        CMapMat<S> G(self.grad.ptr(), P, cout);
        const auto& xv = self.inputs[0]->value;
        const auto& wv = self.inputs[1]->value;
        if (auto* gx = input_grad(self, 0)) {
          MapMat<S>(gx->ptr(), P, d.c).noalias() += G * CMapMat<S>(wv.ptr(), d.c, cout).transpose();
        }
        if (auto* gw = input_grad(self, 1)) {
          MapMat<S>(gw->ptr(), d.c, cout).noalias() += CMapMat<S>(xv.ptr(), P, d.c).transpose() * G;
        }
        if (self.inputs[2]) {
          if (auto* gb = input_grad(self, 2)) {
            add_column_sums(G.data(), P, cout, gb->ptr());
          }
        }
      },
      "conv2d_pointwise");
}

template <typename S>
Var<S> conv2d_depthwise(const Var<S>& x, const Var<S>& w) {
  const Dims d = dims3(x.value(), "conv2d_depthwise");
  const auto& ws = w.shape();
  require(ws.size() == 3 && ws[0] == ws[1], "conv2d_depthwise: kernel must be k x k x C, got " +
                                                to_string(ws));
  const std::size_t k = ws[0];
  require(k % 2 == 1, "conv2d_depthwise: kernel size must be odd, got " + std::to_string(k));
  require(ws[2] == d.c, "conv2d_depthwise: kernel channels " + std::to_string(ws[2]) +
                            " != input channels " + std::to_string(d.c));
  Tensor<S> out({d.f, d.t, d.c});
  depthwise_forward(x.value().ptr(), w.value().ptr(), out.ptr(), d, k);
  MacTally::add(static_cast<unsigned long long>(d.f) * d.t * d.c * k * k);
  return make_result<S>(
      std::move(out), {x, w},
      [d, k](Node<S>& self) {
        auto* gx = input_grad(self, 0);
        auto* gw = input_grad(self, 1);
        depthwise_backward(self.inputs[0]->value.ptr(), self.inputs[1]->value.ptr(),
                           self.grad.ptr(), gx ? gx->ptr() : nullptr, gw ? gw->ptr() : nullptr, d,
                           k);
      },
      "conv2d_depthwise");
}

template <typename S>
Var<S> conv1d_depthwise_axis(const Var<S>& x, const Var<S>& w, Axis axis) {
  const Dims d = dims3(x.value(), "conv1d_depthwise_axis");
  require(axis == Axis::Time || axis == Axis::Frequency, "conv1d_depthwise_axis: unknown axis");
  const auto& ws = w.shape();
  require(ws.size() == 2 && ws[1] == d.c,
          "conv1d_depthwise_axis: kernel must be K x C, got " + to_string(ws));
  const std::size_t K = ws[0];
  require(K % 2 == 1, "conv1d_depthwise_axis: kernel size must be odd, got " + std::to_string(K));
  Tensor<S> out({d.f, d.t, d.c});
  axis_forward(x.value().ptr(), w.value().ptr(), out.ptr(), d, K, axis);
  MacTally::add(static_cast<unsigned long long>(d.f) * d.t * d.c * K);
  return make_result<S>(
      std::move(out), {x, w},
      [d, K, axis](Node<S>& self) {
        auto* gx = input_grad(self, 0);
        auto* gw = input_grad(self, 1);
        axis_backward(self.inputs[0]->value.ptr(), self.inputs[1]->value.ptr(), self.grad.ptr(),
                      gx ? gx->ptr() : nullptr, gw ? gw->ptr() : nullptr, d, K, axis);
      },
      "conv1d_depthwise_axis");
}

template <typename S>
Var<S> avg_pool2(const Var<S>& x) {
  const Dims d = dims3(x.value(), "avg_pool2");
  check_pool_input<S>(d, "avg_pool2");
  const std::size_t F2 = d.f / 2, T2 = d.t / 2, C = d.c;
  Tensor<S> out({F2, T2, C});
  const auto& xv = x.value();
  for (std::size_t f = 0; f < F2; ++f)
    for (std::size_t t = 0; t < T2; ++t)
      for (std::size_t c = 0; c < C; ++c)
        out.at(f, t, c) = S(0.25) * (xv.at(2 * f, 2 * t, c) + xv.at(2 * f, 2 * t + 1, c) +
                                     xv.at(2 * f + 1, 2 * t, c) + xv.at(2 * f + 1, 2 * t + 1, c));
  return make_result<S>(
      std::move(out), {x},
      [F2, T2, C](Node<S>& self) {
        auto* gx = input_grad(self, 0);
        for (std::size_t f = 0; f < F2; ++f)
          for (std::size_t t = 0; t < T2; ++t)
            for (std::size_t c = 0; c < C; ++c) {
              const S g = S(0.25) * self.grad.at(f, t, c);
              gx->at(2 * f, 2 * t, c) += g;
              gx->at(2 * f, 2 * t + 1, c) += g;
              gx->at(2 * f + 1, 2 * t, c) += g;
              gx->at(2 * f + 1, 2 * t + 1, c) += g;
            }
      },
      "avg_pool2");
}

template <typename S>
Var<S> max_pool2(const Var<S>& x) {
  const Dims d = dims3(x.value(), "max_pool2");
  check_pool_input<S>(d, "max_pool2");
  const std::size_t F2 = d.f / 2, T2 = d.t / 2, C = d.c;
  Tensor<S> out({F2, T2, C});
  std::vector<unsigned char> argmax(out.size());
  const auto& xv = x.value();
  for (std::size_t f = 0; f < F2; ++f)
    for (std::size_t t = 0; t < T2; ++t)
      for (std::size_t c = 0; c < C; ++c) {
        S best = xv.at(2 * f, 2 * t, c);
        unsigned char which = 0;
        for (unsigned char q = 1; q < 4; ++q) {
          const S v = xv.at(2 * f + q / 2, 2 * t + q % 2, c);
          if (v > best) best = v, which = q;
        }
        out.at(f, t, c) = best;
        argmax[(f * T2 + t) * C + c] = which;
      }
  return make_result<S>(
      std::move(out), {x},
      [F2, T2, C, argmax = std::move(argmax)](Node<S>& self) {
        auto* gx = input_grad(self, 0);
        for (std::size_t f = 0; f < F2; ++f)
          for (std::size_t t = 0; t < T2; ++t)
            for (std::size_t c = 0; c < C; ++c) {
              const unsigned char q = argmax[(f * T2 + t) * C + c];
              gx->at(2 * f + q / 2, 2 * t + q % 2, c) += self.grad.at(f, t, c);
            }
      },
      "max_pool2");
}

template <typename S>
Var<S> transposed_conv2(const Var<S>& x, const Var<S>& w, const Var<S>& b) {
  const Dims d = dims3(x.value(), "transposed_conv2");
  const auto& ws = w.shape();
  require(ws.size() == 4 && ws[0] == 2 && ws[1] == 2 && ws[2] == d.c,
          "transposed_conv2: kernel must be 2 x 2 x Cin x Cout with Cin=" + std::to_string(d.c) +
              ", got " + to_string(ws));
  const std::size_t cout = ws[3], P = d.f * d.t;
  if (b.defined()) {
    require(b.value().rank() == 1 && b.value().extent(0) == cout, "transposed_conv2: bad bias shape");
  }
  Tensor<S> out({2 * d.f, 2 * d.t, cout});
  CMapMat<S> X(x.value().ptr(), P, d.c);
  RowMat<S> tmp(P, cout);
  for (std::size_t q = 0; q < 4; ++q) {
    const std::size_t a = q / 2, bb = q % 2;
    tmp.noalias() = X * CMapMat<S>(w.value().ptr() + q * d.c * cout, d.c, cout);
    for (std::size_t f = 0; f < d.f; ++f)
      for (std::size_t t = 0; t < d.t; ++t) {
        S* o = &out.at(2 * f + a, 2 * t + bb, 0);
        const S* src = tmp.data() + (f * d.t + t) * cout;
        for (std::size_t c = 0; c < cout; ++c) o[c] = src[c] + (b.defined() ? b.value()[c] : S{0});
      }
  }
  MacTally::add(static_cast<unsigned long long>(P) * d.c * cout * 4);
  return make_result<S>(
      std::move(out), {x, w, b},
      [d, cout, P](Node<S>& self) {
        const auto& xv = self.inputs[0]->value;
        const auto& wv = self.inputs[1]->value;
        auto* gx = input_grad(self, 0);
        auto* gw = input_grad(self, 1);
        Tensor<S>* gb = self.inputs[2] ? input_grad(self, 2) : nullptr;
        RowMat<S> G(P, cout);
        for (std::size_t q = 0; q < 4; ++q) {
          const std::size_t a = q / 2, bb = q % 2;
          for (std::size_t f = 0; f < d.f; ++f)
            for (std::size_t t = 0; t < d.t; ++t) {
              const S* g = &self.grad.at(2 * f + a, 2 * t + bb, 0);
              std::copy(g, g + cout, G.data() + (f * d.t + t) * cout);
            }
          if (gx) {
            MapMat<S>(gx->ptr(), P, d.c).noalias() +=
                G * CMapMat<S>(wv.ptr() + q * d.c * cout, d.c, cout).transpose();
          }
          if (gw) {
            MapMat<S>(gw->ptr() + q * d.c * cout, d.c, cout).noalias() +=
                CMapMat<S>(xv.ptr(), P, d.c).transpose() * G;
          }
          if (gb) {
            add_column_sums(G.data(), P, cout, gb->ptr());
          }
        }
      },
      "transposed_conv2");
}

template <typename S>
Var<S> nearest_upsample2(const Var<S>& x) {
  const Dims d = dims3(x.value(), "nearest_upsample2");
  Tensor<S> out({2 * d.f, 2 * d.t, d.c});
  const auto& xv = x.value();
  for (std::size_t f = 0; f < 2 * d.f; ++f)
    for (std::size_t t = 0; t < 2 * d.t; ++t) {
      const S* src = &xv.at(f / 2, t / 2, 0);
      std::copy(src, src + d.c, &out.at(f, t, 0));
    }
  return make_result<S>(
      std::move(out), {x},
      [d](Node<S>& self) {
        auto* gx = input_grad(self, 0);
        for (std::size_t f = 0; f < 2 * d.f; ++f)
          for (std::size_t t = 0; t < 2 * d.t; ++t) {
            const S* g = &self.grad.at(f, t, 0);
            S* dst = &gx->at(f / 2, t / 2, 0);
            for (std::size_t c = 0; c < d.c; ++c) dst[c] += g[c];
          }
      },
      "nearest_upsample2");
}

template <typename S>
Var<S> sigmoid(const Var<S>& x) {
  Tensor<S> out(x.shape());
  const auto& xv = x.value();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const S v = xv[i];
    out[i] = v >= 0 ? S(1) / (S(1) + std::exp(-v)) : std::exp(v) / (S(1) + std::exp(v));
  }
  return make_result<S>(
      std::move(out), {x},
      [](Node<S>& self) {
        const auto& yv = self.value;
        auto* gx = input_grad(self, 0);
        for (std::size_t i = 0; i < yv.size(); ++i) (*gx)[i] += self.grad[i] * yv[i] * (S(1) - yv[i]);
      },
      "sigmoid");
}

template <typename S>
Var<S> prelu(const Var<S>& x, const Var<S>& slope) {
  const Dims d = dims3(x.value(), "prelu");
  require(slope.value().rank() == 1 && slope.value().extent(0) == d.c,
          "prelu: slope must have one value per channel");
  Tensor<S> out(x.shape());
  const auto& xv = x.value();
  const auto& a = slope.value();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const S v = xv[i];
    out[i] = v > 0 ? v : a[i % d.c] * v;
  }
  return make_result<S>(
      std::move(out), {x, slope},
      [d](Node<S>& self) {
        const auto& xv = self.inputs[0]->value;
        const auto& a = self.inputs[1]->value;
        auto* gx = input_grad(self, 0);
        auto* ga = input_grad(self, 1);
        for (std::size_t i = 0; i < xv.size(); ++i) {
          const S g = self.grad[i];
          const std::size_t c = i % d.c;
          if (xv[i] > 0) {
            if (gx) (*gx)[i] += g;
          } else {
            if (gx) (*gx)[i] += g * a[c];
            if (ga) (*ga)[c] += g * xv[i];
          }
        }
      },
      "prelu");
}

template <typename S>
Var<S> mul(const Var<S>& a, const Var<S>& b) {
  require_same_shape(a, b, "mul");
  Tensor<S> out(a.shape());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.value()[i] * b.value()[i];
  return make_result<S>(
      std::move(out), {a, b},
      [](Node<S>& self) {
        const auto& av = self.inputs[0]->value;
        const auto& bv = self.inputs[1]->value;
        if (auto* ga = input_grad(self, 0))
          for (std::size_t i = 0; i < av.size(); ++i) (*ga)[i] += self.grad[i] * bv[i];
        if (auto* gb = input_grad(self, 1))
          for (std::size_t i = 0; i < av.size(); ++i) (*gb)[i] += self.grad[i] * av[i];
      },
      "mul");
}

template <typename S>
Var<S> add(const Var<S>& a, const Var<S>& b) {
  require_same_shape(a, b, "add");
  Tensor<S> out(a.shape());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.value()[i] + b.value()[i];
  return make_result<S>(
      std::move(out), {a, b},
      [](Node<S>& self) {
        if (auto* ga = input_grad(self, 0)) *ga += self.grad;
        if (auto* gb = input_grad(self, 1)) *gb += self.grad;
      },
      "add");
}

template <typename S>
Var<S> scale(const Var<S>& x, S factor) {
  Tensor<S> out(x.shape());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = factor * x.value()[i];
  return make_result<S>(
      std::move(out), {x},
      [factor](Node<S>& self) {
        auto* gx = input_grad(self, 0);
        for (std::size_t i = 0; i < gx->size(); ++i) (*gx)[i] += factor * self.grad[i];
      },
      "scale");
}

template <typename S>
Var<S> concat_channels(const Var<S>& a, const Var<S>& b) {
  const Dims da = dims3(a.value(), "concat_channels");
  const Dims db = dims3(b.value(), "concat_channels");
  require(da.f == db.f && da.t == db.t,
          "concat_channels: F/T mismatch " + to_string(a.shape()) + " vs " + to_string(b.shape()));
  const std::size_t C = da.c + db.c, P = da.f * da.t;
  Tensor<S> out({da.f, da.t, C});
  for (std::size_t p = 0; p < P; ++p) {
    std::copy_n(a.value().ptr() + p * da.c, da.c, out.ptr() + p * C);
    std::copy_n(b.value().ptr() + p * db.c, db.c, out.ptr() + p * C + da.c);
  }
  return make_result<S>(
      std::move(out), {a, b},
      [da, db, C, P](Node<S>& self) {
        auto* ga = input_grad(self, 0);
        auto* gb = input_grad(self, 1);
        for (std::size_t p = 0; p < P; ++p) {
          const S* g = self.grad.ptr() + p * C;
          if (ga)
            for (std::size_t c = 0; c < da.c; ++c) ga->ptr()[p * da.c + c] += g[c];
          if (gb)
            for (std::size_t c = 0; c < db.c; ++c) gb->ptr()[p * db.c + c] += g[da.c + c];
        }
      },
      "concat_channels");
}

template <typename S>
Var<S> mse(const Var<S>& a, const Var<S>& b) {
  require_same_shape(a, b, "mse");
  require(a.value().size() > 0, "mse: empty input");
  const std::size_t n = a.value().size();
  S acc{0};
  for (std::size_t i = 0; i < n; ++i) {
    const S e = a.value()[i] - b.value()[i];
    acc += e * e;
  }
  return make_result<S>(
      Tensor<S>::scalar(acc / static_cast<S>(n)), {a, b},
      [n](Node<S>& self) {
        const auto& av = self.inputs[0]->value;
        const auto& bv = self.inputs[1]->value;
        const S k = S(2) * self.grad[0] / static_cast<S>(n);
        auto* ga = input_grad(self, 0);
        auto* gb = input_grad(self, 1);
        for (std::size_t i = 0; i < n; ++i) {
          const S e = k * (av[i] - bv[i]);
          if (ga) (*ga)[i] += e;
          if (gb) (*gb)[i] -= e;
        }
      },
      "mse");
}

template <typename S>
Var<S> mean_of(const std::vector<Var<S>>& scalars) {
  require(!scalars.empty(), "mean_of: no inputs");
  S acc{0};
  for (const auto& s : scalars) {
    require(s.value().size() == 1, "mean_of: inputs must be scalars");
    acc += s.value()[0];
  }
  const S inv = S(1) / static_cast<S>(scalars.size());
  return make_result<S>(
      Tensor<S>::scalar(acc * inv), scalars,
      [inv](Node<S>& self) {
        for (std::size_t i = 0; i < self.inputs.size(); ++i)
          if (auto* g = input_grad(self, i)) (*g)[0] += inv * self.grad[0];
      },
      "mean_of");
}

#define LMFCA_INSTANTIATE_OPS(S)                                                          \
  template Var<S> conv2d_pointwise(const Var<S>&, const Var<S>&, const Var<S>&);         \
  template Var<S> conv2d_depthwise(const Var<S>&, const Var<S>&);                        \
  template Var<S> conv1d_depthwise_axis(const Var<S>&, const Var<S>&, Axis);             \
  template Var<S> avg_pool2(const Var<S>&);                                              \
  template Var<S> max_pool2(const Var<S>&);                                              \
  template Var<S> transposed_conv2(const Var<S>&, const Var<S>&, const Var<S>&);         \
  template Var<S> nearest_upsample2(const Var<S>&);                                      \
  template Var<S> sigmoid(const Var<S>&);                                                \
  template Var<S> prelu(const Var<S>&, const Var<S>&);                                   \
  template Var<S> mul(const Var<S>&, const Var<S>&);                                     \
  template Var<S> add(const Var<S>&, const Var<S>&);                                     \
  template Var<S> scale(const Var<S>&, S);                                               \
  template Var<S> concat_channels(const Var<S>&, const Var<S>&);                         \
  template Var<S> mse(const Var<S>&, const Var<S>&);                                     \
  template Var<S> mean_of(const std::vector<Var<S>>&);

LMFCA_INSTANTIATE_OPS(float)
LMFCA_INSTANTIATE_OPS(double)

}  // namespace ops
}  // namespace lmfca
