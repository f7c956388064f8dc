// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

// Differentiable ops over F x T x C feature maps.
//
// Kernel layouts:
//   pointwise   w: Cin x Cout,       b: Cout
//   depthwise   w: k x k x C         (k odd, zero "same" padding)
//   axis 1D     w: K x C             (K odd, zero "same" padding)
//   transposed  w: 2 x 2 x Cin x Cout, b: Cout (stride 2)
//   prelu       slope: C

#pragma once

#include "lmfca/autograd.hpp"

namespace lmfca {

enum class Axis { Time, Frequency };

const char* to_string(Axis axis);

namespace ops {

template <typename S>
Var<S> conv2d_pointwise(const Var<S>& x, const Var<S>& w, const Var<S>& b = {});

template <typename S>
Var<S> conv2d_depthwise(const Var<S>& x, const Var<S>& w);

template <typename S>
Var<S> conv1d_depthwise_axis(const Var<S>& x, const Var<S>& w, Axis axis);

template <typename S>
Var<S> avg_pool2(const Var<S>& x);

template <typename S>
Var<S> max_pool2(const Var<S>& x);

template <typename S>
Var<S> transposed_conv2(const Var<S>& x, const Var<S>& w, const Var<S>& b = {});

template <typename S>
Var<S> nearest_upsample2(const Var<S>& x);

template <typename S>
Var<S> sigmoid(const Var<S>& x);

template <typename S>
Var<S> prelu(const Var<S>& x, const Var<S>& slope);

template <typename S>
Var<S> mul(const Var<S>& a, const Var<S>& b);

template <typename S>
Var<S> add(const Var<S>& a, const Var<S>& b);

template <typename S>
Var<S> scale(const Var<S>& x, S factor);

template <typename S>
Var<S> concat_channels(const Var<S>& a, const Var<S>& b);

/// Mean of squared differences; returns a scalar.
template <typename S>
Var<S> mse(const Var<S>& a, const Var<S>& b);

/// Sum of scalars scaled by 1/n.
template <typename S>
Var<S> mean_of(const std::vector<Var<S>>& scalars);

}  // namespace ops

/// Thread-local multiply-accumulate tally of the conv ops, used to cross-check
/// the static MAC counter against what a forward pass actually executes.
class MacTally {
 public:
  static void reset() { counter() = 0; }
  static unsigned long long value() { return counter(); }
  static void add(unsigned long long n) { counter() += n; }

 private:
  static unsigned long long& counter() {
    thread_local unsigned long long n = 0;
    return n;
  }
};

}  // namespace lmfca
