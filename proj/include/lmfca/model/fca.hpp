// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lmfca/model/config.hpp"
#include "lmfca/ops.hpp"

namespace lmfca::model {

/// Fully-connected attention weights over a pooled F^ x T^ x C map.
///   wt[t][f][t'][c]: weight of Z(t', f) in output (t, f), shape T^ x F^ x T^ x C
///   wf[t][f][f'][c]: weight of Z(t, f') in output (t, f), shape T^ x F^ x F^ x C
struct DenseFcaWeights {
  Tensor<double> wt;
  Tensor<double> wf;
};

/// Literal sums: Time uses wt only, Frequency wf only, FreqTime applies wt
/// and then wf. Test oracle; not part of the deployable graph.
Tensor<double> fca_attention_dense(const Tensor<double>& z, FcaKind kind, const DenseFcaWeights& w);

/// Dense weights equal to the two same-padded 1D convolutions: the product
/// of their banded (Toeplitz) matrices, identical for every row or column.
DenseFcaWeights banded_dense_weights(const Tensor<double>& d1, const Tensor<double>& d2, FcaKind kind,
                                     std::size_t f_hat, std::size_t t_hat);

/// Two chained 1D depthwise convolutions: both along time (Time), both along
/// frequency (Frequency), or time then frequency (FreqTime). Linear.
template <typename S>
Var<S> fca_attention_decoupled(const Var<S>& z, FcaKind kind, const Var<S>& d1, const Var<S>& d2);

template <typename S>
struct FcaBranchParams {
  Var<S> proj_weight;  // Cin x Cout
  Var<S> proj_bias;    // Cout
  Var<S> d1, d2;       // K x Cout
};

/// avg_pool2 -> PConv projection -> decoupled attention -> sigmoid -> nearest upsample.
template <typename S>
Var<S> fca_branch(const Var<S>& x, FcaKind kind, const FcaBranchParams<S>& p);

}  // namespace lmfca::model
