// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <functional>
#include <memory>

#include "lmfca/dsp/mask.hpp"
#include "lmfca/model/config.hpp"
#include "lmfca/parameters.hpp"

namespace lmfca::eval {

/// What a mask estimator sees for one padded segment.
struct SegmentInput {
  const dsp::ComplexSpectrogram& mixture;  // the model's input channels
  std::size_t ref;                         // reference channel within `mixture`
  const dsp::ComplexSpectrogram* direct;   // direct-path reference when known
};

using MaskEstimator = std::function<dsp::MaskPair(const SegmentInput&)>;

/// Unit mask: the output is the reference channel.
MaskEstimator identity_estimator();
/// cIRM of the known direct-path reference.
MaskEstimator oracle_estimator();

struct Model {
  model::ModelConfig config;
  ParameterStore<float> params;

  /// Throws LoadError on unreadable files or a config/parameter mismatch.
  static Model load(const std::filesystem::path& checkpoint);
};

/// Network mask. Segments with a silent reference channel get a zero mask.
MaskEstimator model_estimator(std::shared_ptr<const Model> model);

/// Segments, estimates a mask per segment, reconstructs the reference channel
/// and trims. The result is mono with the input's length.
dsp::Waveform enhance(const dsp::Waveform& mixture, std::size_t mics, const MaskEstimator& estimator,
                      const dsp::Waveform* direct = nullptr);

}  // namespace lmfca::eval
