// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "lmfca/dsp/mask.hpp"
#include "lmfca/dsp/segment.hpp"
#include "lmfca/room/synth.hpp"
#include "lmfca/tensor.hpp"

namespace lmfca::train {

/// One padded segment ready for the network and the loss.
struct TrainingExample {
  std::string id;
  Tensor<float> input;              // F x T x 2M, normalised
  dsp::MaskPair target;             // cIRM of the direct-path reference
  dsp::ComplexSpectrogram mix_ref;  // reference channel, not normalised
  std::vector<double> direct_ref;   // padded, same length as the segment
};

/// Index of the reference microphone among the model's input channels.
std::size_t reference_index(std::size_t mics);

/// Channels a model with `mics` inputs consumes: all of them, or only the
/// reference microphone for a single-input model.
dsp::Waveform select_model_channels(const dsp::Waveform& mixture, std::size_t mics);

/// Cuts an utterance into padded segments. Segments whose reference channel
/// or target is silent are dropped.
std::vector<TrainingExample> make_examples(const std::string& id, const dsp::Waveform& mixture,
                                           const dsp::Waveform& direct_ref, std::size_t mics,
                                           double seg_seconds = dsp::kSegmentSeconds);

/// Loads and segments every record of `split`. Order follows the manifest.
std::vector<TrainingExample> load_split(const room::Manifest& manifest, const std::string& split,
                                        std::size_t mics, unsigned threads = 1);

}  // namespace lmfca::train
