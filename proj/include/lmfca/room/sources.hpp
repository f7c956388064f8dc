// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

// Stand-in signals for running the pipeline without external corpora.

#pragma once

#include <cstdint>

#include "lmfca/dsp/waveform.hpp"

namespace lmfca::room {

/// Voiced syllables (glottal harmonics shaped by two formants) alternating
/// with fricative bursts and pauses. Peak amplitude 0.5.
dsp::Waveform synthetic_speech(std::size_t num_samples, std::uint64_t seed);

/// Pink noise with a slow level drift and a mains hum component.
dsp::Waveform synthetic_noise(std::size_t num_samples, std::uint64_t seed);

}  // namespace lmfca::room
