// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "lmfca/dsp/mask.hpp"
#include "lmfca/dsp/waveform.hpp"
#include "lmfca/room/rir.hpp"

namespace lmfca::room {

struct SceneRirs {
  std::vector<Rir> mics;  // one per microphone
  Rir direct_ref;         // order-0 image at the reference microphone
};

SceneRirs compute_scene_rirs(const RoomScene& scene, const RirOptions& options = {});

struct MixtureExample {
  dsp::Waveform mixture;     // M = 6
  dsp::Waveform clean_ref;   // reverberant speech at the reference mic
  dsp::Waveform direct_ref;  // direct-path speech at the reference mic
  double snr_db = 0;
  double noise_gain = 0;
};

/// Convolves `clean` with every RIR and adds noise scaled to `snr_db` at the
/// reference microphone. `noise` has 6 channels or 1; mono noise is copied to
/// each mic with an independent random circular shift. Noise shorter than the
/// speech is tiled; longer noise is read from a random offset.
MixtureExample render_mixture(const SceneRirs& rirs, const dsp::Waveform& clean, const dsp::Waveform& noise,
                              double snr_db, std::uint64_t seed);
MixtureExample render_mixture(const RoomScene& scene, const dsp::Waveform& clean, const dsp::Waveform& noise,
                              double snr_db, std::uint64_t seed, const RirOptions& options = {});

/// 10 log10(|s|^2 / |x - s|^2).
double measured_snr_db(std::span<const double> speech, std::span<const double> mixture);

}  // namespace lmfca::room
