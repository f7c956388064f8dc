// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "lmfca/room/mixture.hpp"
#include "lmfca/room/sources.hpp"
#include "lmfca/train/dataset.hpp"

namespace lmfca::testing {

/// Reverberant, noisy six-channel mixtures built from the synthetic sources.
inline std::vector<room::MixtureExample> synthetic_mixtures(std::size_t count, double seconds, std::uint64_t seed,
                                                            double snr_db = 6.0) {
  std::vector<room::MixtureExample> out;
  const auto n = static_cast<std::size_t>(seconds * dsp::kSampleRate);
  for (std::size_t i = 0; i < count; ++i) {
    const auto scene = room::sample_scene(seed + 100 + i);
    out.push_back(room::render_mixture(scene, room::synthetic_speech(n, seed + 10 + i),
                                       room::synthetic_noise(n, seed + 20 + i), snr_db, seed + 30 + i));
  }
  return out;
}

inline std::vector<train::TrainingExample> synthetic_examples(std::size_t count, double seconds, std::uint64_t seed,
                                                              std::size_t mics = 6) {
  std::vector<train::TrainingExample> out;
  const auto mixes = synthetic_mixtures(count, seconds, seed);
  for (std::size_t i = 0; i < mixes.size(); ++i)
    for (auto& ex : train::make_examples("ex" + std::to_string(i), mixes[i].mixture, mixes[i].direct_ref, mics))
      out.push_back(std::move(ex));
  return out;
}

}  // namespace lmfca::testing
