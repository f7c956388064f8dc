// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lmfca/dsp/waveform.hpp"
#include "lmfca/room/scene.hpp"

namespace lmfca::room {

/// Per-reflection pressure amplitude used for every image.
///  Calibrated: chosen so the shoebox image field decays by 60 dB in t60
///  SabinePressure: sqrt(1 - alpha)
///  SabineEnergy: 1 - alpha
enum class ReflectionModel { Calibrated, SabinePressure, SabineEnergy };

struct RirOptions {
  int max_order = -1;          // < 0: bounded by path length only
  double max_path = 0.0;       // metres; <= 0 means c * t60
  ReflectionModel model = ReflectionModel::Calibrated;
  std::optional<double> reflection;  // overrides the model
  bool high_pass = true;       // 100 Hz Allen-Berkley filter on the reflections
};

struct Rir {
  std::vector<double> taps;
  int sample_rate = dsp::kSampleRate;
  int max_order = 0;            // highest reflection order present
  double reflection = 0.0;
  std::size_t direct_index = 0;
};

struct ImageSource {
  Vec3 position;
  int order = 0;
};

double reflection_coefficient(const Room& room, ReflectionModel model);

/// Images of `source` with at most `max_order` reflections (< 0: unbounded)
/// lying within `max_path` of `receiver`.
std::vector<ImageSource> enumerate_images(const Room& room, const Vec3& source, const Vec3& receiver,
                                          int max_order, double max_path);

Rir image_method_rir(const RoomScene& scene, std::size_t mic, const RirOptions& options = {});
/// Order-0 image only: one tap of 1/(4 pi d) at round(d fs / c).
Rir direct_path_rir(const RoomScene& scene, std::size_t mic);

inline std::size_t delay_samples(double metres, int fs = dsp::kSampleRate) {
  return static_cast<std::size_t>(std::llround(metres * fs / kSpeedOfSound));
}

/// Backward-integrated energy decay in dB relative to the total.
std::vector<double> schroeder_curve_db(std::span<const double> taps);
/// Reverberation time from a line fit of the decay curve between
/// `from_db` and `to_db`, extrapolated to 60 dB.
double schroeder_t60(std::span<const double> taps, int fs = dsp::kSampleRate, double from_db = -5.0,
                     double to_db = -25.0);

}  // namespace lmfca::room
