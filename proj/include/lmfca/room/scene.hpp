// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace lmfca::room {

using Vec3 = std::array<double, 3>;

inline double distance(const Vec3& a, const Vec3& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

inline constexpr double kSpeedOfSound = 340.0;
inline constexpr std::size_t kNumMics = 6;
inline constexpr double kArrayRadius = 0.1;

struct SceneLimits {
  double length_min = 4.0, length_max = 10.0;
  double width_min = 4.0, width_max = 10.0;
  double height_min = 2.5, height_max = 3.0;
  double t60_min = 0.3, t60_max = 0.8;
  double source_dist_min = 0.2, source_dist_max = 1.0;
  double wall_margin = 0.1;
  int max_tries = 10000;
};

struct Room {
  double length = 0, width = 0, height = 0;  // x, y, z extents in metres
  double t60 = 0;

  Vec3 dims() const { return {length, width, height}; }
  double volume() const { return length * width * height; }
  double surface() const { return 2 * (length * width + length * height + width * height); }
};

struct RoomScene {
  Room room;
  Vec3 source{};
  Vec3 array_center{};
  std::array<Vec3, kNumMics> mics{};

  double source_distance() const { return distance(source, array_center); }
};

/// Six capsules on the axes (+x, -x, +y, -y, +z, -z) of a sphere around `center`.
std::array<Vec3, kNumMics> spherical_array(const Vec3& center, double radius = kArrayRadius);

/// Dimensions and t60; resamples rooms whose absorption would exceed 0.99.
Room sample_room(std::uint64_t seed, const SceneLimits& limits = {});
/// Array and source positions inside `room`, rejection-sampled.
RoomScene place_in_room(const Room& room, std::uint64_t seed, const SceneLimits& limits = {});
RoomScene sample_scene(std::uint64_t seed, const SceneLimits& limits = {});

bool inside_with_margin(const Room& room, const Vec3& p, double margin);

/// Sabine inversion 0.161 V / (S t60). Throws GenerationError above 0.99.
double absorption_from_t60(const Room& room);
inline double absorption_from_t60(const RoomScene& s) { return absorption_from_t60(s.room); }

}  // namespace lmfca::room
