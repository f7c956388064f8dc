// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/room/scene.hpp"

#include <numbers>
#include <random>
#include <string>

#include "lmfca/errors.hpp"

namespace lmfca::room {

std::array<Vec3, kNumMics> spherical_array(const Vec3& c, double r) {
  return {{{c[0] + r, c[1], c[2]},
           {c[0] - r, c[1], c[2]},
           {c[0], c[1] + r, c[2]},
           {c[0], c[1] - r, c[2]},
           {c[0], c[1], c[2] + r},
           {c[0], c[1], c[2] - r}}};
}

bool inside_with_margin(const Room& room, const Vec3& p, double margin) {
  const Vec3 d = room.dims();
  for (int k = 0; k < 3; ++k)
    if (!(p[k] >= margin && p[k] <= d[k] - margin)) return false;
  return true;
}

double absorption_from_t60(const Room& room) {
  require(room.t60 > 0, "t60 must be positive");
  const double a = 0.161 * room.volume() / (room.surface() * room.t60);
  if (a > 0.99) {
    throw GenerationError("room " + std::to_string(room.length) + "x" + std::to_string(room.width) + "x" +
                          std::to_string(room.height) + " too small for t60 " + std::to_string(room.t60));
  }
  return a;
}

Room sample_room(std::uint64_t seed, const SceneLimits& lim) {
  std::mt19937_64 rng(seed);
  auto U = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  for (int i = 0; i < lim.max_tries; ++i) {
    Room r;
    r.length = U(lim.length_min, lim.length_max);
    r.width = U(lim.width_min, lim.width_max);
    r.height = U(lim.height_min, lim.height_max);
    r.t60 = U(lim.t60_min, lim.t60_max);
    try {
      absorption_from_t60(r);
      return r;
    } catch (const GenerationError&) {
    }
  }
  throw GenerationError("no admissible room after " + std::to_string(lim.max_tries) + " tries");
}

RoomScene place_in_room(const Room& room, std::uint64_t seed, const SceneLimits& lim) {
  std::mt19937_64 rng(seed);
  auto U = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  const double edge = lim.wall_margin + kArrayRadius;
  for (int i = 0; i < lim.max_tries; ++i) {
    RoomScene s;
    s.room = room;
    if (room.length <= 2 * edge || room.width <= 2 * edge || room.height <= 2 * edge) break;
    s.array_center = {U(edge, room.length - edge), U(edge, room.width - edge), U(edge, room.height - edge)};
    const double d = U(lim.source_dist_min, lim.source_dist_max);
    const double z = U(-1.0, 1.0), phi = U(0.0, 2 * std::numbers::pi), rho = std::sqrt(1 - z * z);
    s.source = {s.array_center[0] + d * rho * std::cos(phi), s.array_center[1] + d * rho * std::sin(phi),
                s.array_center[2] + d * z};
    if (!inside_with_margin(room, s.source, lim.wall_margin)) continue;
    s.mics = spherical_array(s.array_center);
    return s;
  }
  throw GenerationError("could not place source and array after " + std::to_string(lim.max_tries) + " tries");
}

RoomScene sample_scene(std::uint64_t seed, const SceneLimits& limits) {
  std::mt19937_64 rng(seed);
  const std::uint64_t room_seed = rng(), place_seed = rng();
  return place_in_room(sample_room(room_seed, limits), place_seed, limits);
}

}  // namespace lmfca::room
