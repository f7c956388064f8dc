// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/room/rir.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "lmfca/errors.hpp"

namespace lmfca::room {
namespace {

constexpr int kCalibrationDirections = 2048;

// Decay of the image field with unit log-attenuation per reflection:
// energy arriving at time t from direction u is exp(-t r_u), r_u the
// reflection rate along u. Its backward integral is exp(-t r_u) / r_u.
double unit_decay_t60(const Room& room) {
  std::vector<double> rates;
  rates.reserve(kCalibrationDirections);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < kCalibrationDirections; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / kCalibrationDirections;
    const double rho = std::sqrt(1.0 - z * z);
    const double x = rho * std::cos(golden * i), y = rho * std::sin(golden * i);
    rates.push_back(kSpeedOfSound * (std::abs(x) / room.length + std::abs(y) / room.width +
                                     std::abs(z) / room.height));
  }
  auto level_db = [&](double t) {
    double s = 0.0;
    for (double r : rates) s += std::exp(-t * r) / r;
    return 10.0 * std::log10(s);
  };
  const double ref = level_db(0.0);
  auto time_at = [&](double db) {
    double lo = 0.0, hi = 1.0;
    while (level_db(hi) - ref > db) hi *= 2;
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (level_db(mid) - ref > db ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double t0 = time_at(-5.0), t1 = time_at(-25.0);
  constexpr int kPoints = 200;
  double st = 0, se = 0, stt = 0, ste = 0;
  for (int i = 0; i < kPoints; ++i) {
    const double t = t0 + (t1 - t0) * i / (kPoints - 1);
    const double e = level_db(t) - ref;
    st += t, se += e, stt += t * t, ste += t * e;
  }
  const double slope = (kPoints * ste - st * se) / (kPoints * stt - st * st);
  return -60.0 / slope;
}

// Allen-Berkley 100 Hz high-pass.
void high_pass(std::vector<double>& x, int fs) {
  const double w = 2 * std::numbers::pi * 100.0 / fs;
  const double r1 = std::exp(-w), b1 = 2 * r1 * std::cos(w), b2 = -r1 * r1, a1 = -(1 + r1);
  double y0 = 0, y1 = 0, y2 = 0;
  for (double& v : x) {
    y2 = y1;
    y1 = y0;
    y0 = b1 * y1 + b2 * y2 + v;
    v = y0 + a1 * y1 + r1 * y2;
  }
}

}  // namespace

double reflection_coefficient(const Room& room, ReflectionModel model) {
  const double alpha = absorption_from_t60(room);
  switch (model) {
    case ReflectionModel::SabineEnergy:
      return 1.0 - alpha;
    case ReflectionModel::SabinePressure:
      return std::sqrt(1.0 - alpha);
    case ReflectionModel::Calibrated:
      // Energy per reflection beta^2 = exp(-k), decay time scales as 1/k.
      return std::exp(-0.5 * unit_decay_t60(room) / room.t60);
  }
  throw ContractViolation("unknown reflection model");
}

std::vector<ImageSource> enumerate_images(const Room& room, const Vec3& src, const Vec3& rcv,
                                          int max_order, double max_path) {
  const Vec3 dims = room.dims();
  std::array<int, 3> n_max{};
  for (int k = 0; k < 3; ++k) n_max[k] = static_cast<int>(std::ceil(max_path / (2 * dims[k]))) + 1;
  std::vector<ImageSource> out;
  for (int px = 0; px < 2; ++px)
    for (int nx = -n_max[0]; nx <= n_max[0]; ++nx) {
      const double x = (1 - 2 * px) * src[0] + 2 * nx * dims[0];
      const double dx = x - rcv[0];
      const int ox = std::abs(nx - px) + std::abs(nx);
      if (std::abs(dx) > max_path || (max_order >= 0 && ox > max_order)) continue;
      for (int py = 0; py < 2; ++py)
        for (int ny = -n_max[1]; ny <= n_max[1]; ++ny) {
          const double y = (1 - 2 * py) * src[1] + 2 * ny * dims[1];
          const double dy = y - rcv[1];
          const int oy = ox + std::abs(ny - py) + std::abs(ny);
          if (dx * dx + dy * dy > max_path * max_path || (max_order >= 0 && oy > max_order)) continue;
          for (int pz = 0; pz < 2; ++pz)
            for (int nz = -n_max[2]; nz <= n_max[2]; ++nz) {
              const double z = (1 - 2 * pz) * src[2] + 2 * nz * dims[2];
              const double dz = z - rcv[2];
              const int o = oy + std::abs(nz - pz) + std::abs(nz);
              if (dx * dx + dy * dy + dz * dz > max_path * max_path || (max_order >= 0 && o > max_order)) continue;
              out.push_back({{x, y, z}, o});
            }
        }
    }
  return out;
}

Rir image_method_rir(const RoomScene& scene, std::size_t mic, const RirOptions& opt) {
  require(mic < kNumMics, "microphone index out of range");
  const Vec3& rcv = scene.mics[mic];
  const int fs = dsp::kSampleRate;
  const double d0 = distance(scene.source, rcv);
  require(d0 > 0, "source coincides with microphone");
  double max_path = opt.max_path > 0 ? opt.max_path : kSpeedOfSound * scene.room.t60;
  max_path = std::max(max_path, d0);

  Rir rir;
  rir.reflection = opt.reflection ? *opt.reflection : reflection_coefficient(scene.room, opt.model);
  require(rir.reflection >= 0 && rir.reflection < 1, "reflection coefficient must be in [0, 1)");
  rir.direct_index = delay_samples(d0, fs);

  const auto images = enumerate_images(scene.room, scene.source, rcv, opt.max_order, max_path);
  int top_order = 0;
  std::size_t len = rir.direct_index + 1;
  for (const auto& im : images) {
    top_order = std::max(top_order, im.order);
    len = std::max(len, delay_samples(distance(im.position, rcv), fs) + 1);
  }
  std::vector<double> powers(static_cast<std::size_t>(top_order) + 1, 1.0);
  for (std::size_t k = 1; k < powers.size(); ++k) powers[k] = powers[k - 1] * rir.reflection;

  std::vector<double> reflections(len, 0.0);
  for (const auto& im : images) {
    if (im.order == 0) continue;
    const double d = distance(im.position, rcv);
    reflections[delay_samples(d, fs)] += powers[im.order] / (4 * std::numbers::pi * d);
  }
  if (opt.high_pass) high_pass(reflections, fs);
  reflections[rir.direct_index] += 1.0 / (4 * std::numbers::pi * d0);
  rir.taps = std::move(reflections);
  rir.max_order = top_order;
  return rir;
}

Rir direct_path_rir(const RoomScene& scene, std::size_t mic) {
  require(mic < kNumMics, "microphone index out of range");
  const double d = distance(scene.source, scene.mics[mic]);
  Rir rir;
  rir.direct_index = delay_samples(d);
  rir.taps.assign(rir.direct_index + 1, 0.0);
  rir.taps.back() = 1.0 / (4 * std::numbers::pi * d);
  return rir;
}

std::vector<double> schroeder_curve_db(std::span<const double> taps) {
  std::vector<double> e(taps.size());
  double acc = 0;
  for (std::size_t i = taps.size(); i-- > 0;) {
    acc += taps[i] * taps[i];
    e[i] = acc;
  }
  if (acc <= 0) throw DegenerateInput("impulse response has no energy");
  for (double& v : e) v = 10.0 * std::log10(std::max(v / acc, 1e-300));
  return e;
}

double schroeder_t60(std::span<const double> taps, int fs, double from_db, double to_db) {
  require(from_db > to_db, "schroeder_t60: fit range must be decreasing");
  const auto e = schroeder_curve_db(taps);
  double st = 0, se = 0, stt = 0, ste = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > from_db) continue;
    if (e[i] < to_db) break;
    const double t = static_cast<double>(i) / fs;
    st += t, se += e[i], stt += t * t, ste += t * e[i];
    ++n;
  }
  if (n < 2) throw DegenerateInput("decay curve too short to fit");
  const double nn = static_cast<double>(n);
  const double slope = (nn * ste - st * se) / (nn * stt - st * st);
  if (!(slope < 0)) throw DegenerateInput("decay curve is not decreasing");
  return -60.0 / slope;
}

}  // namespace lmfca::room
