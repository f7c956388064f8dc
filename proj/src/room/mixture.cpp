// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/room/mixture.hpp"

#include <cmath>
#include <random>

#include "lmfca/dsp/fft.hpp"

namespace lmfca::room {
namespace {

constexpr std::size_t kMinCleanSamples = dsp::kSampleRate;

double mean_power(std::span<const double> x) {
  double p = 0;
  for (double v : x) p += v * v;
  return x.empty() ? 0.0 : p / static_cast<double>(x.size());
}

std::vector<double> excerpt(const std::vector<double>& src, std::size_t start, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = src[(start + i) % src.size()];
  return out;
}

}  // namespace

SceneRirs compute_scene_rirs(const RoomScene& scene, const RirOptions& options) {
  SceneRirs r;
  RirOptions opt = options;
  if (!opt.reflection) opt.reflection = reflection_coefficient(scene.room, opt.model);
  for (std::size_t m = 0; m < kNumMics; ++m) r.mics.push_back(image_method_rir(scene, m, opt));
  r.direct_ref = direct_path_rir(scene, dsp::kReferenceMic);
  return r;
}

MixtureExample render_mixture(const SceneRirs& rirs, const dsp::Waveform& clean, const dsp::Waveform& noise,
                              double snr_db, std::uint64_t seed) {
  require(clean.num_channels() == 1, "clean speech must be mono");
  require(clean.num_samples() >= kMinCleanSamples, "clean speech must be at least 1 s long");
  require(noise.num_channels() == kNumMics || noise.num_channels() == 1,
          "noise must have 6 channels or 1, got " + std::to_string(noise.num_channels()));
  require(noise.num_samples() > 0, "noise is empty");
  require(rirs.mics.size() == kNumMics, "expected six impulse responses");
  const auto& s = clean.channels[0];
  if (mean_power(s) == 0.0) throw DegenerateInput("clean speech is silent");
  const std::size_t n = s.size();

  MixtureExample ex;
  ex.snr_db = snr_db;
  ex.mixture.channels.resize(kNumMics);
  for (std::size_t m = 0; m < kNumMics; ++m) ex.mixture.channels[m] = dsp::fft_convolve(s, rirs.mics[m].taps, n);
  ex.clean_ref = dsp::Waveform::mono(ex.mixture.channels[dsp::kReferenceMic]);
  ex.direct_ref = dsp::Waveform::mono(dsp::fft_convolve(s, rirs.direct_ref.taps, n));

  std::mt19937_64 rng(seed);
  const std::size_t len = noise.num_samples();
  const std::size_t start = std::uniform_int_distribution<std::size_t>(0, len - 1)(rng);
  std::vector<std::vector<double>> v(kNumMics);
  if (noise.num_channels() == kNumMics) {
    for (std::size_t m = 0; m < kNumMics; ++m) v[m] = excerpt(noise.channels[m], start, n);
  } else {
    const auto base = excerpt(noise.channels[0], start, n);
    for (std::size_t m = 0; m < kNumMics; ++m) {
      const std::size_t shift = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
      v[m] = excerpt(base, shift, n);
    }
  }

  const double ps = mean_power(ex.clean_ref.channels[0]);
  const double pn = mean_power(v[dsp::kReferenceMic]);
  ex.noise_gain = pn > 0 ? std::sqrt(ps / (pn * std::pow(10.0, snr_db / 10.0))) : 0.0;
  for (std::size_t m = 0; m < kNumMics; ++m)
    for (std::size_t i = 0; i < n; ++i) ex.mixture.channels[m][i] += ex.noise_gain * v[m][i];
  return ex;
}

MixtureExample render_mixture(const RoomScene& scene, const dsp::Waveform& clean, const dsp::Waveform& noise,
                              double snr_db, std::uint64_t seed, const RirOptions& options) {
  return render_mixture(compute_scene_rirs(scene, options), clean, noise, snr_db, seed);
}

double measured_snr_db(std::span<const double> speech, std::span<const double> mixture) {
  require(speech.size() == mixture.size(), "measured_snr_db: length mismatch");
  double ps = 0, pn = 0;
  for (std::size_t i = 0; i < speech.size(); ++i) {
    ps += speech[i] * speech[i];
    pn += (mixture[i] - speech[i]) * (mixture[i] - speech[i]);
  }
  return 10.0 * std::log10(ps / pn);
}

}  // namespace lmfca::room
