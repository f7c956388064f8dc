// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <vector>

#include "lmfca/errors.hpp"

namespace lmfca::dsp {

inline constexpr int kSampleRate = 16000;
inline constexpr double kClipGuard = 32.0;

/// Multi-channel audio, stored channel-major.
struct Waveform {
  int sample_rate = kSampleRate;
  std::vector<std::vector<double>> channels;

  static Waveform mono(std::vector<double> samples, int rate = kSampleRate) {
    Waveform w;
    w.sample_rate = rate;
    w.channels.push_back(std::move(samples));
    return w;
  }

  std::size_t num_channels() const { return channels.size(); }
  std::size_t num_samples() const { return channels.empty() ? 0 : channels.front().size(); }
  double duration_seconds() const { return static_cast<double>(num_samples()) / sample_rate; }

  Waveform channel(std::size_t m) const { return mono(channels.at(m), sample_rate); }
};

/// Pipeline entry check: 16 kHz, rectangular, finite, |x| <= 32.
void validate(const Waveform& w);

enum class SampleFormat { Pcm16, Float32 };

/// Reads 16-bit PCM or 32-bit float WAV. Rates other than 16 kHz are rejected.
Waveform read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, const Waveform& w,
               SampleFormat format = SampleFormat::Float32);

}  // namespace lmfca::dsp
