// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/dsp/segment.hpp"

#include <algorithm>
#include <cmath>

#include "lmfca/dsp/stft.hpp"

namespace lmfca::dsp {

std::size_t padded_length(std::size_t num_samples) {
  const std::size_t frames = frame_count(num_samples);
  if (frames % kFrameMultiple == 0) return num_samples;
  const std::size_t target = (frames / kFrameMultiple + 1) * kFrameMultiple;
  return (target - 1) * kHop;
}

Waveform pad_to_frame_multiple(const Waveform& w) {
  Waveform out = w;
  const std::size_t n = padded_length(w.num_samples());
  for (auto& ch : out.channels) ch.resize(n, 0.0);
  return out;
}

std::vector<Segment> segment_and_pad(const Waveform& w, double seg_seconds) {
  require(seg_seconds > 0.0, "segment length must be positive");
  const std::size_t n = w.num_samples();
  const auto len = static_cast<std::size_t>(std::llround(seg_seconds * w.sample_rate));
  require(len > 0, "segment length rounds to zero samples");
  std::vector<Segment> out;
  for (std::size_t start = 0; start < n; start += len) {
    const std::size_t valid = std::min(len, n - start);
    Segment s;
    s.offset = start;
    s.valid = valid;
    s.audio.sample_rate = w.sample_rate;
    for (const auto& ch : w.channels)
      s.audio.channels.emplace_back(ch.begin() + static_cast<long>(start),
                                    ch.begin() + static_cast<long>(start + valid));
    s.audio = pad_to_frame_multiple(s.audio);
    out.push_back(std::move(s));
  }
  return out;
}

Waveform trim(const Waveform& w, std::size_t num_samples) {
  Waveform out = w;
  for (auto& ch : out.channels) ch.resize(std::min(ch.size(), num_samples));
  return out;
}

Waveform join_segments(const std::vector<Segment>& segments) {
  Waveform out;
  if (segments.empty()) return out;
  out.sample_rate = segments.front().audio.sample_rate;
  out.channels.resize(segments.front().audio.num_channels());
  for (const auto& s : segments) {
    require(s.audio.num_channels() == out.channels.size(), "segments differ in channel count");
    for (std::size_t m = 0; m < out.channels.size(); ++m) {
      const auto& ch = s.audio.channels[m];
      out.channels[m].insert(out.channels[m].end(), ch.begin(),
                             ch.begin() + static_cast<long>(std::min(s.valid, ch.size())));
    }
  }
  return out;
}

}  // namespace lmfca::dsp
