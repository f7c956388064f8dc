// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "lmfca/dsp/waveform.hpp"

namespace lmfca::dsp {

inline constexpr double kSegmentSeconds = 3.0;
inline constexpr std::size_t kFrameMultiple = 8;

/// Smallest length >= n whose frame count is a multiple of 8.
std::size_t padded_length(std::size_t num_samples);

/// Zero-pads at the tail up to padded_length.
Waveform pad_to_frame_multiple(const Waveform& w);

struct Segment {
  Waveform audio;          // padded
  std::size_t offset = 0;  // start in the source signal
  std::size_t valid = 0;   // samples before padding
};

/// Cuts w into consecutive pieces of round(seg_seconds * fs) samples (the last
/// may be shorter) and pads each one.
std::vector<Segment> segment_and_pad(const Waveform& w, double seg_seconds = kSegmentSeconds);

/// Trims each piece to its valid length and concatenates.
Waveform join_segments(const std::vector<Segment>& segments);

Waveform trim(const Waveform& w, std::size_t num_samples);

}  // namespace lmfca::dsp
