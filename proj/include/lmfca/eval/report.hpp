// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lmfca/eval/enhance.hpp"
#include "lmfca/room/synth.hpp"

namespace lmfca::eval {

struct EvalRow {
  std::string id;
  double si_sdr_noisy = 0;
  double si_sdr_enhanced = 0;
  double delta = 0;
};

struct EvalReport {
  std::string estimator;
  std::vector<EvalRow> rows;
  std::vector<std::string> failures;  // "id: message"
  double mean_noisy = 0, mean_enhanced = 0, mean_delta = 0;
  std::size_t params = 0;
  double gmacs = 0, gflops = 0;
  double rtf = std::numeric_limits<double>::quiet_NaN();

  /// Recomputes the means from the rows.
  void finalize();
  /// Model statistics at 256 bins x 192 frames.
  void set_model_stats(const model::ModelConfig& config);

  std::string to_tsv() const;
  std::string to_table() const;
};

/// Enhances every record of `split` and scores SI-SDR against direct_ref.
/// Rows follow manifest order; failures are collected, not thrown.
EvalReport evaluate(const room::Manifest& manifest, const std::string& split, std::size_t mics,
                    const MaskEstimator& estimator, const std::string& estimator_name, unsigned threads = 1);

struct RtfResult {
  double rtf = 0;             // median over repeats
  std::vector<double> ratios;  // per repeat
  double input_seconds = 0;
};

inline constexpr const char* kRtfPhases = "stft, normalisation, forward, mask, istft; excludes file I/O and model load";

/// Median of (wall time of process(input)) / duration(input).
RtfResult measure_rtf(const std::function<void(const dsp::Waveform&)>& process, const dsp::Waveform& input,
                      std::size_t repeats = 5);

/// RTF of the full enhancement path on `duration_s` of synthetic six-channel input.
RtfResult measure_model_rtf(const Model& model, double duration_s = 30.0, std::size_t repeats = 5,
                            std::uint64_t seed = 1);

}  // namespace lmfca::eval
