// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

// Run configuration: an INI-style file with [model], [train], [data] and
// [eval] sections of key = value lines. Flags are applied on top as
// "section.key=value" overrides. Unknown keys are errors.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lmfca/model/config.hpp"
#include "lmfca/room/synth.hpp"
#include "lmfca/train/trainer.hpp"

namespace lmfca::cli {

struct EvalSettings {
  std::filesystem::path manifest;
  std::string split = "test";
  std::string estimator = "model";  // model | identity | oracle
  std::filesystem::path report;     // TSV output; empty prints only
  std::size_t repeats = 5;
  double duration = 30.0;
};

struct RunConfig {
  unsigned threads = 1;
  model::ModelConfig model;
  train::TrainOptions train;
  std::filesystem::path train_manifest;
  room::SynthOptions data;
  EvalSettings eval;

  /// Throws ConfigError for unknown sections or keys and malformed values.
  void set(const std::string& section, const std::string& key, const std::string& value);
  /// "section.key=value"; a key without a section addresses the top level.
  void apply_override(const std::string& assignment);

  std::string to_text() const;
  static RunConfig from_text(const std::string& text);
  /// Throws ConfigError when the file cannot be read.
  static RunConfig load(const std::filesystem::path& path);

  void validate() const;
};

}  // namespace lmfca::cli
