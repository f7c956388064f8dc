// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "lmfca/checkpoint.hpp"
#include "lmfca/model/config.hpp"
#include "lmfca/train/dataset.hpp"
#include "lmfca/train/loss.hpp"

namespace lmfca::train {

struct TrainOptions {
  double lr = 1e-4;
  std::size_t batch_size = 4;
  std::size_t epochs = 1;  // total, counting epochs already in a resumed state
  std::uint64_t seed = 1;
  std::size_t plateau_patience = 5;
  double grad_clip_norm = 0.0;  // 0 disables
  std::size_t max_steps = 0;    // 0: no limit
  LossWeights loss;
  std::filesystem::path out_dir;  // checkpoints and metrics.tsv; empty writes nothing

  /// Throws ConfigError.
  void validate() const;
};

struct EpochRecord {
  std::uint64_t epoch = 0;
  double train_loss = 0;
  double val_loss = 0;
  double lr = 0;
  double seconds = 0;
};

inline constexpr const char* kMetricsName = "metrics.tsv";
inline constexpr const char* kBestCheckpoint = "best.ckpt";
inline constexpr const char* kLastCheckpoint = "last.ckpt";

/// Tracks the best validation loss; halves lr once `patience` epochs pass
/// without improvement. Returns true when it halved.
bool update_plateau(TrainState& state, double val_loss, std::size_t patience = 5);

class Trainer {
 public:
  /// Fresh parameters initialised from options.seed.
  Trainer(model::ModelConfig config, TrainOptions options);
  /// Continues from a checkpoint; its config replaces any other.
  Trainer(const Checkpoint& checkpoint, TrainOptions options);

  /// One optimizer step on the mean composite loss of `batch`. Throws
  /// NumericError if the loss or a gradient is not finite.
  double step(std::span<const TrainingExample* const> batch);

  /// Mean composite loss without gradients.
  double mean_loss(const std::vector<TrainingExample>& data) const;

  /// Shuffled example order for `epoch`; a pure function of seed and epoch.
  std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t epoch) const;

  EpochRecord run_epoch(const std::vector<TrainingExample>& train, const std::vector<TrainingExample>& val);

  /// Runs until state().epoch == options.epochs or max_steps is reached,
  /// writing checkpoints and the metrics log into out_dir.
  std::vector<EpochRecord> fit(const std::vector<TrainingExample>& train, const std::vector<TrainingExample>& val);

  Checkpoint checkpoint() const;
  const model::ModelConfig& config() const { return config_; }
  const TrainState& state() const { return state_; }
  TrainState& state() { return state_; }
  ParameterStore<float>& params() { return params_; }
  const ParameterStore<float>& params() const { return params_; }

 private:
  bool step_limit_reached() const { return options_.max_steps > 0 && state_.step >= options_.max_steps; }

  model::ModelConfig config_;
  TrainOptions options_;
  ParameterStore<float> params_;
  TrainState state_;
};

/// Config and parameters from a checkpoint; mismatched parameter sets throw LoadError.
model::ModelConfig checkpoint_config(const Checkpoint& checkpoint);

}  // namespace lmfca::train
