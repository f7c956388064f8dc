// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/train/trainer.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "lmfca/model/network.hpp"
#include "lmfca/ops.hpp"
#include "lmfca/parallel.hpp"

namespace lmfca::train {

void TrainOptions::validate() const {
  loss.validate();
  if (!(lr > 0)) throw ConfigError("learning rate must be positive");
  if (batch_size == 0) throw ConfigError("batch size must be positive");
  if (plateau_patience == 0) throw ConfigError("plateau patience must be positive");
  if (grad_clip_norm < 0) throw ConfigError("gradient clip norm must be non-negative");
}

bool update_plateau(TrainState& state, double val_loss, std::size_t patience) {
  if (val_loss < state.best_val_loss) {
    state.best_val_loss = val_loss;
    state.epochs_since_improvement = 0;
    return false;
  }
  if (++state.epochs_since_improvement < patience) return false;
  state.lr *= 0.5;
  state.epochs_since_improvement = 0;
  return true;
}

model::ModelConfig checkpoint_config(const Checkpoint& ck) {
  model::ModelConfig cfg;
  try {
    cfg = model::ModelConfig::from_text(ck.config_text);
  } catch (const ConfigError& e) {
    throw LoadError(std::string("checkpoint config: ") + e.what());
  }
  const auto expected = model::build_parameters<float>(cfg);
  if (expected.size() != ck.params.size()) {
    throw LoadError("checkpoint holds " + std::to_string(ck.params.size()) + " tensors, config needs " +
                    std::to_string(expected.size()));
  }
  for (const auto& p : expected.params()) {
    if (!ck.params.contains(p.name)) throw LoadError("checkpoint lacks parameter " + p.name);
    if (ck.params.get(p.name).shape() != p.var.shape())
      throw LoadError("checkpoint parameter " + p.name + " has shape " + to_string(ck.params.get(p.name).shape()) +
                      ", config needs " + to_string(p.var.shape()));
  }
  return cfg;
}

Trainer::Trainer(model::ModelConfig config, TrainOptions options)
    : config_(std::move(config)), options_(std::move(options)) {
  options_.validate();
  config_.validate();
  params_ = model::build_parameters<float>(config_, derive_seed(options_.seed, 0));
  state_.lr = options_.lr;
  state_.seed = options_.seed;
}

Trainer::Trainer(const Checkpoint& ck, TrainOptions options)
    : config_(checkpoint_config(ck)), options_(std::move(options)), params_(ck.params.cast<float>()), state_(ck.state) {
  options_.validate();
  options_.seed = state_.seed;
}

std::vector<std::size_t> Trainer::epoch_order(std::size_t n, std::uint64_t epoch) const {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(derive_seed(options_.seed, 1000 + epoch));
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

double Trainer::step(std::span<const TrainingExample* const> batch) {
  require(!batch.empty(), "empty training batch");
  params_.zero_grad();
  std::vector<Var<float>> losses;
  losses.reserve(batch.size());
  for (const TrainingExample* ex : batch) {
    const Var<float> y = model::model_forward(Var<float>(ex->input), config_, params_);
    losses.push_back(composite_loss(y, ex->target, ex->mix_ref, ex->direct_ref, options_.loss));
  }
  const Var<float> total = ops::mean_of(losses);
  const double value = total.value()[0];
  if (!std::isfinite(value)) throw NumericError("training loss is not finite at step " + std::to_string(state_.step));
  backward(total);
  for (const auto& p : params_.params())
    if (p.trainable && !p.var.grad().all_finite())
      throw NumericError("non-finite gradient for " + p.name + " at step " + std::to_string(state_.step));
  AdamConfig adam;
  adam.grad_clip_norm = options_.grad_clip_norm;
  adam_step(params_, state_, state_.lr, adam);
  return value;
}

double Trainer::mean_loss(const std::vector<TrainingExample>& data) const {
  if (data.empty()) return std::numeric_limits<double>::quiet_NaN();
  NoGradGuard guard;
  double sum = 0;
  for (const auto& ex : data) {
    const Var<float> y = model::model_forward(Var<float>(ex.input), config_, params_);
    sum += composite_loss(y, ex.target, ex.mix_ref, ex.direct_ref, options_.loss).value()[0];
  }
  return sum / static_cast<double>(data.size());
}

EpochRecord Trainer::run_epoch(const std::vector<TrainingExample>& train, const std::vector<TrainingExample>& val) {
  require(!train.empty(), "training set is empty");
  const auto start = std::chrono::steady_clock::now();
  const auto order = epoch_order(train.size(), state_.epoch);
  double sum = 0;
  std::size_t batches = 0;
  std::vector<const TrainingExample*> batch;
  for (std::size_t i = 0; i < order.size() && !step_limit_reached(); i += options_.batch_size) {
    batch.clear();
    for (std::size_t j = i; j < std::min(order.size(), i + options_.batch_size); ++j) batch.push_back(&train[order[j]]);
    sum += step(batch);
    ++batches;
  }
  EpochRecord rec;
  rec.epoch = state_.epoch;
  rec.train_loss = batches ? sum / static_cast<double>(batches) : std::numeric_limits<double>::quiet_NaN();
  rec.val_loss = val.empty() ? rec.train_loss : mean_loss(val);
  update_plateau(state_, rec.val_loss, options_.plateau_patience);
  rec.lr = state_.lr;
  ++state_.epoch;
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<EpochRecord> Trainer::fit(const std::vector<TrainingExample>& train,
                                      const std::vector<TrainingExample>& val) {
  if (val.empty()) spdlog::warn("no validation examples; the plateau rule follows the training loss");
  const bool write = !options_.out_dir.empty();
  const auto metrics_path = options_.out_dir / kMetricsName;
  if (write) {
    std::filesystem::create_directories(options_.out_dir);
    if (!std::filesystem::exists(metrics_path)) std::ofstream(metrics_path) << "epoch\ttrain_loss\tval_loss\tlr\tseconds\n";
  }
  std::vector<EpochRecord> records;
  while (state_.epoch < options_.epochs && !step_limit_reached()) {
    const double best_before = state_.best_val_loss;
    const EpochRecord rec = run_epoch(train, val);
    records.push_back(rec);
    spdlog::info("epoch {} train {:.6g} val {:.6g} lr {:.3g} ({:.1f} s)", rec.epoch, rec.train_loss, rec.val_loss,
                 rec.lr, rec.seconds);
    if (!write) continue;
    std::ofstream(metrics_path, std::ios::app)
        << fmt::format("{}\t{:.9g}\t{:.9g}\t{:.9g}\t{:.3f}\n", rec.epoch, rec.train_loss, rec.val_loss, rec.lr, rec.seconds);
    const Checkpoint ck = checkpoint();
    save_checkpoint(options_.out_dir / fmt::format("epoch_{:04d}.ckpt", rec.epoch), ck);
    save_checkpoint(options_.out_dir / kLastCheckpoint, ck);
    if (state_.best_val_loss < best_before) save_checkpoint(options_.out_dir / kBestCheckpoint, ck);
  }
  return records;
}

Checkpoint Trainer::checkpoint() const { return Checkpoint{config_.to_text(), params_.cast<float>(), state_}; }

}  // namespace lmfca::train
