// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

// lmfca: dataset synthesis, training, enhancement, evaluation, MAC counting
// and RTF benchmarking from one binary.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "lmfca/checkpoint.hpp"
#include "lmfca/cli/run_config.hpp"
#include "lmfca/eval/report.hpp"
#include "lmfca/model/complexity.hpp"
#include "lmfca/model/network.hpp"
#include "lmfca/train/dataset.hpp"

namespace fs = std::filesystem;
using lmfca::cli::RunConfig;

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("lmfca");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
  const char* env = std::getenv("LMFCA_LOG_LEVEL");
  spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::info);
}

// Options shared by every subcommand.
struct Common {
  std::string config_file;
  std::vector<std::string> overrides;
  std::optional<unsigned> threads;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("-c,--config", c.config_file, "Run config file (INI sections model/train/data/eval)");
  app->add_option("--set", c.overrides, "Override section.key=value (repeatable, applied last)");
  app->add_option("--threads", c.threads, "Worker threads; 1 is deterministic")->check(CLI::PositiveNumber);
}

// Model-shape flags shared by train, count and bench.
struct ModelFlags {
  std::optional<std::string> variant;
  bool mono = false;
  bool tiny = false;
};

void add_model_flags(CLI::App* app, ModelFlags& m) {
  app->add_option("--variant", m.variant, "full | no-fca | pconv-sandglass | ft-fca-everywhere");
  app->add_flag("--mono", m.mono, "Single reference microphone input");
  app->add_flag("--tiny", m.tiny, "Channels 4/8/12/16 (smoke runs)");
}

// Config file, then command flags (via `flags`), then --set overrides.
RunConfig resolve(const Common& c, const ModelFlags* m, const std::function<void(RunConfig&)>& flags) {
  RunConfig rc = c.config_file.empty() ? RunConfig{} : RunConfig::load(c.config_file);
  if (m) {
    if (m->tiny) {
      const auto seed = rc.model.init_seed;
      rc.model = lmfca::model::tiny_config(rc.model.mics);
      rc.model.init_seed = seed;
    }
    if (m->variant) rc.model.apply_variant(lmfca::model::parse_variant(*m->variant));
    if (m->mono) rc.model.mics = 1;
  }
  if (c.threads) rc.threads = *c.threads;
  if (flags) flags(rc);
  for (const auto& o : c.overrides) rc.apply_override(o);
  rc.validate();
  spdlog::debug("resolved config:\n{}", rc.to_text());
  return rc;
}

void write_config(const fs::path& dir, const RunConfig& rc) {
  fs::create_directories(dir);
  std::ofstream(dir / "config.ini") << rc.to_text();
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
  std::optional<std::size_t> rooms, rirs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out, clean_dir, noise_dir;
  bool self_test = false;
};

int cmd_synth(const Common& c, const SynthArgs& a) {
  RunConfig rc = resolve(c, nullptr, [&](RunConfig& r) {
    if (a.rooms) r.data.n_rooms = *a.rooms;
    if (a.rirs) r.data.rirs_per_room = *a.rirs;
    if (a.seed) r.data.seed = *a.seed;
    if (a.out) r.data.out_dir = *a.out;
    if (a.clean_dir) r.data.clean_dir = *a.clean_dir;
    if (a.noise_dir) r.data.noise_dir = *a.noise_dir;
    if (a.self_test) r.data.self_test = true;
  });
  if (rc.data.out_dir.empty()) throw lmfca::ConfigError("synth needs --out or data.out_dir");
  if (!rc.data.self_test && (rc.data.clean_dir.empty() || rc.data.noise_dir.empty()))
    throw lmfca::ConfigError("synth needs --clean-dir and --noise-dir, or --self-test");
  write_config(rc.data.out_dir, rc);
  auto opts = rc.data;
  opts.threads = rc.threads;
  const auto manifest = lmfca::room::synth_dataset(opts);
  const auto n_train = manifest.split("train").size();
  const auto n_val = manifest.split("val").size();
  const auto n_test = manifest.split("test").size();
  fmt::print("scenes {} (train {}, val {}, test {})\nmanifest {}\n", manifest.records.size(), n_train, n_val, n_test,
             (rc.data.out_dir / lmfca::room::kManifestName).string());
  return 0;
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
  std::optional<std::string> manifest, out, resume;
  std::optional<std::size_t> epochs, batch, max_steps;
  std::optional<double> lr;
  std::optional<std::uint64_t> seed;
  bool self_test = false;
};

int cmd_train(const Common& c, const ModelFlags& m, const TrainArgs& a) {
  RunConfig rc = resolve(c, &m, [&](RunConfig& r) {
    if (a.manifest) r.train_manifest = *a.manifest;
    if (a.out) r.train.out_dir = *a.out;
    if (a.epochs) r.train.epochs = *a.epochs;
    if (a.batch) r.train.batch_size = *a.batch;
    if (a.max_steps) r.train.max_steps = *a.max_steps;
    if (a.lr) r.train.lr = *a.lr;
    if (a.seed) r.train.seed = *a.seed;
  });
  if (rc.train.out_dir.empty()) throw lmfca::ConfigError("train needs --out or train.out_dir");

  if (a.self_test) {
    auto synth = rc.data;
    synth.self_test = true;
    synth.out_dir = rc.train.out_dir / "data";
    synth.threads = rc.threads;
    const lmfca::room::SynthOptions defaults;
    if (synth.n_rooms == defaults.n_rooms && synth.rirs_per_room == defaults.rirs_per_room) {
      synth.n_rooms = 3;
      synth.rirs_per_room = 2;
    }
    lmfca::room::synth_dataset(synth);
    rc.train_manifest = synth.out_dir / lmfca::room::kManifestName;
  }
  if (rc.train_manifest.empty()) throw lmfca::ConfigError("train needs --manifest or --self-test");

  std::optional<lmfca::train::Trainer> trainer;
  if (a.resume) {
    const auto ck = lmfca::load_checkpoint(*a.resume);
    trainer.emplace(ck, rc.train);
    rc.model = trainer->config();
    spdlog::info("resuming from {} at epoch {} step {}", *a.resume, trainer->state().epoch, trainer->state().step);
  } else {
    trainer.emplace(rc.model, rc.train);
  }
  write_config(rc.train.out_dir, rc);
  spdlog::info("resolved config:\n{}", rc.to_text());

  const auto manifest = lmfca::room::read_manifest(rc.train_manifest);
  const auto train = lmfca::train::load_split(manifest, "train", rc.model.mics, rc.threads);
  const auto val = lmfca::train::load_split(manifest, "val", rc.model.mics, rc.threads);
  if (train.empty()) throw lmfca::ConfigError("manifest has no training segments");
  spdlog::info("{} training and {} validation segments", train.size(), val.size());

  const auto records = trainer->fit(train, val);
  if (!records.empty()) {
    const auto& last = records.back();
    fmt::print("epochs {} steps {} train {:.6g} val {:.6g} lr {:.3g}\n", last.epoch, trainer->state().step,
               last.train_loss, last.val_loss, last.lr);
  }
  fmt::print("checkpoints in {}\n", rc.train.out_dir.string());
  return 0;
}

// ---- enhance --------------------------------------------------------------

int cmd_enhance(const Common& c, const std::string& checkpoint, const std::string& in, const std::string& out) {
  RunConfig rc = resolve(c, nullptr, {});
  (void)rc;
  auto model = std::make_shared<const lmfca::eval::Model>(lmfca::eval::Model::load(checkpoint));
  const auto mixture = lmfca::dsp::read_wav(in);
  const std::size_t mics = model->config.mics;
  if (mixture.num_channels() != mics)
    throw lmfca::ContractViolation(fmt::format("{} has {} channels, the model expects {}", in,
                                               mixture.num_channels(), mics));
  lmfca::dsp::validate(mixture);
  const auto enhanced = lmfca::eval::enhance(mixture, mics, lmfca::eval::model_estimator(model));
  lmfca::dsp::write_wav(out, enhanced, lmfca::dsp::SampleFormat::Float32);
  spdlog::info("wrote {} ({} samples)", out, enhanced.num_samples());
  return 0;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  std::optional<std::string> checkpoint, estimator, manifest, split, report;
  std::optional<std::size_t> mics;
};

int cmd_eval(const Common& c, const EvalArgs& a) {
  RunConfig rc = resolve(c, nullptr, [&](RunConfig& r) {
    if (a.manifest) r.eval.manifest = *a.manifest;
    if (a.split) r.eval.split = *a.split;
    if (a.report) r.eval.report = *a.report;
    if (a.estimator) r.eval.estimator = *a.estimator;
    else if (a.checkpoint) r.eval.estimator = "model";
    if (a.mics) r.model.mics = *a.mics;
  });
  if (rc.eval.manifest.empty()) throw lmfca::ConfigError("eval needs --manifest or eval.manifest");

  lmfca::eval::MaskEstimator estimator;
  std::optional<lmfca::model::ModelConfig> stats;
  std::size_t mics = rc.model.mics;
  if (rc.eval.estimator == "model") {
    if (!a.checkpoint) throw lmfca::ConfigError("eval with the model estimator needs --checkpoint");
    auto model = std::make_shared<const lmfca::eval::Model>(lmfca::eval::Model::load(*a.checkpoint));
    mics = model->config.mics;
    stats = model->config;
    estimator = lmfca::eval::model_estimator(model);
  } else if (rc.eval.estimator == "identity") {
    estimator = lmfca::eval::identity_estimator();
  } else {
    estimator = lmfca::eval::oracle_estimator();
  }

  const auto manifest = lmfca::room::read_manifest(rc.eval.manifest);
  auto report = lmfca::eval::evaluate(manifest, rc.eval.split, mics, estimator, rc.eval.estimator, rc.threads);
  if (stats) report.set_model_stats(*stats);
  if (!rc.eval.report.empty()) {
    std::ofstream f(rc.eval.report);
    if (!f) throw lmfca::LoadError("cannot write " + rc.eval.report.string());
    f << report.to_tsv();
  }
  fmt::print("{}", report.to_table());
  if (!report.failures.empty()) {
    spdlog::error("{} utterance(s) failed", report.failures.size());
    return 1;
  }
  return 0;
}

// ---- count ----------------------------------------------------------------

int cmd_count(const Common& c, const ModelFlags& m, std::size_t bins, std::size_t frames) {
  RunConfig rc = resolve(c, &m, {});
  const auto cx = lmfca::model::count_macs_flops(rc.model, bins, frames);
  fmt::print("{}", cx.table());
  fmt::print("\nparams {}\nGMACs {:.4f}\nGFLOPs {:.4f} (2 per MAC + elementwise)\nGFLOPs {:.4f} (1 per MAC + bias + "
             "elementwise)\n",
             cx.params, cx.macs / 1e9, cx.flops() / 1e9, cx.flops_unit_mac() / 1e9);
  return 0;
}

// ---- bench ----------------------------------------------------------------

int cmd_bench(const Common& c, const ModelFlags& m, const std::optional<std::string>& checkpoint,
              std::optional<double> duration, std::optional<std::size_t> repeats) {
  RunConfig rc = resolve(c, &m, [&](RunConfig& r) {
    if (duration) r.eval.duration = *duration;
    if (repeats) r.eval.repeats = *repeats;
  });
  lmfca::eval::Model model;
  if (checkpoint) {
    model = lmfca::eval::Model::load(*checkpoint);
  } else {
    model.config = rc.model;
    model.params = lmfca::model::build_parameters<float>(rc.model);
  }
  const auto r = lmfca::eval::measure_model_rtf(model, rc.eval.duration, rc.eval.repeats);
  fmt::print("input {:.1f} s, {} repeats, single thread\nphases: {}\n", r.input_seconds, r.ratios.size(),
             lmfca::eval::kRtfPhases);
  for (std::size_t i = 0; i < r.ratios.size(); ++i) fmt::print("repeat {} rtf {:.4f}\n", i, r.ratios[i]);
  fmt::print("rtf (median) {:.4f}\n", r.rtf);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"lmfca: multi-channel speech enhancement toolkit"};
  app.require_subcommand(1);

  Common common;
  ModelFlags model_flags;

  auto* synth = app.add_subcommand("synth", "Render a reverberant multi-channel dataset and its manifest");
  SynthArgs synth_args;
  add_common(synth, common);
  synth->add_option("--rooms", synth_args.rooms, "Rooms (default 200)");
  synth->add_option("--rirs-per-room", synth_args.rirs, "Source positions per room (default 20)");
  synth->add_option("--seed", synth_args.seed, "Master seed");
  synth->add_option("-o,--out", synth_args.out, "Output directory");
  synth->add_option("--clean-dir", synth_args.clean_dir, "Directory of clean 16 kHz WAV files");
  synth->add_option("--noise-dir", synth_args.noise_dir, "Directory of noise 16 kHz WAV files");
  synth->add_flag("--self-test", synth_args.self_test, "Synthetic speech-shaped sources, no input data");

  auto* train = app.add_subcommand("train", "Train a mask estimator");
  TrainArgs train_args;
  add_common(train, common);
  add_model_flags(train, model_flags);
  train->add_option("-m,--manifest", train_args.manifest, "Dataset manifest");
  train->add_option("-o,--out", train_args.out, "Checkpoint and metrics directory");
  train->add_option("--epochs", train_args.epochs, "Epoch budget");
  train->add_option("--batch", train_args.batch, "Batch size");
  train->add_option("--lr", train_args.lr, "Initial learning rate");
  train->add_option("--seed", train_args.seed, "Initialisation and shuffling seed");
  train->add_option("--max-steps", train_args.max_steps, "Stop after this many optimizer steps");
  train->add_option("--resume", train_args.resume, "Continue from a checkpoint");
  train->add_flag("--self-test", train_args.self_test, "Synthesise a small dataset under <out>/data first");

  auto* enh = app.add_subcommand("enhance", "Enhance one WAV file");
  std::string enh_ckpt, enh_in, enh_out;
  add_common(enh, common);
  enh->add_option("--checkpoint", enh_ckpt, "Model checkpoint")->required();
  enh->add_option("input", enh_in, "Input WAV (model channel count, 16 kHz)")->required();
  enh->add_option("output", enh_out, "Output mono float WAV")->required();

  auto* ev = app.add_subcommand("eval", "SI-SDR evaluation over a manifest split");
  EvalArgs eval_args;
  add_common(ev, common);
  ev->add_option("--checkpoint", eval_args.checkpoint, "Model checkpoint");
  ev->add_option("--estimator", eval_args.estimator, "model | identity | oracle");
  ev->add_option("-m,--manifest", eval_args.manifest, "Dataset manifest");
  ev->add_option("--split", eval_args.split, "train | val | test (default test)");
  ev->add_option("--report", eval_args.report, "Write the TSV report here");
  ev->add_option("--mics", eval_args.mics, "Input channels for identity/oracle (6 or 1)");

  auto* count = app.add_subcommand("count", "Per-layer MAC and FLOP table");
  std::size_t bins = 256, frames = 192;
  add_common(count, common);
  add_model_flags(count, model_flags);
  count->add_option("--bins", bins, "Frequency bins")->capture_default_str();
  count->add_option("--frames", frames, "Frames")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Offline real-time factor");
  std::optional<std::string> bench_ckpt;
  std::optional<double> bench_duration;
  std::optional<std::size_t> bench_repeats;
  add_common(bench, common);
  add_model_flags(bench, model_flags);
  bench->add_option("--checkpoint", bench_ckpt, "Model checkpoint (default: freshly initialised model)");
  bench->add_option("--duration", bench_duration, "Input seconds (default 30)");
  bench->add_option("--repeats", bench_repeats, "Repeats; the median is reported (default 5)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) return cmd_synth(common, synth_args);
    if (*train) return cmd_train(common, model_flags, train_args);
    if (*enh) return cmd_enhance(common, enh_ckpt, enh_in, enh_out);
    if (*ev) return cmd_eval(common, eval_args);
    if (*count) return cmd_count(common, model_flags, bins, frames);
    if (*bench) return cmd_bench(common, model_flags, bench_ckpt, bench_duration, bench_repeats);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 1;
}
