// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <thread>

#include "../train/fixtures.hpp"
#include "lmfca/eval/report.hpp"
#include "lmfca/model/network.hpp"
#include "lmfca/train/trainer.hpp"

using namespace lmfca;
using namespace lmfca::eval;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lmfca_eval_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const room::Manifest& small_manifest() {
  static const room::Manifest m = [] {
    room::SynthOptions so;
    so.out_dir = scratch_dir("manifest");
    so.self_test = true;
    so.self_test_utterances = 3;
    so.self_test_seconds = 2.0;
    so.n_rooms = 5;
    so.rirs_per_room = 2;
    so.seed = 3;
    return room::synth_dataset(so);
  }();
  return m;
}

}  // namespace

TEST_CASE("enhancement path") {
  const auto mixes = testing::synthetic_mixtures(1, 7.3, 2);
  const auto& mix = mixes[0];

  SUBCASE("length is preserved") {
    for (double seconds : {1.0, 3.0, 3.7, 7.3}) {
      const auto n = static_cast<std::size_t>(seconds * dsp::kSampleRate);
      dsp::Waveform cut;
      for (const auto& ch : mix.mixture.channels) cut.channels.emplace_back(ch.begin(), ch.begin() + n);
      CHECK(enhance(cut, 6, identity_estimator()).num_samples() == n);
    }
  }

  SUBCASE("identity returns the reference channel") {
    const auto out = enhance(mix.mixture, 6, identity_estimator());
    REQUIRE(out.num_channels() == 1);
    double err = 0, ref = 0;
    for (std::size_t i = 0; i < out.num_samples(); ++i) {
      const double d = out.channels[0][i] - mix.mixture.channels[dsp::kReferenceMic][i];
      err += d * d;
      ref += mix.mixture.channels[dsp::kReferenceMic][i] * mix.mixture.channels[dsp::kReferenceMic][i];
    }
    CHECK(std::sqrt(err / ref) < 1e-6);
  }

  SUBCASE("oracle mask approaches the direct path") {
    const auto out = enhance(mix.mixture, 6, oracle_estimator(), &mix.direct_ref);
    const auto& d = mix.direct_ref.channels[0];
    CHECK(train::si_sdr(out.channels[0], d) - train::si_sdr(mix.mixture.channels[dsp::kReferenceMic], d) > 10.0);
    CHECK_THROWS_AS(enhance(mix.mixture, 6, oracle_estimator()), ContractViolation);
  }

  SUBCASE("silent input through a model gives silence") {
    auto net = std::make_shared<Model>(Model{model::tiny_config(), model::build_parameters<float>(model::tiny_config())});
    dsp::Waveform zero;
    zero.channels.assign(6, std::vector<double>(20000, 0.0));
    const auto out = enhance(zero, 6, model_estimator(net));
    CHECK(out.num_samples() == 20000);
    for (double v : out.channels[0]) REQUIRE(v == 0.0);
  }

  SUBCASE("mono models read the reference microphone") {
    auto cfg = model::tiny_config(1);
    auto net = std::make_shared<Model>(Model{cfg, model::build_parameters<float>(cfg)});
    CHECK(enhance(mix.mixture, 1, model_estimator(net)).num_samples() == mix.mixture.num_samples());
    CHECK_THROWS_AS(enhance(mix.mixture.channel(0), 6, identity_estimator()), ContractViolation);
  }
}

TEST_CASE("evaluate") {
  const auto& manifest = small_manifest();
  const std::size_t n_test = manifest.split("test").size();
  REQUIRE(n_test > 0);

  SUBCASE("identity leaves every row unchanged") {
    const auto rep = evaluate(manifest, "test", 6, identity_estimator(), "identity");
    REQUIRE(rep.rows.size() == n_test);
    CHECK(rep.failures.empty());
    for (const auto& r : rep.rows) {
      CHECK(r.si_sdr_enhanced == doctest::Approx(r.si_sdr_noisy).epsilon(1e-6));
      CHECK(r.delta == r.si_sdr_enhanced - r.si_sdr_noisy);
    }
  }

  SUBCASE("oracle gains more than 10 dB") {
    const auto rep = evaluate(manifest, "test", 6, oracle_estimator(), "oracle");
    CHECK(rep.mean_delta > 10.0);
    double sum = 0;
    for (const auto& r : rep.rows) sum += r.delta;
    CHECK(std::abs(sum / rep.rows.size() - rep.mean_delta) < 1e-9);
  }

  SUBCASE("deterministic across runs and thread counts") {
    const auto a = evaluate(manifest, "train", 6, oracle_estimator(), "oracle");
    const auto b = evaluate(manifest, "train", 6, oracle_estimator(), "oracle", 3);
    CHECK(a.to_tsv() == b.to_tsv());
    CHECK(a.to_table() == b.to_table());
  }

  SUBCASE("missing audio is reported as a failure") {
    room::Manifest broken = manifest;
    for (auto& r : broken.records)
      if (r.split == "test") {
        r.mixture = "audio/missing.wav";
        break;
      }
    const auto rep = evaluate(broken, "test", 6, identity_estimator(), "identity");
    CHECK(rep.failures.size() == 1);
    CHECK(rep.rows.size() == n_test - 1);
    CHECK(rep.to_tsv().find("# failed\t") != std::string::npos);
  }

  SUBCASE("report text") {
    auto rep = evaluate(manifest, "test", 6, identity_estimator(), "identity");
    rep.set_model_stats(model::ModelConfig{});
    rep.rtf = 0.25;
    const auto tsv = rep.to_tsv();
    CHECK(tsv.find("id\tsi_sdr_noisy\tsi_sdr_enhanced\tdelta\n") != std::string::npos);
    CHECK(tsv.find("# gmacs\t2.33") != std::string::npos);
    CHECK(tsv.find("# rtf\t0.2500") != std::string::npos);
    CHECK(rep.to_table().find("RTF 0.250") != std::string::npos);
  }
}

TEST_CASE("a briefly trained model improves its own training items") {
  const auto mixes = testing::synthetic_mixtures(2, 1.0, 9);
  std::vector<train::TrainingExample> data;
  for (std::size_t i = 0; i < mixes.size(); ++i)
    for (auto& e : train::make_examples(std::to_string(i), mixes[i].mixture, mixes[i].direct_ref, 6))
      data.push_back(std::move(e));
  train::TrainOptions opt;
  opt.lr = 1e-2;
  opt.batch_size = 2;
  train::Trainer t(model::tiny_config(), opt);
  std::vector<const train::TrainingExample*> batch{&data[0], &data[1]};
  for (int i = 0; i < 60; ++i) t.step(batch);

  const auto dir = scratch_dir("trained");
  save_checkpoint(dir / "m.ckpt", t.checkpoint());
  auto net = std::make_shared<Model>(Model::load(dir / "m.ckpt"));
  const auto est = model_estimator(net);
  double delta = 0;
  for (const auto& m : mixes) {
    const auto out = enhance(m.mixture, 6, est);
    const auto& d = m.direct_ref.channels[0];
    delta += train::si_sdr(out.channels[0], d) - train::si_sdr(m.mixture.channels[dsp::kReferenceMic], d);
  }
  CHECK(delta / mixes.size() > 0.0);
}

TEST_CASE("checkpoint loading") {
  const auto dir = scratch_dir("load");
  train::TrainOptions opt;
  train::Trainer t(model::tiny_config(), opt);
  Checkpoint ck = t.checkpoint();
  save_checkpoint(dir / "ok.ckpt", ck);
  const Model m = Model::load(dir / "ok.ckpt");
  CHECK(m.config == model::tiny_config());
  CHECK(m.params.size() == t.params().size());
  ck.params.get("out.weight").mutable_value() = Tensor<float>({3, 3});
  save_checkpoint(dir / "bad.ckpt", ck);
  CHECK_THROWS_AS(Model::load(dir / "bad.ckpt"), LoadError);
  CHECK_THROWS_AS(Model::load(dir / "absent.ckpt"), LoadError);
}

TEST_CASE("real-time factor") {
  const dsp::Waveform half = dsp::Waveform::mono(std::vector<double>(8000, 0.0));
  const dsp::Waveform full = dsp::Waveform::mono(std::vector<double>(16000, 0.0));
  auto sleeper = [](const dsp::Waveform& x) {
    std::this_thread::sleep_for(std::chrono::duration<double>(x.duration_seconds()));
  };

  SUBCASE("a stub running in real time measures 1") {
    const auto r = measure_rtf(sleeper, half, 5);
    CHECK(r.ratios.size() == 5);
    CHECK(r.input_seconds == 0.5);
    CHECK(std::abs(r.rtf - 1.0) <= 0.05);
  }

  SUBCASE("doubling the duration keeps the ratio") {
    auto work = [](const dsp::Waveform& x) {
      std::this_thread::sleep_for(std::chrono::duration<double>(0.3 * x.duration_seconds()));
    };
    const double a = measure_rtf(work, half, 3).rtf, b = measure_rtf(work, full, 3).rtf;
    CHECK(std::abs(b / a - 1.0) < 0.2);
  }

  SUBCASE("median of repeats") {
    int call = 0;
    auto uneven = [&](const dsp::Waveform&) {
      std::this_thread::sleep_for(std::chrono::milliseconds(call++ == 0 ? 400 : 50));
    };
    CHECK(measure_rtf(uneven, full, 3).rtf < 0.1);
  }
}
