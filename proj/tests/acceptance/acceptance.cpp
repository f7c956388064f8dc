// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Usage: acceptance [name...]   (no names runs everything)

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "../test_util.hpp"
#include "../train/fixtures.hpp"
#include "lmfca/dsp/stft.hpp"
#include "lmfca/eval/report.hpp"
#include "lmfca/gradcheck.hpp"
#include "lmfca/model/complexity.hpp"
#include "lmfca/model/fca.hpp"
#include "lmfca/model/network.hpp"
#include "lmfca/room/mixture.hpp"
#include "lmfca/room/sources.hpp"
#include "lmfca/room/synth.hpp"
#include "lmfca/train/loss.hpp"
#include "lmfca/train/trainer.hpp"

using namespace lmfca;
using namespace lmfca::model;
using lmfca::testing::random_signal;
using lmfca::testing::random_tensor;
namespace fs = std::filesystem;

namespace {

using VarD = Var<double>;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double max_abs_diff(const Tensor<double>& a, const Tensor<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---------------------------------------------------------------------------

struct GradTally {
  std::size_t cases = 0, failed = 0;
  double worst_op = 0, worst_model = 0;
  std::vector<std::string> failures;

  void add(const std::string& what, double err, double tol, bool model_level) {
    ++cases;
    (model_level ? worst_model : worst_op) = std::max(model_level ? worst_model : worst_op, err);
    if (!(err < tol)) {
      ++failed;
      failures.push_back(fmt::format("{} {:.2e}", what, err));
    }
  }
};

Outcome gradient_suite() {
  constexpr double kOpTol = 1e-4, kModelTol = 1e-3;
  GradTally tally;
  const auto t0 = Clock::now();

  for (std::uint64_t seed = 0; seed < 7; ++seed) {
    std::mt19937_64 rng(100 + seed);
    const std::size_t F = 2 + 2 * (seed % 3), T = 4 + 2 * (seed % 2), C = 2 + seed % 3, C2 = 1 + seed % 4;
    VarD x(random_tensor({F, T, C}, rng), true);
    VarD pw(random_tensor({C, C2}, rng), true), pb(random_tensor({C2}, rng), true);
    VarD dw(random_tensor({3, 3, C}, rng), true);
    VarD aw(random_tensor({5, C}, rng), true);
    VarD tw(random_tensor({2, 2, C, C2}, rng), true), tb(random_tensor({C2}, rng), true);
    VarD slope(random_tensor({C}, rng, 0.0, 0.5), true);
    VarD other(random_tensor({F, T, C}, rng), true);
    VarD narrow(random_tensor({F, T, C2}, rng), true);

    auto check = [&](const std::string& name, auto&& build, std::vector<VarD> wrt) {
      const VarD probe(random_tensor(build().shape(), rng));
      const auto r = check_gradients([&] { return ops::mse(build(), probe); }, wrt);
      tally.add(name, r.relative_error, kOpTol, false);
    };
    check("conv2d_pointwise", [&] { return ops::conv2d_pointwise(x, pw, pb); }, {x, pw, pb});
    check("conv2d_depthwise", [&] { return ops::conv2d_depthwise(x, dw); }, {x, dw});
    check("conv1d_time", [&] { return ops::conv1d_depthwise_axis(x, aw, Axis::Time); }, {x, aw});
    check("conv1d_freq", [&] { return ops::conv1d_depthwise_axis(x, aw, Axis::Frequency); }, {x, aw});
    check("avg_pool2", [&] { return ops::avg_pool2(x); }, {x});
    check("max_pool2", [&] { return ops::max_pool2(x); }, {x});
    check("transposed_conv2", [&] { return ops::transposed_conv2(x, tw, tb); }, {x, tw, tb});
    check("nearest_upsample2", [&] { return ops::nearest_upsample2(x); }, {x});
    check("sigmoid", [&] { return ops::sigmoid(x); }, {x});
    check("prelu", [&] { return ops::prelu(x, slope); }, {x, slope});
    check("mul", [&] { return ops::mul(x, other); }, {x, other});
    check("add", [&] { return ops::add(x, other); }, {x, other});
    check("scale", [&] { return ops::scale(x, 0.37); }, {x});
    check("concat_channels", [&] { return ops::concat_channels(x, narrow); }, {x, narrow});
    VarD m2(random_tensor({F, T, 2}, rng), true);
    check("mask_magnitude", [&] { return train::mask_magnitude(m2); }, {m2});
    {
      const VarD probe(random_tensor({F, T, C}, rng));
      const auto r = check_gradients(
          [&] { return ops::mean_of(std::vector<VarD>{ops::mse(x, probe), ops::mse(other, probe)}); }, {x, other});
      tally.add("mse/mean_of", r.relative_error, kOpTol, false);
    }
  }

  // Loss terms on a short spectrogram.
  {
    std::mt19937_64 rng(7);
    const auto clean = random_signal(2000, rng, 0.4);
    auto mix = clean;
    const auto noise = random_signal(clean.size(), rng, 0.3);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += noise[i];
    const auto mix_spec = dsp::stft(dsp::Waveform::mono(mix));
    const auto target = dsp::compute_cirm(mix_spec, dsp::stft(dsp::Waveform::mono(clean)));
    const std::size_t T = mix_spec.frames();
    for (double beta : {1e-4, 1.0}) {
      train::LossWeights w;
      w.beta = beta;
      VarD est(random_tensor({dsp::kBins, T, 2}, rng, -1.5, 1.5), true);
      GradCheckOptions opt;
      opt.max_coords_per_tensor = 200;
      opt.seed = 3;
      const auto sdr = check_gradients([&] { return train::negative_si_sdr(est, mix_spec, clean, w); }, {est}, opt);
      tally.add("negative_si_sdr", sdr.relative_error, kOpTol, false);
      const auto full =
          check_gradients([&] { return train::composite_loss(est, target, mix_spec, clean, w); }, {est}, opt);
      tally.add("composite_loss", full.relative_error, kModelTol, true);
    }
  }

  // Blocks.
  {
    std::mt19937_64 rng(11);
    const ModelConfig base = tiny_config();
    for (auto kind : {FcaKind::Time, FcaKind::Frequency, FcaKind::FreqTime}) {
      FcaBranchParams<double> p{VarD(random_tensor({3, 4}, rng), true), VarD(random_tensor({4}, rng), true),
                                VarD(random_tensor({5, 4}, rng), true), VarD(random_tensor({5, 4}, rng), true)};
      VarD x(random_tensor({8, 6, 3}, rng), true);
      const VarD probe(random_tensor({8, 6, 4}, rng));
      const auto r = check_gradients([&] { return ops::mse(fca_branch(x, kind, p), probe); },
                                     {x, p.proj_weight, p.proj_bias, p.d1, p.d2});
      tally.add(std::string("fca_branch ") + to_string(kind), r.relative_error, kOpTol, false);
    }
    for (auto expand : {TrunkExpand::Ghost, TrunkExpand::Pconv})
      for (auto [cin, kind] : {std::pair{3ul, FcaKind::Time}, std::pair{4ul, FcaKind::Frequency},
                               std::pair{2ul, FcaKind::FreqTime}}) {
        ModelConfig c = base;
        c.trunk_expand = expand;
        ParameterStore<double> st;
        add_fca_block_params(st, "b", cin, 4, c, rng);
        VarD x(random_tensor({4, 6, cin}, rng), true);
        const VarD probe(random_tensor({4, 6, 4}, rng));
        std::vector<VarD> wrt{x};
        for (auto& p : st.params()) wrt.push_back(p.var);
        const auto r = check_gradients([&] { return ops::mse(fca_block(x, 4, kind, c, st, "b"), probe); }, wrt);
        tally.add(std::string("fca_block ") + to_string(kind), r.relative_error, kOpTol, false);
      }
    for (bool pconv : {false, true}) {
      ModelConfig c = base;
      c.pconv_for_sandglass = pconv;
      ParameterStore<double> st;
      add_bottleneck_params(st, "bn", 6, c, rng);
      VarD x(random_tensor({4, 5, 6}, rng), true);
      const VarD probe(random_tensor({4, 5, 6}, rng));
      std::vector<VarD> wrt{x};
      for (auto& p : st.params()) wrt.push_back(p.var);
      const auto unit = check_gradients([&] { return ops::mse(sandglass_unit(x, c, st, "bn.0"), probe); }, wrt);
      const auto block = check_gradients([&] { return ops::mse(bottleneck_block(x, c, st, "bn"), probe); }, wrt);
      tally.add("sandglass_unit", unit.relative_error, kOpTol, false);
      tally.add("bottleneck_block", block.relative_error, kOpTol, false);
    }
  }

  // Full tiny model, every variant plus mono.
  {
    std::vector<std::pair<Variant, std::size_t>> runs{{Variant::Full, 6},
                                                      {Variant::NoFca, 6},
                                                      {Variant::PconvSandglass, 6},
                                                      {Variant::FtFcaEverywhere, 6},
                                                      {Variant::Full, 1}};
    std::uint64_t seed = 0;
    for (auto [variant, mics] : runs) {
      ModelConfig cfg = tiny_config(mics);
      cfg.apply_variant(variant);
      auto st = build_parameters<double>(cfg, 30 + seed);
      std::mt19937_64 rng(40 + seed++);
      VarD x(random_tensor({16, 16, cfg.input_channels()}, rng), true);
      const VarD probe(random_tensor({16, 16, 2}, rng));
      std::vector<VarD> wrt{x};
      for (auto& p : st.params())
        if (p.trainable) wrt.push_back(p.var);
      GradCheckOptions opt;
      opt.max_coords_per_tensor = 6;
      opt.seed = seed;
      opt.step = 1e-7;  // PReLU and max-pool kinks
      const auto r = check_gradients([&] { return ops::mse(model_forward(x, cfg, st), probe); }, wrt, opt);
      tally.add(fmt::format("model {} mics={}", to_string(variant), mics), r.relative_error, kModelTol, true);
    }
  }

  const double secs = seconds_since(t0);
  std::string detail = fmt::format("{} cases, {} failed, worst op/block {:.2e} (< 1e-4), worst model/loss {:.2e} "
                                   "(< 1e-3), {:.1f} s (< 300 s)",
                                   tally.cases, tally.failed, tally.worst_op, tally.worst_model, secs);
  for (const auto& f : tally.failures) detail += "; " + f;
  return {tally.failed == 0 && tally.cases >= 100 && secs < 300, detail};
}

// ---------------------------------------------------------------------------

Outcome stft_round_trip() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> len(16000, 48000);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = random_signal(len(rng), rng, 0.3);
    const auto y = dsp::istft(dsp::stft(dsp::Waveform::mono(x))).channels[0];
    double num = 0, den = 0;
    for (std::size_t n = 0; n < x.size(); ++n) {
      num += (y[n] - x[n]) * (y[n] - x[n]);
      den += x[n] * x[n];
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-6 && secs < 60,
          fmt::format("1000 signals of 1-3 s, worst relative L2 {:.2e} (< 1e-6), {:.1f} s (< 60 s)", worst, secs)};
}

// ---------------------------------------------------------------------------

Outcome fca_locality() {
  std::mt19937_64 rng(77);
  const std::size_t F = 12, T = 10, Cin = 3, C = 4, K = 5;
  std::size_t violations = 0, inert = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const FcaBranchParams<double> p{VarD(random_tensor({Cin, C}, rng)), VarD(random_tensor({C}, rng)),
                                    VarD(random_tensor({K, C}, rng)), VarD(random_tensor({K, C}, rng))};
    const auto x = random_tensor({F, T, Cin}, rng);
    const std::size_t row = trial % (F / 2), col = trial % (T / 2);
    auto rows = x, cols = x;
    std::normal_distribution<double> nd;
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t c = 0; c < Cin; ++c) {
        rows.at(2 * row, t, c) += nd(rng);
        rows.at(2 * row + 1, t, c) += nd(rng);
      }
    for (std::size_t f = 0; f < F; ++f)
      for (std::size_t c = 0; c < Cin; ++c) {
        cols.at(f, 2 * col, c) += nd(rng);
        cols.at(f, 2 * col + 1, c) += nd(rng);
      }
    const auto t_base = fca_branch(VarD(x), FcaKind::Time, p).value();
    const auto t_moved = fca_branch(VarD(rows), FcaKind::Time, p).value();
    const auto f_base = fca_branch(VarD(x), FcaKind::Frequency, p).value();
    const auto f_moved = fca_branch(VarD(cols), FcaKind::Frequency, p).value();
    bool t_changed = false, f_changed = false;
    for (std::size_t f = 0; f < F; ++f)
      for (std::size_t t = 0; t < T; ++t)
        for (std::size_t c = 0; c < C; ++c) {
          const bool t_diff = t_moved.at(f, t, c) != t_base.at(f, t, c);
          const bool f_diff = f_moved.at(f, t, c) != f_base.at(f, t, c);
          if (f / 2 == row) t_changed = t_changed || t_diff;
          else violations += t_diff;
          if (t / 2 == col) f_changed = f_changed || f_diff;
          else violations += f_diff;
        }
    inert += !t_changed + !f_changed;
  }

  double worst = 0;
  const std::size_t sf = 6, st = 7;
  for (int trial = 0; trial < 20; ++trial) {
    const auto z = random_tensor({sf, st, 3}, rng);
    const auto d1 = random_tensor({K, 3}, rng), d2 = random_tensor({K, 3}, rng);
    for (auto kind : {FcaKind::Time, FcaKind::Frequency, FcaKind::FreqTime}) {
      const auto fast = fca_attention_decoupled(VarD(z), kind, VarD(d1), VarD(d2)).value();
      const auto dense = fca_attention_dense(z, kind, banded_dense_weights(d1, d2, kind, sf, st));
      worst = std::max(worst, max_abs_diff(fast, dense));
    }
  }
  return {violations == 0 && inert == 0 && worst < 1e-6,
          fmt::format("100 inputs: {} out-of-row/column changes (tolerance 0), {} unresponsive maps; decoupled vs "
                      "banded dense max diff {:.2e} (< 1e-6)",
                      violations, inert, worst)};
}

// ---------------------------------------------------------------------------

Outcome complexity_claim() {
  bool linear = true;
  const auto base = fca_branch_macs(16, 12, 8, 3);
  for (std::size_t k : {5, 7, 9}) linear = linear && fca_branch_macs(16, 12, 8, k) * 3 == base * k;
  for (std::size_t s : {2, 3, 4}) linear = linear && fca_branch_macs(16 * s, 12, 8, 3) == base * s &&
                                           fca_branch_macs(16, 12 * s, 8, 3) == base * s;

  // The runtime counter must agree with the formula.
  bool measured = true;
  std::mt19937_64 rng(5);
  for (std::size_t k : {3, 5, 7}) {
    const VarD z(random_tensor({16, 12, 8}, rng));
    const VarD d(random_tensor({k, 8}, rng));
    MacTally::reset();
    fca_attention_decoupled(z, FcaKind::Time, d, d);
    measured = measured && MacTally::value() == fca_branch_macs(16, 12, 8, k);
  }

  const auto sparse = fca_branch_macs(128, 96, 48, 5);
  const auto dense = dense_fca_macs(128, 96, 48);
  const double ratio = static_cast<double>(dense) / static_cast<double>(sparse);
  return {linear && measured && sparse == 5898240ULL && dense == 56623104ULL && ratio >= 9.0,
          fmt::format("linear in K and pooled area: {}; counter matches runtime: {}; at 128x96x48, K=5: {} vs dense "
                      "{} MACs, {:.2f}x cheaper (>= 9x)",
                      linear ? "yes" : "no", measured ? "yes" : "no", sparse, dense, ratio)};
}

// ---------------------------------------------------------------------------

Outcome ablation_ordering() {
  const auto full = count_macs_flops(ModelConfig::for_variant(Variant::Full));
  const auto nofca = count_macs_flops(ModelConfig::for_variant(Variant::NoFca));
  const bool ordered = full.flops() > nofca.flops() && full.flops_unit_mac() > nofca.flops_unit_mac();

  const auto examples = testing::synthetic_examples(4, 1.0, 21);
  std::vector<const train::TrainingExample*> batch;
  for (const auto& e : examples) batch.push_back(&e);
  std::string trained;
  bool all_trained = true;
  for (auto v : {Variant::Full, Variant::NoFca, Variant::PconvSandglass, Variant::FtFcaEverywhere}) {
    ModelConfig cfg = tiny_config();
    cfg.apply_variant(v);
    train::TrainOptions opts;
    opts.lr = 1e-3;
    opts.seed = 3;
    try {
      train::Trainer tr(cfg, opts);
      double last = 0;
      for (int s = 0; s < 50; ++s) last = tr.step(batch);
      if (!std::isfinite(last)) throw NumericError("non-finite loss");
      trained += fmt::format(" {}={:.4f}", to_string(v), last);
    } catch (const std::exception& e) {
      all_trained = false;
      trained += fmt::format(" {}=ERROR({})", to_string(v), e.what());
    }
  }
  return {ordered && all_trained,
          fmt::format("GFLOPs full {:.3f} > no-fca {:.3f} (2/MAC), {:.3f} > {:.3f} (1/MAC); 50 tiny-config steps, "
                      "final loss:{}",
                      full.flops() / 1e9, nofca.flops() / 1e9, full.flops_unit_mac() / 1e9,
                      nofca.flops_unit_mac() / 1e9, trained)};
}

// ---------------------------------------------------------------------------

Outcome mac_total() {
  constexpr double kPaperGmacs = 1.77, kPaperGflops = 2.20, kTol = 0.35;
  const auto c = count_macs_flops(ModelConfig{}, 256, 192);
  const double gmacs = c.macs / 1e9, gflops = c.flops_unit_mac() / 1e9, gflops2 = c.flops() / 1e9;
  const double dm = gmacs / kPaperGmacs - 1, df = gflops / kPaperGflops - 1, df2 = gflops2 / kPaperGflops - 1;
  const bool pass = std::abs(dm) <= kTol && std::abs(df) <= kTol;
  return {pass, fmt::format("256x192x12: {:.4f} GMACs vs 1.77 ({:+.1f}%), {:.4f} GFLOPs (MAC + bias + elementwise) "
                            "vs 2.20 ({:+.1f}%), tolerance +-35%; INFO 2-FLOPs-per-MAC convention gives {:.4f} GFLOPs "
                            "({:+.1f}%); params {}",
                            gmacs, 100 * dm, gflops, 100 * df, gflops2, 100 * df2, c.params)};
}

// ---------------------------------------------------------------------------

double mean_delta_db(const eval::Model& net, const std::vector<room::MixtureExample>& mixes) {
  auto shared = std::make_shared<const eval::Model>(net);
  const auto est = eval::model_estimator(shared);
  double sum = 0;
  for (const auto& m : mixes) {
    const auto out = eval::enhance(m.mixture, 6, est);
    const auto& ref = m.direct_ref.channels[0];
    sum += train::si_sdr(out.channels[0], ref) - train::si_sdr(m.mixture.channels[dsp::kReferenceMic], ref);
  }
  return sum / static_cast<double>(mixes.size());
}

Outcome overfit() {
  const auto t0 = Clock::now();
  const auto mixes = testing::synthetic_mixtures(4, 1.0, 21);
  std::vector<train::TrainingExample> examples;
  for (std::size_t i = 0; i < mixes.size(); ++i)
    for (auto& e : train::make_examples("ex" + std::to_string(i), mixes[i].mixture, mixes[i].direct_ref, 6))
      examples.push_back(std::move(e));
  std::vector<const train::TrainingExample*> batch;
  for (const auto& e : examples) batch.push_back(&e);

  train::TrainOptions opts;
  opts.lr = 1e-2;
  opts.seed = 1;
  train::Trainer tr(tiny_config(), opts);
  const double initial = tr.mean_loss(examples);
  for (int s = 0; s < 200; ++s) tr.step(batch);
  const double final_loss = tr.mean_loss(examples);
  const double reduction = 1.0 - final_loss / initial;
  const double delta = mean_delta_db(eval::Model{tr.config(), tr.params()}, mixes);
  const double secs = seconds_since(t0);
  return {reduction >= 0.9 && delta >= 5.0 && secs < 900,
          fmt::format("tiny config, {} examples, 200 steps at lr {:g}: loss {:.4f} -> {:.4f} ({:.1f}% reduction, "
                      "need >= 90%); mean SI-SDR improvement {:+.2f} dB (need >= 5 dB); {:.0f} s (< 900 s)",
                      examples.size(), opts.lr, initial, final_loss, 100 * reduction, delta, secs)};
}

// ---------------------------------------------------------------------------

Outcome oracle_mask() {
  const auto t0 = Clock::now();
  const fs::path dir = fs::temp_directory_path() / "lmfca_acceptance_oracle";
  fs::remove_all(dir);
  room::SynthOptions o;
  o.self_test = true;
  o.out_dir = dir;
  o.n_rooms = 6;
  o.rirs_per_room = 2;
  o.seed = 8;
  o.val_fraction = 0;
  o.test_fraction = 0;
  const auto manifest = room::synth_dataset(o);
  const auto rep = eval::evaluate(manifest, "train", 6, eval::oracle_estimator(), "oracle");
  const double secs = seconds_since(t0);
  fs::remove_all(dir);
  return {rep.failures.empty() && rep.mean_delta > 10.0 && secs < 300,
          fmt::format("{} synthetic mixtures: noisy {:.2f} dB -> oracle cIRM {:.2f} dB, mean improvement {:+.2f} dB "
                      "(> 10 dB), {} failures, {:.0f} s",
                      rep.rows.size(), rep.mean_noisy, rep.mean_enhanced, rep.mean_delta, rep.failures.size(), secs)};
}

// ---------------------------------------------------------------------------

Outcome data_pipeline() {
  const auto scene = room::sample_scene(5);
  const auto rirs = room::compute_scene_rirs(scene);
  const auto clean = room::synthetic_speech(16000, 5);
  std::mt19937_64 rng(9);
  double worst_snr = 0;
  for (int i = 0; i < 100; ++i) {
    const double snr = std::uniform_real_distribution<double>(0, 12)(rng);
    const auto noise = room::synthetic_noise(i % 2 ? 9000 : 24000, 50 + i);
    const auto ex = room::render_mixture(rirs, clean, noise, snr, 200 + i);
    worst_snr = std::max(worst_snr, std::abs(room::measured_snr_db(ex.clean_ref.channels[0],
                                                                   ex.mixture.channels[dsp::kReferenceMic]) -
                                             snr));
  }

  std::size_t t60_ok = 0, tap_bad = 0;
  double lo = 1e9, hi = 0;
  for (int i = 0; i < 200; ++i) {
    const auto s = room::sample_scene(5000 + i);
    const std::size_t mic = static_cast<std::size_t>(i) % room::kNumMics;
    const auto rir = room::image_method_rir(s, mic);
    const double ratio = room::schroeder_t60(rir.taps) / s.room.t60;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    t60_ok += std::abs(ratio - 1) <= 0.3;
    std::size_t first = 0;
    while (first < rir.taps.size() && rir.taps[first] == 0) ++first;
    const double expected = std::round(room::distance(s.source, s.mics[mic]) * dsp::kSampleRate / room::kSpeedOfSound);
    tap_bad += std::abs(static_cast<double>(first) - expected) > 2;
  }
  return {worst_snr < 0.1 && t60_ok >= 190 && tap_bad == 0,
          fmt::format("SNR worst error {:.4f} dB over 100 draws (< 0.1); T60 within +-30% for {}/200 scenes (>= 190, "
                      "ratio range {:.2f}-{:.2f}); direct tap off by > 2 in {} scenes",
                      worst_snr, t60_ok, lo, hi, tap_bad)};
}

// ---------------------------------------------------------------------------

Outcome rtf() {
  const auto one_second = dsp::Waveform::mono(std::vector<double>(16000, 0.0));
  const auto stub = eval::measure_rtf(
      [](const dsp::Waveform& x) { std::this_thread::sleep_for(std::chrono::duration<double>(x.duration_seconds())); },
      one_second, 5);
  eval::Model net{ModelConfig{}, build_parameters<float>(ModelConfig{})};
  const auto r = eval::measure_model_rtf(net, 30.0, 5);
  return {std::abs(stub.rtf - 1.0) <= 0.05 && r.rtf < 1.0,
          fmt::format("sleep stub {:.4f} (1 +- 0.05); full model on 30 s six-channel input, median of 5, single "
                      "thread: {:.4f} (< 1.0)",
                      stub.rtf, r.rtf)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"gradient-suite", gradient_suite}, {"stft-round-trip", stft_round_trip},
      {"fca-locality", fca_locality},     {"complexity-claim", complexity_claim},
      {"ablation-ordering", ablation_ordering}, {"mac-total", mac_total},
      {"overfit", overfit},               {"oracle-mask", oracle_mask},
      {"data-pipeline", data_pipeline},   {"rtf", rtf},
  };
  std::vector<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    fmt::print("{} {}: {}\n", o.pass ? "PASS" : "FAIL", name, o.detail);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
