// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "../test_util.hpp"
#include "lmfca/gradcheck.hpp"
#include "lmfca/ops.hpp"
#include "lmfca/train/loss.hpp"

using namespace lmfca;
using namespace lmfca::train;
using lmfca::testing::random_signal;
using lmfca::testing::random_tensor;

namespace {

using VarD = Var<double>;

// Two passes: projection first, then the ratio.
double si_sdr_oracle(const std::vector<double>& est, const std::vector<double>& ref) {
  long double er = 0, rr = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    er += static_cast<long double>(est[i]) * ref[i];
    rr += static_cast<long double>(ref[i]) * ref[i];
  }
  const long double a = er / (rr + 1e-8L);
  long double t = 0, n = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    t += (a * ref[i]) * (a * ref[i]);
    n += (a * ref[i] - est[i]) * (a * ref[i] - est[i]);
  }
  return static_cast<double>(10.0L * std::log10(t / (n + 1e-8L)));
}

}  // namespace

TEST_CASE("si_sdr") {
  std::mt19937_64 rng(1);
  const auto ref = random_signal(4000, rng);

  SUBCASE("positive scaling saturates at the cap") {
    for (double c : {0.01, 1.0, 7.5}) {
      std::vector<double> est(ref);
      for (auto& v : est) v *= c;
      CHECK(si_sdr(est, ref) == doctest::Approx(30.0));
    }
  }

  SUBCASE("orthogonal error of equal norm gives 0 dB") {
    std::vector<double> e = random_signal(ref.size(), rng);
    double er = 0, rr = 0, ee = 0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      er += e[i] * ref[i];
      rr += ref[i] * ref[i];
    }
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= er / rr * ref[i];
    for (double v : e) ee += v * v;
    std::vector<double> est(ref);
    for (std::size_t i = 0; i < e.size(); ++i) est[i] += e[i] * std::sqrt(rr / ee);
    CHECK(si_sdr(est, ref) == doctest::Approx(0.0).epsilon(1e-9));
  }

  SUBCASE("matches the two-pass formula") {
    for (int trial = 0; trial < 20; ++trial) {
      auto est = random_signal(ref.size(), rng);
      for (std::size_t i = 0; i < est.size(); ++i) est[i] += (0.2 + (trial % 5) * 0.3) * ref[i];
      const double oracle = si_sdr_oracle(est, ref);
      REQUIRE(std::abs(oracle) < 30);
      CHECK(si_sdr(est, ref) == doctest::Approx(oracle).epsilon(1e-12));
    }
  }

  SUBCASE("negative estimates clamp at the lower cap") {
    std::vector<double> est(ref.size(), 0.0);
    CHECK(si_sdr(est, ref) == -30.0);
  }

  SUBCASE("zero reference and length mismatch") {
    const std::vector<double> zero(100, 0.0), x(100, 1.0), y(99, 1.0);
    CHECK_THROWS_AS(si_sdr(x, zero), DegenerateInput);
    CHECK_THROWS_AS(si_sdr(y, x), ContractViolation);
  }

  SUBCASE("gradient agrees with central differences") {
    const auto base = random_signal(64, rng);
    auto est = random_signal(64, rng);
    for (std::size_t i = 0; i < est.size(); ++i) est[i] += 0.8 * base[i];
    const auto g = si_sdr_gradient(est, base);
    const double h = 1e-6;
    for (std::size_t i = 0; i < est.size(); i += 7) {
      auto hi = est, lo = est;
      hi[i] += h;
      lo[i] -= h;
      const double fd = (si_sdr(hi, base) - si_sdr(lo, base)) / (2 * h);
      CHECK(g[i] == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("composite loss") {
  std::mt19937_64 rng(2);
  const auto clean = random_signal(1800, rng, 0.3);
  const dsp::ComplexSpectrogram clean_spec = dsp::stft(dsp::Waveform::mono(clean));
  const std::size_t T = clean_spec.frames();

  SUBCASE("perfect mask reaches -beta * cap") {
    const dsp::MaskPair target = dsp::compute_cirm(clean_spec, clean_spec);
    const VarD est(target.stacked());
    LossWeights w;
    LossParts parts;
    const auto l = composite_loss(est, target, clean_spec, clean, w, &parts);
    CHECK(parts.magnitude == 0.0);
    CHECK(parts.spectral == 0.0);
    CHECK(parts.sisdr_db == 30.0);
    CHECK(l.value()[0] == doctest::Approx(-30.0 * w.beta).epsilon(1e-12));
  }

  const auto noise = random_signal(clean.size(), rng, 0.3);
  std::vector<double> mix(clean);
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += noise[i];
  const dsp::ComplexSpectrogram mix_spec = dsp::stft(dsp::Waveform::mono(mix));
  const dsp::MaskPair target = dsp::compute_cirm(mix_spec, clean_spec);

  SUBCASE("continuity without the si-sdr term") {
    LossWeights w;
    w.beta = 0;
    const auto noise_dir = random_tensor({256, T, 2}, rng);
    double previous = 1e300;
    for (double delta : {1e-1, 1e-2, 1e-3, 1e-4}) {
      Tensor<double> est = target.stacked();
      for (std::size_t i = 0; i < est.size(); ++i) est[i] += delta * noise_dir[i];
      const double l = composite_loss(VarD(est), target, mix_spec, clean, w).value()[0];
      CHECK(l < previous);
      CHECK(l < 2 * delta * delta);
      previous = l;
    }
  }

  SUBCASE("bounded below by -beta * cap") {
    LossWeights w;
    w.beta = 0.5;
    for (int trial = 0; trial < 10; ++trial) {
      const auto est = random_tensor({256, T, 2}, rng, -2, 2);
      CHECK(composite_loss(VarD(est), target, mix_spec, clean, w).value()[0] >= -w.beta * w.sisdr_cap_db);
    }
  }

  SUBCASE("gradient with respect to the mask") {
    for (double beta : {1e-4, 1.0}) {
      LossWeights w;
      w.beta = beta;
      VarD est(random_tensor({256, T, 2}, rng, -1.5, 1.5), true);
      GradCheckOptions opt;
      opt.max_coords_per_tensor = 200;
      opt.seed = 3;
      const auto r = check_gradients([&] { return composite_loss(est, target, mix_spec, clean, w); }, {est}, opt);
      CHECK(r.relative_error < 1e-3);
      const auto only_sdr =
          check_gradients([&] { return negative_si_sdr(est, mix_spec, clean, w); }, {est}, opt);
      CHECK(only_sdr.relative_error < 1e-4);
    }
  }

  SUBCASE("mask magnitude gradient") {
    VarD m(random_tensor({5, 3, 2}, rng), true);
    const VarD probe(random_tensor({5, 3, 1}, rng));
    const auto r = check_gradients([&] { return ops::mse(mask_magnitude(m), probe); }, {m});
    CHECK(r.relative_error < 1e-4);
  }

  SUBCASE("weights validation") {
    LossWeights w;
    w.alpha = 1.5;
    CHECK_THROWS_AS(w.validate(), ConfigError);
    w = LossWeights{};
    w.beta = -1;
    CHECK_THROWS_AS(w.validate(), ConfigError);
    CHECK_NOTHROW(LossWeights{}.validate());
  }
}
