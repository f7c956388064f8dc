// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "../test_util.hpp"
#include "lmfca/dsp/mask.hpp"
#include "lmfca/dsp/segment.hpp"
#include "lmfca/dsp/stft.hpp"

using namespace lmfca;
using namespace lmfca::dsp;
using lmfca::testing::random_signal;

namespace {

ComplexSpectrogram random_spec(std::size_t frames, std::size_t M, std::mt19937_64& rng) {
  auto s = ComplexSpectrogram::zeros(frames, M, (frames - 1) * kHop);
  std::normal_distribution<double> nd;
  for (auto& v : s.re.data()) v = nd(rng);
  for (auto& v : s.im.data()) v = nd(rng);
  return s;
}

double si_sdr_db(const std::vector<double>& est, const std::vector<double>& ref) {
  double dot = 0, rr = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    dot += est[i] * ref[i];
    rr += ref[i] * ref[i];
  }
  const double a = dot / rr;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    num += a * ref[i] * a * ref[i];
    den += (a * ref[i] - est[i]) * (a * ref[i] - est[i]);
  }
  return 10 * std::log10(num / den);
}

// Harmonic tone with a slow amplitude envelope.
std::vector<double> voiced(std::size_t n, double f0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = double(i) / kSampleRate;
    const double env = 0.5 + 0.5 * std::sin(2 * std::numbers::pi * 3 * t);
    double v = 0;
    for (int h = 1; h <= 8; ++h) v += std::sin(2 * std::numbers::pi * f0 * h * t) / h;
    x[i] = 0.2 * env * v;
  }
  return x;
}

}  // namespace

TEST_CASE("normalize_and_stack: layout, channel count, scale invariance") {
  std::mt19937_64 rng(1);
  auto s = random_spec(8, 6, rng);
  auto a = normalize_and_stack(s, kReferenceMic);
  CHECK(a.x.shape() == Shape{256, 8, 12});
  CHECK(a.x.at(3, 2, 4) == doctest::Approx(s.re.at(3, 2, 2) / a.norm));
  CHECK(a.x.at(3, 2, 5) == doctest::Approx(s.im.at(3, 2, 2) / a.norm));

  double sum = 0;
  for (std::size_t f = 0; f < 256; ++f)
    for (std::size_t t = 0; t < 8; ++t) sum += std::abs(std::complex(s.re.at(f, t, 4), s.im.at(f, t, 4)));
  CHECK(a.norm == doctest::Approx(sum / (256 * 8)).epsilon(1e-12));

  auto s2 = s;
  for (auto& v : s2.re.data()) v *= 2;
  for (auto& v : s2.im.data()) v *= 2;
  auto b = normalize_and_stack(s2, kReferenceMic);
  CHECK(b.norm == doctest::Approx(2 * a.norm).epsilon(1e-14));
  CHECK(max_abs_diff(b.x.cast<float>(), a.x.cast<float>()) == 0.0f);
  for (double c : {1e-3, 0.37, 41.0}) {
    auto sc = s;
    for (auto& v : sc.re.data()) v *= c;
    for (auto& v : sc.im.data()) v *= c;
    CHECK(max_abs_diff(normalize_and_stack(sc, kReferenceMic).x, a.x) < 1e-12);
  }
}

TEST_CASE("normalize_and_stack: constant-magnitude reference and errors") {
  auto s = ComplexSpectrogram::zeros(4, 1, 765);
  for (std::size_t i = 0; i < s.re.size(); ++i) {
    s.re[i] = 3.0 * std::cos(0.1 * double(i));
    s.im[i] = 3.0 * std::sin(0.1 * double(i));
  }
  CHECK(normalize_and_stack(s, 0).norm == doctest::Approx(3.0));
  CHECK_THROWS_AS(normalize_and_stack(s, 1), ContractViolation);
  CHECK_THROWS_AS(normalize_and_stack(ComplexSpectrogram::zeros(4, 2, 765), 0), DegenerateInput);
}

TEST_CASE("compute_cirm: identity, rotation, and recovery") {
  std::mt19937_64 rng(2);
  auto S = random_spec(6, 1, rng);
  auto m = compute_cirm(S, S);
  for (std::size_t i = 0; i < m.re.size(); ++i) {
    const double p = S.re[i] * S.re[i] + S.im[i] * S.im[i];
    if (p > 1e-2) CHECK(m.re[i] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(m.re[i] == doctest::Approx(p / (p + kMaskEps)).epsilon(1e-12));
    CHECK(std::abs(m.im[i]) < 1e-12);
  }

  auto X = S;  // X = j S
  for (std::size_t i = 0; i < X.re.size(); ++i) {
    X.re[i] = -S.im[i];
    X.im[i] = S.re[i];
  }
  m = compute_cirm(X, S);
  for (std::size_t i = 0; i < m.re.size(); ++i) {
    const double p = S.re[i] * S.re[i] + S.im[i] * S.im[i];
    CHECK(std::abs(m.re[i]) < 1e-12);
    CHECK(m.im[i] == doctest::Approx(-p / (p + kMaskEps)).epsilon(1e-12));
    if (p > 1e-2) CHECK(m.im[i] == doctest::Approx(-1.0).epsilon(1e-6));
  }

  auto V = random_spec(6, 1, rng);
  auto mix = S;
  for (std::size_t i = 0; i < mix.re.size(); ++i) {
    mix.re[i] += V.re[i];
    mix.im[i] += V.im[i];
  }
  m = compute_cirm(mix, S, 0.0, 0.0);
  auto rec = apply_mask(m, mix);
  for (std::size_t i = 0; i < rec.re.size(); ++i) {
    // Bin-wise complex division oracle.
    const std::complex<double> y = std::complex(S.re[i], S.im[i]) / std::complex(mix.re[i], mix.im[i]);
    CHECK(std::abs(m.re[i] - y.real()) < 1e-9 * std::max(1.0, std::abs(y)));
    CHECK(std::abs(m.im[i] - y.imag()) < 1e-9 * std::max(1.0, std::abs(y)));
    CHECK(std::abs(rec.re[i] - S.re[i]) < 1e-9);
    CHECK(std::abs(rec.im[i] - S.im[i]) < 1e-9);
  }

  m = compute_cirm(mix, S);
  for (std::size_t i = 0; i < m.re.size(); ++i) CHECK(std::hypot(m.re[i], m.im[i]) <= kMaskClip + 1e-12);
}

TEST_CASE("compute_cirm: zero bins stay finite and clipping bounds the magnitude") {
  auto X = ComplexSpectrogram::zeros(2, 1, 255);
  auto S = ComplexSpectrogram::zeros(2, 1, 255);
  S.re.fill(1.0);
  auto m = compute_cirm(X, S);
  CHECK(m.re.all_finite());
  X.re.fill(0.01);
  m = compute_cirm(X, S);
  for (std::size_t i = 0; i < m.re.size(); ++i) CHECK(std::hypot(m.re[i], m.im[i]) == doctest::Approx(kMaskClip));
}

TEST_CASE("apply_mask_and_reconstruct: unit and zero masks") {
  std::mt19937_64 rng(3);
  auto x = random_signal(9000, rng);
  auto X = stft(Waveform::mono(x));
  auto y = apply_mask_and_reconstruct(MaskPair::unit(X.frames()), X).channels[0];
  REQUIRE(y.size() == x.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(y[i] - x[i]) < 1e-6);
  auto z = apply_mask_and_reconstruct(MaskPair::zeros(X.frames()), X).channels[0];
  for (double v : z) CHECK(v == 0.0);
}

TEST_CASE("mask pair stacking round trip") {
  std::mt19937_64 rng(4);
  auto y = lmfca::testing::random_tensor<float>({256, 4, 2}, rng);
  auto m = MaskPair::from_stacked(y);
  CHECK(m.re.at(7, 3, 0) == doctest::Approx(y.at(7, 3, 0)));
  CHECK(m.im.at(7, 3, 0) == doctest::Approx(y.at(7, 3, 1)));
  CHECK(m.stacked() == y.cast<double>());
  CHECK_THROWS_AS(MaskPair::from_stacked(Tensor<float>({4, 4, 3})), ContractViolation);
}

TEST_CASE("oracle cIRM recovers the clean signal above 20 dB") {
  std::mt19937_64 rng(5);
  const std::size_t n = 32000;
  auto s = voiced(n, 140.0);
  auto v = random_signal(n, rng, 0.1);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = s[i] + v[i];
  auto X = stft(Waveform::mono(x));
  auto mask = compute_cirm(X, stft(Waveform::mono(s)));
  auto est = apply_mask_and_reconstruct(mask, X).channels[0];
  CHECK(si_sdr_db(x, s) < 10.0);
  CHECK(si_sdr_db(est, s) > 20.0);
}

TEST_CASE("segmentation: frame multiples, identity on exact input, lossless join") {
  CHECK(padded_length(48000) == 48705);
  CHECK(frame_count(padded_length(48000)) == 192);
  CHECK(padded_length(48705) == 48705);
  for (std::size_t n = 1; n < 5000; n += 37) {
    const std::size_t p = padded_length(n);
    CHECK(p >= n);
    CHECK(frame_count(p) % 8 == 0);
    CHECK(frame_count(p) - frame_count(n) < 8);
  }

  std::mt19937_64 rng(6);
  Waveform w;
  for (int m = 0; m < 2; ++m) w.channels.push_back(random_signal(100000, rng));
  auto segs = segment_and_pad(w);
  REQUIRE(segs.size() == 3);
  CHECK(segs[0].audio.num_samples() == 48705);
  CHECK(segs[2].valid == 100000 - 96000);
  for (auto& s : segs) {
    CHECK(frame_count(s.audio.num_samples()) % 8 == 0);
    s.audio = istft(stft(s.audio));
  }
  auto joined = join_segments(segs);
  REQUIRE(joined.num_samples() == w.num_samples());
  for (int m = 0; m < 2; ++m)
    for (std::size_t i = 0; i < 100000; i += 7) CHECK(std::abs(joined.channels[m][i] - w.channels[m][i]) < 1e-8);

  Waveform exact = Waveform::mono(std::vector<double>(48705, 0.5));
  auto one = segment_and_pad(exact, 48705.0 / 16000);
  REQUIRE(one.size() == 1);
  CHECK(one[0].audio.channels == exact.channels);
}

TEST_CASE("wav: float and pcm round trips, rate check") {
  const auto dir = std::filesystem::temp_directory_path() / "lmfca_wav_test";
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(7);
  Waveform w;
  for (int m = 0; m < 6; ++m) w.channels.push_back(random_signal(1234, rng, 0.2));
  write_wav(dir / "f.wav", w);
  auto r = read_wav(dir / "f.wav");
  REQUIRE(r.num_channels() == 6);
  REQUIRE(r.num_samples() == 1234);
  for (int m = 0; m < 6; ++m)
    for (std::size_t i = 0; i < 1234; ++i) CHECK(r.channels[m][i] == static_cast<float>(w.channels[m][i]));

  write_wav(dir / "p.wav", w, SampleFormat::Pcm16);
  r = read_wav(dir / "p.wav");
  for (std::size_t i = 0; i < 1234; ++i) CHECK(std::abs(r.channels[3][i] - w.channels[3][i]) <= 0.5 / 32768 + 1e-12);

  Waveform w8 = w;
  w8.sample_rate = 8000;
  write_wav(dir / "r.wav", w8);
  CHECK_THROWS_AS(read_wav(dir / "r.wav"), LoadError);
  std::ofstream(dir / "junk.wav") << "not a wav";
  CHECK_THROWS_AS(read_wav(dir / "junk.wav"), LoadError);
  CHECK_THROWS_AS(read_wav(dir / "missing.wav"), LoadError);

  CHECK_NOTHROW(validate(w));
  CHECK_THROWS_AS(validate(w8), ContractViolation);
  Waveform bad = w;
  bad.channels[1][5] = std::nan("");
  CHECK_THROWS_AS(validate(bad), ContractViolation);
  std::filesystem::remove_all(dir);
}
