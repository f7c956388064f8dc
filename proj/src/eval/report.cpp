// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/eval/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <mutex>

#include "lmfca/model/complexity.hpp"
#include "lmfca/parallel.hpp"
#include "lmfca/room/mixture.hpp"
#include "lmfca/room/sources.hpp"
#include "lmfca/train/loss.hpp"

namespace lmfca::eval {

void EvalReport::finalize() {
  mean_noisy = mean_enhanced = mean_delta = 0;
  if (rows.empty()) return;
  for (const auto& r : rows) {
    mean_noisy += r.si_sdr_noisy;
    mean_enhanced += r.si_sdr_enhanced;
    mean_delta += r.delta;
  }
  const double n = static_cast<double>(rows.size());
  mean_noisy /= n;
  mean_enhanced /= n;
  mean_delta /= n;
}

void EvalReport::set_model_stats(const model::ModelConfig& config) {
  const auto c = model::count_macs_flops(config);
  params = c.params;
  gmacs = static_cast<double>(c.macs) / 1e9;
  gflops = static_cast<double>(c.flops()) / 1e9;
}

std::string EvalReport::to_tsv() const {
  std::string s = fmt::format("# estimator\t{}\n# params\t{}\n# gmacs\t{:.4f}\n# gflops\t{:.4f}\n# rtf\t{:.4f}\n",
                              estimator, params, gmacs, gflops, rtf);
  s += fmt::format("# rtf_phases\t{}\n", kRtfPhases);
  s += "id\tsi_sdr_noisy\tsi_sdr_enhanced\tdelta\n";
  for (const auto& r : rows)
    s += fmt::format("{}\t{:.6f}\t{:.6f}\t{:.6f}\n", r.id, r.si_sdr_noisy, r.si_sdr_enhanced, r.delta);
  s += fmt::format("mean\t{:.6f}\t{:.6f}\t{:.6f}\n", mean_noisy, mean_enhanced, mean_delta);
  for (const auto& f : failures) s += "# failed\t" + f + "\n";
  return s;
}

std::string EvalReport::to_table() const {
  std::size_t w = 4;
  for (const auto& r : rows) w = std::max(w, r.id.size());
  std::string s = fmt::format("{:<{}}  {:>10}  {:>10}  {:>8}\n", "id", w, "noisy dB", "enh. dB", "delta");
  for (const auto& r : rows)
    s += fmt::format("{:<{}}  {:>10.2f}  {:>10.2f}  {:>+8.2f}\n", r.id, w, r.si_sdr_noisy, r.si_sdr_enhanced, r.delta);
  s += fmt::format("{:<{}}  {:>10.2f}  {:>10.2f}  {:>+8.2f}\n", "mean", w, mean_noisy, mean_enhanced, mean_delta);
  s += fmt::format("estimator {}  utterances {}  failures {}", estimator, rows.size(), failures.size());
  if (params) s += fmt::format("  params {}  GMACs {:.3f}  GFLOPs {:.3f}", params, gmacs, gflops);
  if (rtf == rtf) s += fmt::format("  RTF {:.3f}", rtf);
  return s + "\n";
}

EvalReport evaluate(const room::Manifest& manifest, const std::string& split, std::size_t mics,
                    const MaskEstimator& estimator, const std::string& estimator_name, unsigned threads) {
  const auto records = manifest.split(split);
  std::vector<std::optional<EvalRow>> rows(records.size());
  std::vector<std::string> errors(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    const auto& r = records[i];
    try {
      const dsp::Waveform mix = dsp::read_wav(manifest.resolve(r.mixture));
      const dsp::Waveform direct = dsp::read_wav(manifest.resolve(r.direct));
      const dsp::Waveform out = enhance(mix, mics, estimator, &direct);
      require(out.num_samples() == mix.num_samples(), "enhancement changed the signal length");
      const auto& ref = direct.channels.at(0);
      const std::size_t ref_mic = mix.num_channels() > dsp::kReferenceMic ? dsp::kReferenceMic : 0;
      EvalRow row{r.id, train::si_sdr(mix.channels[ref_mic], ref),
                  train::si_sdr(out.channels[0], ref), 0};
      row.delta = row.si_sdr_enhanced - row.si_sdr_noisy;
      rows[i] = row;
    } catch (const std::exception& e) {
      errors[i] = r.id + ": " + e.what();
    }
  });
  EvalReport report;
  report.estimator = estimator_name;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (rows[i]) report.rows.push_back(*rows[i]);
    else report.failures.push_back(errors[i]);
  }
  report.finalize();
  return report;
}

RtfResult measure_rtf(const std::function<void(const dsp::Waveform&)>& process, const dsp::Waveform& input,
                      std::size_t repeats) {
  require(repeats > 0, "measure_rtf: repeats must be positive");
  RtfResult r;
  r.input_seconds = input.duration_seconds();
  require(r.input_seconds > 0, "measure_rtf: empty input");
  for (std::size_t i = 0; i < repeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    process(input);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.ratios.push_back(dt / r.input_seconds);
  }
  std::vector<double> sorted = r.ratios;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  r.rtf = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return r;
}

RtfResult measure_model_rtf(const Model& model, double duration_s, std::size_t repeats, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(duration_s * dsp::kSampleRate);
  const auto scene = room::sample_scene(seed);
  const auto mix = room::render_mixture(scene, room::synthetic_speech(n, seed), room::synthetic_noise(n, seed + 1),
                                        5.0, seed);
  const auto shared = std::make_shared<const Model>(Model{model.config, model.params.cast<float>()});
  const MaskEstimator est = model_estimator(shared);
  return measure_rtf([&](const dsp::Waveform& x) { enhance(x, model.config.mics, est); }, mix.mixture, repeats);
}

}  // namespace lmfca::eval
