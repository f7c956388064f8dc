// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/train/dataset.hpp"

#include "lmfca/dsp/segment.hpp"
#include "lmfca/parallel.hpp"

namespace lmfca::train {

std::size_t reference_index(std::size_t mics) {
  if (mics == 1) return 0;
  require(mics > dsp::kReferenceMic, "reference microphone index exceeds the channel count");
  return dsp::kReferenceMic;
}

dsp::Waveform select_model_channels(const dsp::Waveform& mixture, std::size_t mics) {
  if (mixture.num_channels() == mics) return mixture;
  if (mics == 1 && mixture.num_channels() > dsp::kReferenceMic) return mixture.channel(dsp::kReferenceMic);
  throw ContractViolation("mixture has " + std::to_string(mixture.num_channels()) + " channels, model expects " +
                          std::to_string(mics));
}

std::vector<TrainingExample> make_examples(const std::string& id, const dsp::Waveform& mixture,
                                           const dsp::Waveform& direct_ref, std::size_t mics, double seg_seconds) {
  dsp::validate(mixture);
  dsp::validate(direct_ref);
  require(direct_ref.num_channels() == 1, "direct-path reference must be mono");
  require(direct_ref.num_samples() == mixture.num_samples(), "mixture and reference differ in length");
  const dsp::Waveform input = select_model_channels(mixture, mics);
  const std::size_t ref = reference_index(mics);
  const auto mix_segs = dsp::segment_and_pad(input, seg_seconds);
  const auto ref_segs = dsp::segment_and_pad(direct_ref, seg_seconds);

  std::vector<TrainingExample> out;
  for (std::size_t s = 0; s < mix_segs.size(); ++s) {
    const dsp::ComplexSpectrogram spec = dsp::stft(mix_segs[s].audio);
    const dsp::ComplexSpectrogram target_spec = dsp::stft(ref_segs[s].audio);
    TrainingExample ex;
    try {
      const dsp::StackedInput stacked = dsp::normalize_and_stack(spec, ref);
      ex.input = stacked.x.cast<float>();
    } catch (const DegenerateInput&) {
      continue;
    }
    const auto& direct = ref_segs[s].audio.channels[0];
    bool silent = true;
    for (double v : direct) silent = silent && v == 0.0;
    if (silent) continue;
    ex.id = id + "#" + std::to_string(s);
    ex.mix_ref = spec.channel(ref);
    ex.target = dsp::compute_cirm(ex.mix_ref, target_spec);
    ex.direct_ref = direct;
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<TrainingExample> load_split(const room::Manifest& manifest, const std::string& split, std::size_t mics,
                                        unsigned threads) {
  const auto records = manifest.split(split);
  std::vector<std::vector<TrainingExample>> parts(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    const auto& r = records[i];
    parts[i] = make_examples(r.id, dsp::read_wav(manifest.resolve(r.mixture)),
                             dsp::read_wav(manifest.resolve(r.direct)), mics);
  });
  std::vector<TrainingExample> out;
  for (auto& p : parts)
    for (auto& ex : p) out.push_back(std::move(ex));
  return out;
}

}  // namespace lmfca::train
