// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/eval/enhance.hpp"

#include "lmfca/dsp/segment.hpp"
#include "lmfca/model/network.hpp"
#include "lmfca/train/dataset.hpp"
#include "lmfca/train/trainer.hpp"

namespace lmfca::eval {

MaskEstimator identity_estimator() {
  return [](const SegmentInput& in) { return dsp::MaskPair::unit(in.mixture.frames()); };
}

MaskEstimator oracle_estimator() {
  return [](const SegmentInput& in) {
    require(in.direct != nullptr, "oracle mask needs the direct-path reference");
    return dsp::compute_cirm(in.mixture.channel(in.ref), *in.direct);
  };
}

Model Model::load(const std::filesystem::path& path) {
  const Checkpoint ck = load_checkpoint(path);
  Model m{train::checkpoint_config(ck), ParameterStore<float>()};
  // Builder order, so parameter iteration matches a freshly built model.
  const auto layout = model::build_parameters<float>(m.config);
  for (const auto& p : layout.params())
    m.params.add(p.name, ck.params.get(p.name).value(), false);
  return m;
}

MaskEstimator model_estimator(std::shared_ptr<const Model> model) {
  require(model != nullptr, "model_estimator: null model");
  return [model](const SegmentInput& in) {
    dsp::StackedInput stacked;
    try {
      stacked = dsp::normalize_and_stack(in.mixture, in.ref);
    } catch (const DegenerateInput&) {
      return dsp::MaskPair::zeros(in.mixture.frames());
    }
    NoGradGuard guard;
    const Var<float> y = model::model_forward(Var<float>(stacked.x.cast<float>()), model->config, model->params);
    return dsp::MaskPair::from_stacked(y.value());
  };
}

dsp::Waveform enhance(const dsp::Waveform& mixture, std::size_t mics, const MaskEstimator& estimator,
                      const dsp::Waveform* direct) {
  dsp::validate(mixture);
  const dsp::Waveform input = train::select_model_channels(mixture, mics);
  const std::size_t ref = train::reference_index(mics);
  auto segments = dsp::segment_and_pad(input);
  std::vector<dsp::Segment> direct_segments;
  if (direct) {
    require(direct->num_channels() == 1 && direct->num_samples() == mixture.num_samples(),
            "direct-path reference must be mono and as long as the mixture");
    direct_segments = dsp::segment_and_pad(*direct);
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const dsp::ComplexSpectrogram spec = dsp::stft(segments[s].audio);
    std::optional<dsp::ComplexSpectrogram> direct_spec;
    if (direct) direct_spec = dsp::stft(direct_segments[s].audio);
    const dsp::MaskPair mask = estimator({spec, ref, direct_spec ? &*direct_spec : nullptr});
    segments[s].audio = dsp::apply_mask_and_reconstruct(mask, spec.channel(ref));
  }
  return dsp::join_segments(segments);
}

}  // namespace lmfca::eval
