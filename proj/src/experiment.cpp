// Copyright 2026 The dnadapt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dnadapt/experiment.hpp"

#include "dnadapt/error.hpp"
#include "dnadapt/random.hpp"

namespace dnadapt {

std::vector<std::string> TranscribeAudio(const ModelState& model, const DomainDataset& test,
                                         int max_len) {
  std::vector<std::string> out;
  out.reserve(test.size());
  for (const Utterance& u : test.utterances) {
    if (!u.surrogate_audio) throw Error(ErrorCode::kMissingAudio, u.id);
    const RenderedPrompt p =
        Render(*u.surrogate_audio, u.text, ItemVariant::kNoise, model.spec.prompt);
    out.push_back(Decode(model, p.input_region, View::kAudio, max_len).text);
  }
  return out;
}

double TestWer(const ModelState& model, const DomainDataset& test, int max_len) {
  const std::vector<std::string> hyps = TranscribeAudio(model, test, max_len);
  CorpusWer total;
  for (std::size_t i = 0; i < hyps.size(); ++i) total.Add(Wer(test.utterances[i].text, hyps[i]));
  return total.Percent();
}

ModelState TrainBaseModel(const DomainDataset& source_train, const ExperimentConfig& cfg,
                          TrainLog* log) {
  DomainDataset no_target;
  no_target.kind = DatasetKind::kTargetTextOnly;
  const MixtureWeights audio_only{1.0, 0.0, 0.0, 0.0};
  const BatchComposer composer(source_train, no_target, audio_only, cfg.noise, nullptr,
                               cfg.composer);
  ModelState model = InitModel(cfg.base, cfg.composer.prompt);
  return Train(std::move(model),
               StreamFrom(composer, cfg.base.batch_size, DeriveSeed(cfg.seed, "base")), cfg.base,
               log);
}

ModelState AdaptModel(const ModelState& base, const ExperimentData& data,
                      const MixtureWeights& weights, ItemVariant text_variant,
                      const ExperimentConfig& cfg, TrainLog* log) {
  ComposerOptions options = cfg.composer;
  options.text_variant = text_variant;
  const BatchComposer composer(data.source_train, data.target_train, weights, cfg.noise,
                               data.table ? &*data.table : nullptr, options);
  ModelState model = base;
  model.ResetOptimizer();
  return Train(std::move(model),
               StreamFrom(composer, cfg.adapt.batch_size, DeriveSeed(cfg.seed, "adapt")),
               cfg.adapt, log);
}

AdaptationExperiment::AdaptationExperiment(ExperimentData data, ExperimentConfig cfg)
    : data_(std::move(data)), cfg_(std::move(cfg)) {}

void AdaptationExperiment::SetBase(ModelState base) {
  base_ = std::move(base);
  base_target_wer_.reset();
  base_source_wer_.reset();
}

const ModelState& AdaptationExperiment::Base() {
  if (!base_) base_ = TrainBaseModel(data_.source_train, cfg_);
  return *base_;
}

double AdaptationExperiment::BaseTargetWer() {
  if (!base_target_wer_) base_target_wer_ = TestWer(Base(), data_.target_test, cfg_.decode_max_len);
  return *base_target_wer_;
}

double AdaptationExperiment::BaseSourceWer() {
  if (!base_source_wer_) base_source_wer_ = TestWer(Base(), data_.source_test, cfg_.decode_max_len);
  return *base_source_wer_;
}

AdaptationResult AdaptationExperiment::Run(const MixtureWeights& weights,
                                           ItemVariant text_variant) {
  const ModelState adapted = AdaptModel(Base(), data_, weights, text_variant, cfg_);
  AdaptationResult r;
  r.base_wer = BaseTargetWer();
  r.base_src_wer = BaseSourceWer();
  r.adapted_wer = TestWer(adapted, data_.target_test, cfg_.decode_max_len);
  r.src_wer_after = TestWer(adapted, data_.source_test, cfg_.decode_max_len);
  return r;
}

AdaptationResult RunAdaptationExperiment(const ExperimentData& data, const ExperimentConfig& cfg,
                                         const MixtureWeights& weights) {
  AdaptationExperiment experiment(data, cfg);
  return experiment.Run(weights);
}

MixtureWeights AblateWeights(double tau, const std::array<bool, 3>& active) {
  const int count = static_cast<int>(active[0]) + active[1] + active[2];
  if (count == 0) throw Error(ErrorCode::kInvalidArgument, "at least one source view");
  if (!(tau >= 0.0 && tau < 1.0)) throw Error(ErrorCode::kInvalidTau, "tau must be in [0, 1)");
  const double share = (1.0 - tau) / count;
  MixtureWeights w;
  w.sigma_a = active[0] ? share : 0.0;
  w.sigma_ta = active[1] ? share : 0.0;
  w.sigma_t = active[2] ? share : 0.0;
  w.tau = tau;
  return w;
}

std::vector<AblationRow> CompositionRows() {
  return {
      {"audio", {true, false, false}, ItemVariant::kNoise},
      {"audio+proj", {true, true, false}, ItemVariant::kNoise},
      {"audio+text", {true, false, true}, ItemVariant::kNoise},
      {"proj+text", {false, true, true}, ItemVariant::kNoise},
      {"all", {true, true, true}, ItemVariant::kNoise},
  };
}

std::vector<AblationRow> ItemTypeRows() {
  std::vector<AblationRow> rows;
  for (ItemVariant v : {ItemVariant::kNoise, ItemVariant::kEcho, ItemVariant::kEmpty,
                        ItemVariant::kNoPrompt}) {
    rows.push_back({"item:" + VariantName(v), {true, true, true}, v});
  }
  return rows;
}

}  // namespace dnadapt
