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

// Base training, text-only adaptation and the ablation rows.
//
// The base model sees AUDIO items only. Adaptation starts from a copy of the
// base model with fresh optimizer state and trains on composed four-view
// batches. Both models are scored by greedy decoding of AUDIO-view test
// inputs.

#ifndef DNADAPT_EXPERIMENT_HPP_
#define DNADAPT_EXPERIMENT_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dnadapt/batching.hpp"
#include "dnadapt/corpus.hpp"
#include "dnadapt/embedding_table.hpp"
#include "dnadapt/eval.hpp"
#include "dnadapt/tinylm.hpp"

namespace dnadapt {

struct ExperimentConfig {
  TrainConfig base;
  /// Vocabulary and dims are taken from the base model.
  TrainConfig adapt;
  NoiseConfig noise;
  ComposerOptions composer;
  /// Seeds the batch streams of both phases.
  std::uint64_t seed = 1;
  int decode_max_len = 96;
};

struct ExperimentData {
  DomainDataset source_train;
  DomainDataset source_test;
  DomainDataset target_train;
  DomainDataset target_test;
  /// Needed when sigma_ta > 0.
  std::optional<EmbeddingTable> table;
};

struct AdaptationResult {
  double base_wer = 0.0;         // target test, base model (percent)
  double adapted_wer = 0.0;      // target test, adapted model
  double src_wer_after = 0.0;    // source test, adapted model
  double base_src_wer = 0.0;     // source test, base model
};

/// Corpus WER (percent) of greedy AUDIO-view decoding over a test split.
double TestWer(const ModelState& model, const DomainDataset& test, int max_len);

/// Per-utterance hypotheses of the same decoding.
std::vector<std::string> TranscribeAudio(const ModelState& model, const DomainDataset& test,
                                         int max_len);

ModelState TrainBaseModel(const DomainDataset& source_train, const ExperimentConfig& cfg,
                          TrainLog* log = nullptr);

ModelState AdaptModel(const ModelState& base, const ExperimentData& data,
                      const MixtureWeights& weights, ItemVariant text_variant,
                      const ExperimentConfig& cfg, TrainLog* log = nullptr);

/// Trains the base model once and scores any number of adaptation runs
/// against it.
class AdaptationExperiment {
 public:
  AdaptationExperiment(ExperimentData data, ExperimentConfig cfg);

  /// Uses an externally trained base model instead of training one.
  void SetBase(ModelState base);
  const ModelState& Base();
  double BaseTargetWer();
  double BaseSourceWer();

  AdaptationResult Run(const MixtureWeights& weights,
                       ItemVariant text_variant = ItemVariant::kNoise);

  const ExperimentData& data() const { return data_; }
  const ExperimentConfig& config() const { return cfg_; }

 private:
  ExperimentData data_;
  ExperimentConfig cfg_;
  std::optional<ModelState> base_;
  std::optional<double> base_target_wer_, base_source_wer_;
};

/// Trains a base model on `src` and adapts it with `weights`.
AdaptationResult RunAdaptationExperiment(const ExperimentData& data, const ExperimentConfig& cfg,
                                         const MixtureWeights& weights);

/// Keeps tau, zeroes the inactive source views and splits 1 - tau equally
/// among the active ones.
MixtureWeights AblateWeights(double tau, const std::array<bool, 3>& active);

struct AblationRow {
  std::string name;
  std::array<bool, 3> active{true, true, true};  // sigma_a, sigma_ta, sigma_t
  ItemVariant item_type = ItemVariant::kNoise;
};

/// The five source-view combinations, full mixture last.
std::vector<AblationRow> CompositionRows();
/// NOISE, ECHO, EMPTY, NO_PROMPT with all views active.
std::vector<AblationRow> ItemTypeRows();

}  // namespace dnadapt

#endif  // DNADAPT_EXPERIMENT_HPP_
