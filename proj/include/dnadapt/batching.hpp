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

// Four-view batch composition.
//
// Every slot of a batch independently draws its view from the categorical
// distribution (sigma_a, sigma_ta, sigma_t, tau), then an utterance uniformly
// with replacement from the owning dataset:
//
//   AUDIO           source   input = stored surrogate audio
//   PROJ_NOISE      source   input = nearest tokens of the projected audio
//   TEXT_NOISE_SRC  source   input = TextNoise(t)
//   TEXT_NOISE_TGT  target   input = TextNoise(t)
//
// The draw for slot s of batch b depends only on (seed, b), so batches can be
// composed in any order or in parallel.

#ifndef DNADAPT_BATCHING_HPP_
#define DNADAPT_BATCHING_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dnadapt/corpus.hpp"
#include "dnadapt/mixture.hpp"
#include "dnadapt/noising.hpp"
#include "dnadapt/prompting.hpp"

namespace dnadapt {

struct BatchItem {
  View view = View::kAudio;
  std::string utterance_id;
  std::string input_region;
  std::string target_region;

  bool operator==(const BatchItem&) const = default;
};

using Batch = std::vector<BatchItem>;

struct ComposerOptions {
  /// Item type used for the TEXT_NOISE_SRC and TEXT_NOISE_TGT views.
  ItemVariant text_variant = ItemVariant::kNoise;
  PromptTemplate prompt;
  SurrogateProjector projector;
  std::uint64_t projector_noise_seed = 0x5eedULL;
};

class BatchComposer {
 public:
  /// `table` may be null if sigma_ta is zero. The datasets and table must
  /// outlive the composer. Logs a warning when sigma_a is zero.
  BatchComposer(const DomainDataset& source, const DomainDataset& target,
                const MixtureWeights& weights, const NoiseConfig& noise,
                const EmbeddingTable* table, ComposerOptions options = {});

  Batch Compose(int batch_size, std::int64_t batch_index, std::uint64_t seed) const;

  /// Input region for one utterance under a given view, independent of any
  /// batch. `item_key` seeds the text noise.
  std::string RenderInput(View view, const Utterance& u, std::string_view item_key) const;

  /// Projector-induced noise of a paired utterance: quantized frames of its
  /// surrogate audio. Fixed per utterance.
  std::string ProjectorNoise(const Utterance& u) const;

  const MixtureWeights& weights() const { return weights_; }
  bool forgetting_warning() const { return weights_.RisksForgetting(); }

 private:
  const DomainDataset& source_;
  const DomainDataset& target_;
  MixtureWeights weights_;
  NoiseConfig noise_;
  const EmbeddingTable* table_;
  ComposerOptions options_;
};

/// Projector-induced noise of one paired utterance under `options`; what
/// BatchComposer::ProjectorNoise returns.
std::string ProjectorNoise(const Utterance& u, const EmbeddingTable& table,
                           const ComposerOptions& options);

/// Free-function form; equivalent to BatchComposer(...).Compose(...).
Batch ComposeBatch(const DomainDataset& source, const DomainDataset& target,
                   const MixtureWeights& weights, int batch_size, std::int64_t batch_index,
                   std::uint64_t seed, const NoiseConfig& noise, const EmbeddingTable* table,
                   const ComposerOptions& options = {});

/// One record per item: batch_index, view, utterance_id, input_region,
/// target_region.
std::string SerializeBatches(const std::vector<Batch>& batches);
void ExportManifest(const std::vector<Batch>& batches, const std::string& path);
std::vector<Batch> ParseBatches(std::istream& in);
std::vector<Batch> ReadBatchManifest(const std::string& path);

}  // namespace dnadapt

#endif  // DNADAPT_BATCHING_HPP_
