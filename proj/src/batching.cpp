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

#include "dnadapt/batching.hpp"

#include <spdlog/spdlog.h>

#include <fstream>
#include <sstream>

#include "dnadapt/error.hpp"
#include "dnadapt/random.hpp"
#include "dnadapt/text.hpp"
#include "json.hpp"

namespace dnadapt {

BatchComposer::BatchComposer(const DomainDataset& source, const DomainDataset& target,
                             const MixtureWeights& weights, const NoiseConfig& noise,
                             const EmbeddingTable* table, ComposerOptions options)
    : source_(source),
      target_(target),
      weights_(weights),
      noise_(noise),
      table_(table),
      options_(std::move(options)) {
  if (!weights_.IsValid()) {
    throw Error(ErrorCode::kInvalidArgument, "mixture weights must be >= 0 and sum to 1");
  }
  if (source_.kind != DatasetKind::kSourcePaired) {
    throw Error(ErrorCode::kInvalidArgument, "source dataset must be SOURCE_PAIRED");
  }
  if (target_.kind != DatasetKind::kTargetTextOnly) {
    throw Error(ErrorCode::kInvalidArgument, "target dataset must be TARGET_TEXT_ONLY");
  }
  const double source_mass = weights_.sigma_a + weights_.sigma_ta + weights_.sigma_t;
  if (source_mass > 0.0 && source_.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "source dataset is empty");
  }
  if (weights_.tau > 0.0 && target_.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "target dataset is empty");
  }
  if (weights_.sigma_ta > 0.0 && (table_ == nullptr || table_->empty())) {
    throw Error(ErrorCode::kWeightViewMismatch,
                "sigma_ta > 0 but no embedding table for projector noise");
  }
  if (weights_.sigma_ta > 0.0 && table_->dim() != options_.projector.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "projector dim does not match embedding table");
  }
  noise_.Validate();
  if (forgetting_warning()) {
    spdlog::warn(
        "sigma_a = 0: batches carry no paired audio; expect the speech-text alignment to be "
        "forgotten");
  }
}

std::string ProjectorNoise(const Utterance& u, const EmbeddingTable& table,
                           const ComposerOptions& options) {
  if (!u.surrogate_audio) throw Error(ErrorCode::kMissingAudio, u.id);
  if (table.empty()) {
    throw Error(ErrorCode::kWeightViewMismatch, "projector noise requested without a table");
  }
  const Eigen::MatrixXf frames =
      options.projector.Project(*u.surrogate_audio, options.projector_noise_seed, u.id);
  return QuantizeToTokens(frames, table);
}

std::string BatchComposer::ProjectorNoise(const Utterance& u) const {
  if (table_ == nullptr) {
    throw Error(ErrorCode::kWeightViewMismatch, "projector noise requested without a table");
  }
  return dnadapt::ProjectorNoise(u, *table_, options_);
}

std::string BatchComposer::RenderInput(View view, const Utterance& u,
                                       std::string_view item_key) const {
  switch (view) {
    case View::kAudio:
      if (!u.surrogate_audio) throw Error(ErrorCode::kMissingAudio, u.id);
      return Render(*u.surrogate_audio, u.text, ItemVariant::kNoise, options_.prompt).input_region;
    case View::kProjNoise:
      return Render(ProjectorNoise(u), u.text, ItemVariant::kNoise, options_.prompt).input_region;
    case View::kTextNoiseSrc:
    case View::kTextNoiseTgt: {
      const ItemVariant variant = options_.text_variant;
      const std::string noisy =
          variant == ItemVariant::kNoise ? TextNoise(u.text, noise_, item_key) : std::string();
      return Render(noisy, u.text, variant, options_.prompt).input_region;
    }
  }
  return {};
}

Batch BatchComposer::Compose(int batch_size, std::int64_t batch_index, std::uint64_t seed) const {
  if (batch_size < 1) throw Error(ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  const auto w = weights_.AsArray();
  const bool all_active = w[0] > 0 && w[1] > 0 && w[2] > 0 && w[3] > 0;
  if (all_active && batch_size < 4) {
    throw Error(ErrorCode::kInvalidArgument, "batch_size must be >= 4 with all four views active");
  }
  std::array<double, 4> cumulative{};
  double acc = 0.0;
  int last_active = 0;
  for (int k = 0; k < 4; ++k) {
    acc += w[static_cast<std::size_t>(k)];
    cumulative[static_cast<std::size_t>(k)] = acc;
    if (w[static_cast<std::size_t>(k)] > 0.0) last_active = k;
  }

  Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(batch_index)));
  Batch batch;
  batch.reserve(static_cast<std::size_t>(batch_size));
  for (int slot = 0; slot < batch_size; ++slot) {
    const double u = rng.Uniform01() * acc;
    int k = last_active;
    for (int c = 0; c < 4; ++c) {
      if (w[static_cast<std::size_t>(c)] > 0.0 && u < cumulative[static_cast<std::size_t>(c)]) {
        k = c;
        break;
      }
    }
    const View view = static_cast<View>(k);
    const DomainDataset& owner = view == View::kTextNoiseTgt ? target_ : source_;
    const Utterance& utt = owner.utterances[rng.UniformIndex(owner.size())];
    const std::string key = std::to_string(seed) + "/" + std::to_string(batch_index) + "/" +
                            std::to_string(slot) + "/" + utt.id;
    BatchItem item;
    item.view = view;
    item.utterance_id = utt.id;
    item.input_region = RenderInput(view, utt, key);
    item.target_region = utt.text;
    batch.push_back(std::move(item));
  }
  return batch;
}

Batch ComposeBatch(const DomainDataset& source, const DomainDataset& target,
                   const MixtureWeights& weights, int batch_size, std::int64_t batch_index,
                   std::uint64_t seed, const NoiseConfig& noise, const EmbeddingTable* table,
                   const ComposerOptions& options) {
  return BatchComposer(source, target, weights, noise, table, options)
      .Compose(batch_size, batch_index, seed);
}

std::string SerializeBatches(const std::vector<Batch>& batches) {
  std::string out;
  for (std::size_t b = 0; b < batches.size(); ++b) {
    for (const BatchItem& item : batches[b]) {
      nlohmann::ordered_json record;
      record["batch_index"] = b;
      record["view"] = ViewName(item.view);
      record["utterance_id"] = item.utterance_id;
      record["input_region"] = item.input_region;
      record["target_region"] = item.target_region;
      out += record.dump();
      out.push_back('\n');
    }
  }
  return out;
}

void ExportManifest(const std::vector<Batch>& batches, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write batch manifest " + path);
  out << SerializeBatches(batches);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

std::vector<Batch> ParseBatches(std::istream& in) {
  std::vector<Batch> batches;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      const auto record = nlohmann::json::parse(line);
      const auto index = record.at("batch_index").get<std::size_t>();
      if (index >= batches.size()) batches.resize(index + 1);
      BatchItem item;
      item.view = ParseView(record.at("view").get<std::string>());
      item.utterance_id = record.at("utterance_id").get<std::string>();
      item.input_region = record.at("input_region").get<std::string>();
      item.target_region = record.at("target_region").get<std::string>();
      batches[index].push_back(std::move(item));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedRecord,
                  "batch manifest line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return batches;
}

std::vector<Batch> ReadBatchManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open batch manifest " + path);
  return ParseBatches(in);
}

}  // namespace dnadapt
