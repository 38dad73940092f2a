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

// Desk-scale conditional character model: training, greedy decoding and
// checkpoints. The loss is next-symbol cross-entropy over the target region
// (transcript characters plus EOS), averaged over the target symbols of a
// batch.

#ifndef DNADAPT_TINYLM_HPP_
#define DNADAPT_TINYLM_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dnadapt/batching.hpp"
#include "dnadapt/tokenizer.hpp"
#include "dnadapt/transformer.hpp"

namespace dnadapt {

enum class OptimizerKind { kAdam, kSgd };

std::string OptimizerName(OptimizerKind kind);
OptimizerKind ParseOptimizer(const std::string& name);

struct TrainConfig {
  std::string vocab = DefaultCharset();
  ModelDims dims;
  double learning_rate = 3e-3;
  int warmup_steps = 100;
  int batch_size = 16;
  std::int64_t max_steps = 1000;
  std::uint64_t seed = 0;

  /// After warmup the rate decays linearly to learning_rate * final_lr_fraction
  /// at max_steps; 1 keeps it constant.
  double final_lr_fraction = 1.0;

  OptimizerKind optimizer = OptimizerKind::kAdam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  /// Global gradient-norm clip; 0 disables.
  double grad_clip = 1.0;
  bool allow_unk = true;

  void Validate() const;
  bool operator==(const TrainConfig&) const = default;
};

/// Everything needed to rebuild the network around a parameter vector.
struct ModelSpec {
  std::string vocab = DefaultCharset();
  ModelDims dims;
  PromptTemplate prompt;
  bool allow_unk = true;

  CharTokenizer Tokenizer() const { return CharTokenizer(vocab, prompt, allow_unk); }
  bool operator==(const ModelSpec&) const = default;
};

struct ModelState {
  ModelSpec spec;
  Eigen::VectorXf parameters;
  std::int64_t step_count = 0;
  std::uint64_t rng_state = 0;

  // Optimizer moments; empty until the first Adam step.
  Eigen::VectorXf adam_m, adam_v;
  std::int64_t adam_steps = 0;

  ParameterLayout Layout() const;
  void ResetOptimizer();
};

ModelState InitModel(const TrainConfig& cfg, const PromptTemplate& prompt = {});

/// Returns the next batch, or nullopt when the stream is exhausted.
using BatchStream = std::function<std::optional<Batch>()>;

BatchStream StreamFrom(const std::vector<Batch>& batches);
/// Batches `start, start + 1, ...` of a composer; never exhausts on its own.
BatchStream StreamFrom(const BatchComposer& composer, int batch_size, std::uint64_t seed,
                       std::int64_t start = 0);

struct TrainLog {
  std::vector<double> losses;  // mean target cross-entropy per step
  /// Called every `monitor_every` steps (0 disables) with the state so far.
  std::function<void(const ModelState&)> monitor;
  int monitor_every = 0;

  /// Mean of the last `n` losses (all if fewer).
  double TailMean(std::size_t n = 100) const;
};

/// Consumes the stream until it ends or `cfg.max_steps` steps have run.
/// The schedule (linear warmup, then linear decay) counts the steps of this
/// call. Throws NonFiniteLoss on NaN/Inf loss or parameters.
ModelState Train(ModelState model, const BatchStream& batches, const TrainConfig& cfg,
                 TrainLog* log = nullptr);

/// Packs a batch for the transformer; sequences longer than max_positions are
/// cut at the end.
PackedBatch PackBatch(const CharTokenizer& tokenizer, const Batch& batch, int max_positions);

struct LossTotals {
  double sum = 0.0;         // nats
  std::int64_t count = 0;   // scored target symbols
};

/// Summed target cross-entropy of a batch without updating.
LossTotals TargetLoss(const ModelState& model, const Batch& batch);
/// sum / count of TargetLoss, or 0 for a batch without targets.
double MeanLoss(const ModelState& model, const Batch& batch);

struct DecodeResult {
  std::string text;
  bool truncated = false;  // stopped at max_len or max_positions before EOS
};

/// Greedy decoding over character symbols and EOS.
DecodeResult Decode(const ModelState& model, const std::string& input_region, View view,
                    int max_len);

void SaveCheckpoint(const ModelState& model, const std::string& path);
ModelState LoadCheckpoint(const std::string& path);
std::string SerializeCheckpoint(const ModelState& model);
ModelState DeserializeCheckpoint(const std::string& bytes);

}  // namespace dnadapt

#endif  // DNADAPT_TINYLM_HPP_
