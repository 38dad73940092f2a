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

#include "dnadapt/tinylm.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "dnadapt/binary_io.hpp"
#include "dnadapt/error.hpp"
#include "dnadapt/key_value.hpp"

namespace dnadapt {

std::string OptimizerName(OptimizerKind kind) {
  return kind == OptimizerKind::kAdam ? "adam" : "sgd";
}

OptimizerKind ParseOptimizer(const std::string& name) {
  if (name == "adam") return OptimizerKind::kAdam;
  if (name == "sgd") return OptimizerKind::kSgd;
  throw Error(ErrorCode::kInvalidConfig, "unknown optimizer '" + name + "'");
}

void TrainConfig::Validate() const {
  dims.Validate();
  if (!(learning_rate > 0.0) || batch_size < 1 || warmup_steps < 0 || max_steps < 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "train config needs learning_rate > 0, batch_size >= 1, non-negative steps");
  }
  if (vocab.empty()) throw Error(ErrorCode::kInvalidConfig, "empty vocab");
  if (!(final_lr_fraction >= 0.0 && final_lr_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "final_lr_fraction must be in [0, 1]");
  }
  if (!(beta1 >= 0 && beta1 < 1 && beta2 >= 0 && beta2 < 1 && epsilon > 0 && grad_clip >= 0)) {
    throw Error(ErrorCode::kInvalidConfig, "bad optimizer hyperparameters");
  }
}

ParameterLayout ModelState::Layout() const {
  return ParameterLayout(spec.dims, spec.Tokenizer().vocab_size());
}

void ModelState::ResetOptimizer() {
  adam_m.resize(0);
  adam_v.resize(0);
  adam_steps = 0;
}

ModelState InitModel(const TrainConfig& cfg, const PromptTemplate& prompt) {
  cfg.Validate();
  ModelState model;
  model.spec.vocab = cfg.vocab;
  model.spec.dims = cfg.dims;
  model.spec.prompt = prompt;
  model.spec.allow_unk = cfg.allow_unk;
  const Transformer<float> net(cfg.dims, model.spec.Tokenizer().vocab_size());
  model.rng_state = DeriveSeed(cfg.seed, "init");
  model.parameters = net.Initialize(model.rng_state);
  return model;
}

BatchStream StreamFrom(const std::vector<Batch>& batches) {
  auto next = std::make_shared<std::size_t>(0);
  return [&batches, next]() -> std::optional<Batch> {
    if (*next >= batches.size()) return std::nullopt;
    return batches[(*next)++];
  };
}

BatchStream StreamFrom(const BatchComposer& composer, int batch_size, std::uint64_t seed,
                       std::int64_t start) {
  auto next = std::make_shared<std::int64_t>(start);
  return [&composer, batch_size, seed, next]() -> std::optional<Batch> {
    return composer.Compose(batch_size, (*next)++, seed);
  };
}

double TrainLog::TailMean(std::size_t n) const {
  if (losses.empty()) return 0.0;
  const std::size_t k = std::min(n, losses.size());
  double sum = 0.0;
  for (std::size_t i = losses.size() - k; i < losses.size(); ++i) sum += losses[i];
  return sum / static_cast<double>(k);
}

PackedBatch PackBatch(const CharTokenizer& tokenizer, const Batch& batch, int max_positions) {
  PackedBatch packed;
  for (const BatchItem& item : batch) {
    const EncodedItem enc = tokenizer.Encode(item.input_region, item.target_region, item.view);
    const std::size_t n =
        std::min(enc.tokens.size(), static_cast<std::size_t>(max_positions) + 1);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      packed.tokens.push_back(enc.tokens[p]);
      packed.audio.push_back(enc.audio[p]);
      packed.positions.push_back(static_cast<int>(p));
      const bool scored = p + 1 >= enc.target_begin;
      packed.targets.push_back(scored ? enc.tokens[p + 1] : -1);
      if (scored) ++packed.num_targets;
    }
    packed.offsets.push_back(packed.rows());
  }
  return packed;
}

namespace {

Transformer<float> NetworkFor(const ModelState& model, const CharTokenizer& tok) {
  Transformer<float> net(model.spec.dims, tok.vocab_size());
  if (net.layout().size() != model.parameters.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "parameter vector does not match model spec");
  }
  return net;
}

double ScheduleFactor(const TrainConfig& cfg, std::int64_t step) {
  const auto t = static_cast<double>(step + 1);
  const auto warmup = static_cast<double>(cfg.warmup_steps);
  if (t <= warmup) return t / warmup;
  const double span = static_cast<double>(cfg.max_steps) - warmup;
  if (span <= 0.0) return 1.0;
  const double progress = std::min(1.0, (t - warmup) / span);
  return 1.0 - (1.0 - cfg.final_lr_fraction) * progress;
}

}  // namespace

LossTotals TargetLoss(const ModelState& model, const Batch& batch) {
  const CharTokenizer tok = model.spec.Tokenizer();
  const Transformer<float> net = NetworkFor(model, tok);
  const PackedBatch packed = PackBatch(tok, batch, model.spec.dims.max_positions);
  LossTotals totals;
  totals.count = packed.num_targets;
  if (totals.count > 0) totals.sum = static_cast<double>(net.Loss(model.parameters, packed));
  return totals;
}

double MeanLoss(const ModelState& model, const Batch& batch) {
  const LossTotals t = TargetLoss(model, batch);
  return t.count == 0 ? 0.0 : t.sum / static_cast<double>(t.count);
}

ModelState Train(ModelState model, const BatchStream& batches, const TrainConfig& cfg,
                 TrainLog* log) {
  cfg.Validate();
  const CharTokenizer tok = model.spec.Tokenizer();
  const Transformer<float> net = NetworkFor(model, tok);
  const Eigen::Index n = model.parameters.size();
  const bool adam = cfg.optimizer == OptimizerKind::kAdam;
  if (adam && model.adam_m.size() != n) {
    model.adam_m = Eigen::VectorXf::Zero(n);
    model.adam_v = Eigen::VectorXf::Zero(n);
    model.adam_steps = 0;
  }
  Eigen::VectorXf grad(n);
  for (std::int64_t local = 0; local < cfg.max_steps; ++local) {
    std::optional<Batch> batch = batches();
    if (!batch) break;
    const PackedBatch packed = PackBatch(tok, *batch, model.spec.dims.max_positions);
    if (packed.num_targets == 0) continue;

    grad.setZero();
    const float inv = 1.0f / static_cast<float>(packed.num_targets);
    const double loss =
        static_cast<double>(net.Loss(model.parameters, packed, &grad, inv)) * inv;
    if (!std::isfinite(loss) || !grad.allFinite()) {
      throw Error(ErrorCode::kNonFiniteLoss,
                  "non-finite loss at step " + std::to_string(model.step_count));
    }
    if (cfg.grad_clip > 0.0) {
      const double norm = grad.cast<double>().norm();
      if (norm > cfg.grad_clip) grad *= static_cast<float>(cfg.grad_clip / norm);
    }
    const float lr = static_cast<float>(cfg.learning_rate * ScheduleFactor(cfg, local));
    if (adam) {
      ++model.adam_steps;
      const auto b1 = static_cast<float>(cfg.beta1), b2 = static_cast<float>(cfg.beta2);
      model.adam_m = b1 * model.adam_m + (1.0f - b1) * grad;
      model.adam_v = b2 * model.adam_v + (1.0f - b2) * grad.cwiseAbs2();
      const auto t = static_cast<double>(model.adam_steps);
      const auto c1 = static_cast<float>(1.0 - std::pow(cfg.beta1, t));
      const auto c2 = static_cast<float>(1.0 - std::pow(cfg.beta2, t));
      const auto eps = static_cast<float>(cfg.epsilon);
      model.parameters.array() -=
          lr * (model.adam_m.array() / c1) / ((model.adam_v.array() / c2).sqrt() + eps);
    } else {
      model.parameters -= lr * grad;
    }
    if (!model.parameters.allFinite()) {
      throw Error(ErrorCode::kNonFiniteLoss,
                  "non-finite parameters after step " + std::to_string(model.step_count));
    }
    ++model.step_count;
    if (log != nullptr) {
      log->losses.push_back(loss);
      if (log->monitor && log->monitor_every > 0 &&
          (local + 1) % log->monitor_every == 0) {
        log->monitor(model);
      }
    }
  }
  return model;
}

DecodeResult Decode(const ModelState& model, const std::string& input_region, View view,
                    int max_len) {
  if (max_len < 1) throw Error(ErrorCode::kInvalidArgument, "max_len must be >= 1");
  const CharTokenizer tok = model.spec.Tokenizer();
  const Transformer<float> net = NetworkFor(model, tok);
  const EncodedItem prefix = tok.EncodeInput(input_region, view);
  const auto max_positions = static_cast<std::size_t>(model.spec.dims.max_positions);

  DecodeResult result;
  if (prefix.tokens.size() > max_positions) {
    result.truncated = true;
    return result;
  }
  auto cache = net.NewCache();
  Eigen::RowVectorXf logits;
  for (std::size_t i = 0; i < prefix.tokens.size(); ++i) {
    logits = net.Step(model.parameters, prefix.tokens[i], prefix.audio[i] != 0, cache);
  }
  std::vector<int> out;
  while (true) {
    int best = CharTokenizer::kEos;
    for (int id = CharTokenizer::kNumSpecial; id < tok.vocab_size(); ++id) {
      if (logits[id] > logits[best]) best = id;
    }
    if (best == CharTokenizer::kEos) break;
    out.push_back(best);
    if (static_cast<int>(out.size()) >= max_len ||
        static_cast<std::size_t>(cache.length) >= max_positions) {
      result.truncated = true;
      break;
    }
    logits = net.Step(model.parameters, best, false, cache);
  }
  result.text = tok.Decode(out);
  return result;
}

// Checkpoint layout (little-endian):
//   "DNLM", u32 version,
//   string spec (flat key-value text),
//   u64 step_count, u64 rng_state,
//   u32 block count, per block: string name, u32 rows, u32 cols,
//   then all parameters as f32 in block order.

namespace {

constexpr char kMagic[4] = {'D', 'N', 'L', 'M'};
constexpr std::uint32_t kVersion = 1;

KeyValues SpecToKeyValues(const ModelSpec& spec) {
  return {
      {"vocab", spec.vocab},
      {"embed_dim", std::to_string(spec.dims.embed_dim)},
      {"hidden_dim", std::to_string(spec.dims.hidden_dim)},
      {"layers", std::to_string(spec.dims.layers)},
      {"heads", std::to_string(spec.dims.heads)},
      {"max_positions", std::to_string(spec.dims.max_positions)},
      {"allow_unk", spec.allow_unk ? "true" : "false"},
      {"prompt.header_open", spec.prompt.header_open},
      {"prompt.header_close", spec.prompt.header_close},
      {"prompt.user_header", spec.prompt.user_header},
      {"prompt.instruction", spec.prompt.instruction},
      {"prompt.eot", spec.prompt.eot},
      {"prompt.assistant_header", spec.prompt.assistant_header},
  };
}

ModelSpec SpecFromKeyValues(const KeyValues& kv) {
  const auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw Error(ErrorCode::kMalformedRecord, "checkpoint missing '" + key + "'");
    return it->second;
  };
  const auto get_int = [&](const std::string& key) {
    try {
      return std::stoi(get(key));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kMalformedRecord, "checkpoint field '" + key + "' is not an integer");
    }
  };
  ModelSpec spec;
  spec.vocab = get("vocab");
  spec.dims.embed_dim = get_int("embed_dim");
  spec.dims.hidden_dim = get_int("hidden_dim");
  spec.dims.layers = get_int("layers");
  spec.dims.heads = get_int("heads");
  spec.dims.max_positions = get_int("max_positions");
  spec.allow_unk = get("allow_unk") == "true";
  spec.prompt.header_open = get("prompt.header_open");
  spec.prompt.header_close = get("prompt.header_close");
  spec.prompt.user_header = get("prompt.user_header");
  spec.prompt.instruction = get("prompt.instruction");
  spec.prompt.eot = get("prompt.eot");
  spec.prompt.assistant_header = get("prompt.assistant_header");
  spec.dims.Validate();
  return spec;
}

}  // namespace

std::string SerializeCheckpoint(const ModelState& model) {
  const ParameterLayout layout = model.Layout();
  if (layout.size() != model.parameters.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "parameter vector does not match model spec");
  }
  ByteWriter w;
  w.PutBytes(std::string_view(kMagic, 4));
  w.PutU32(kVersion);
  w.PutString(SerializeKeyValues(SpecToKeyValues(model.spec)));
  w.PutU64(static_cast<std::uint64_t>(model.step_count));
  w.PutU64(model.rng_state);
  w.PutU32(static_cast<std::uint32_t>(layout.blocks().size()));
  for (const ParameterBlock& b : layout.blocks()) {
    w.PutString(b.name);
    w.PutU32(static_cast<std::uint32_t>(b.rows));
    w.PutU32(static_cast<std::uint32_t>(b.cols));
  }
  for (Eigen::Index i = 0; i < model.parameters.size(); ++i) w.PutF32(model.parameters[i]);
  return w.Take();
}

ModelState DeserializeCheckpoint(const std::string& bytes) {
  ByteReader r(bytes, "checkpoint");
  if (r.GetBytes(4) != std::string_view(kMagic, 4)) {
    throw Error(ErrorCode::kMalformedRecord, "checkpoint: bad magic");
  }
  if (r.GetU32() != kVersion) throw Error(ErrorCode::kMalformedRecord, "checkpoint: bad version");
  std::istringstream spec_text(r.GetString());
  ModelState model;
  model.spec = SpecFromKeyValues(ParseKeyValues(spec_text, "checkpoint"));
  model.step_count = static_cast<std::int64_t>(r.GetU64());
  model.rng_state = r.GetU64();
  const ParameterLayout layout = model.Layout();
  const std::uint32_t count = r.GetU32();
  if (count != layout.blocks().size()) {
    throw Error(ErrorCode::kMalformedRecord, "checkpoint: block count mismatch");
  }
  for (const ParameterBlock& b : layout.blocks()) {
    const std::string name = r.GetString();
    const std::uint32_t rows = r.GetU32();
    const std::uint32_t cols = r.GetU32();
    if (name != b.name || rows != b.rows || cols != b.cols) {
      throw Error(ErrorCode::kMalformedRecord, "checkpoint: unexpected block '" + name + "'");
    }
  }
  model.parameters.resize(layout.size());
  for (Eigen::Index i = 0; i < layout.size(); ++i) model.parameters[i] = r.GetF32();
  if (!r.AtEnd()) throw Error(ErrorCode::kMalformedRecord, "checkpoint: trailing bytes");
  if (!model.parameters.allFinite()) {
    throw Error(ErrorCode::kNonFiniteLoss, "checkpoint holds non-finite parameters");
  }
  return model;
}

void SaveCheckpoint(const ModelState& model, const std::string& path) {
  WriteFileBytes(path, SerializeCheckpoint(model));
}

ModelState LoadCheckpoint(const std::string& path) {
  return DeserializeCheckpoint(ReadFileBytes(path));
}

}  // namespace dnadapt
