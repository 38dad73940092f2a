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

#include "dnadapt/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "dnadapt/corpus.hpp"
#include "dnadapt/error.hpp"
#include "dnadapt/random.hpp"
#include "json.hpp"

#ifndef DNADAPT_VERSION
#define DNADAPT_VERSION "unknown"
#endif

namespace dnadapt {
namespace {

[[noreturn]] void BadValue(const std::string& key, const std::string& value) {
  throw Error(ErrorCode::kInvalidConfig, "bad value '" + value + "' for key '" + key + "'");
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) BadValue(key, value);
  return out;
}

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  BadValue(key, value);
}

struct Field {
  std::string key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

template <typename T>
Field Number(std::string key, T RunConfig::*member) {
  return {key, [member](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) return FormatDouble(c.*member);
            else return std::to_string(c.*member);
          },
          [key, member](RunConfig& c, const std::string& v) { c.*member = ParseNumber<T>(key, v); }};
}

template <typename Owner, typename T>
Field Nested(std::string key, Owner RunConfig::*owner, T Owner::*member) {
  return {key,
          [owner, member](const RunConfig& c) {
            const T& v = c.*owner.*member;
            if constexpr (std::is_same_v<T, std::string>) return v;
            else if constexpr (std::is_same_v<T, bool>) return std::string(v ? "true" : "false");
            else if constexpr (std::is_floating_point_v<T>) return FormatDouble(v);
            else return std::to_string(v);
          },
          [key, owner, member](RunConfig& c, const std::string& v) {
            T& out = c.*owner.*member;
            if constexpr (std::is_same_v<T, std::string>) out = v;
            else if constexpr (std::is_same_v<T, bool>) out = ParseBool(key, v);
            else out = ParseNumber<T>(key, v);
          }};
}

void AddTrainFields(std::vector<Field>& f, const std::string& prefix, TrainConfig RunConfig::*t,
                    bool with_model) {
  f.push_back(Nested(prefix + ".learning_rate", t, &TrainConfig::learning_rate));
  f.push_back(Nested(prefix + ".warmup_steps", t, &TrainConfig::warmup_steps));
  f.push_back(Nested(prefix + ".batch_size", t, &TrainConfig::batch_size));
  f.push_back(Nested(prefix + ".max_steps", t, &TrainConfig::max_steps));
  f.push_back(Nested(prefix + ".final_lr_fraction", t, &TrainConfig::final_lr_fraction));
  f.push_back(Nested(prefix + ".beta1", t, &TrainConfig::beta1));
  f.push_back(Nested(prefix + ".beta2", t, &TrainConfig::beta2));
  f.push_back(Nested(prefix + ".epsilon", t, &TrainConfig::epsilon));
  f.push_back(Nested(prefix + ".grad_clip", t, &TrainConfig::grad_clip));
  f.push_back({prefix + ".optimizer", [t](const RunConfig& c) { return OptimizerName((c.*t).optimizer); },
               [t](RunConfig& c, const std::string& v) { (c.*t).optimizer = ParseOptimizer(v); }});
  if (!with_model) return;
  f.push_back(Nested(prefix + ".vocab", t, &TrainConfig::vocab));
  f.push_back(Nested(prefix + ".allow_unk", t, &TrainConfig::allow_unk));
  const auto dim = [&](const std::string& name, int ModelDims::*m) {
    f.push_back({prefix + "." + name, [t, m](const RunConfig& c) { return std::to_string((c.*t).dims.*m); },
                 [t, m, key = prefix + "." + name](RunConfig& c, const std::string& v) {
                   (c.*t).dims.*m = ParseNumber<int>(key, v);
                 }});
  };
  dim("embed_dim", &ModelDims::embed_dim);
  dim("hidden_dim", &ModelDims::hidden_dim);
  dim("layers", &ModelDims::layers);
  dim("heads", &ModelDims::heads);
  dim("max_positions", &ModelDims::max_positions);
}

std::vector<Field> BuildFields() {
  std::vector<Field> f;
  f.push_back(Nested("paths.source_train", &RunConfig::paths, &RunPaths::source_train));
  f.push_back(Nested("paths.source_validation", &RunConfig::paths, &RunPaths::source_validation));
  f.push_back(Nested("paths.source_test", &RunConfig::paths, &RunPaths::source_test));
  f.push_back(Nested("paths.target_train", &RunConfig::paths, &RunPaths::target_train));
  f.push_back(Nested("paths.target_validation", &RunConfig::paths, &RunPaths::target_validation));
  f.push_back(Nested("paths.target_test", &RunConfig::paths, &RunPaths::target_test));
  f.push_back(Nested("paths.table", &RunConfig::paths, &RunPaths::table));
  f.push_back(Nested("paths.output_dir", &RunConfig::paths, &RunPaths::output_dir));

  f.push_back(Nested("noise.word_select_prob", &RunConfig::noise, &NoiseConfig::word_select_prob));
  f.push_back(Nested("noise.char_sub_prob", &RunConfig::noise, &NoiseConfig::char_sub_prob));
  f.push_back(Nested("noise.min_edits", &RunConfig::noise, &NoiseConfig::min_edits));
  f.push_back(Nested("noise.max_edits", &RunConfig::noise, &NoiseConfig::max_edits));
  f.push_back(Nested("noise.dup_prob", &RunConfig::noise, &NoiseConfig::dup_prob));
  f.push_back(Nested("noise.dup_min", &RunConfig::noise, &NoiseConfig::dup_min));
  f.push_back(Nested("noise.dup_max", &RunConfig::noise, &NoiseConfig::dup_max));
  f.push_back(Nested("noise.symbol_alphabet", &RunConfig::noise, &NoiseConfig::symbol_alphabet));
  f.push_back(Nested("noise.seed", &RunConfig::noise, &NoiseConfig::seed));

  f.push_back({"mix.tau", [](const RunConfig& c) { return c.tau ? FormatDouble(*c.tau) : "auto"; },
               [](RunConfig& c, const std::string& v) {
                 if (v == "auto") c.tau.reset();
                 else c.tau = ParseNumber<double>("mix.tau", v);
               }});
  const char* sigma_names[3] = {"mix.sigma_a", "mix.sigma_ta", "mix.sigma_t"};
  for (int k = 0; k < 3; ++k) {
    const std::string key = sigma_names[k];
    f.push_back({key,
                 [k](const RunConfig& c) { return c.sigma ? FormatDouble((*c.sigma)[k]) : "auto"; },
                 [k, key](RunConfig& c, const std::string& v) {
                   if (v == "auto") {
                     c.sigma.reset();
                     return;
                   }
                   if (!c.sigma) c.sigma = std::array<double, 3>{0.0, 0.0, 0.0};
                   (*c.sigma)[k] = ParseNumber<double>(key, v);
                 }});
  }
  const char* active_names[3] = {"ablate.sigma_a", "ablate.sigma_ta", "ablate.sigma_t"};
  for (int k = 0; k < 3; ++k) {
    const std::string key = active_names[k];
    f.push_back({key, [k](const RunConfig& c) { return std::string(c.active[k] ? "true" : "false"); },
                 [k, key](RunConfig& c, const std::string& v) { c.active[k] = ParseBool(key, v); }});
  }
  f.push_back({"ablate.item_type", [](const RunConfig& c) { return VariantName(c.item_type); },
               [](RunConfig& c, const std::string& v) { c.item_type = ParseVariant(v); }});

  AddTrainFields(f, "train", &RunConfig::train, true);
  AddTrainFields(f, "adapt", &RunConfig::adapt, false);

  f.push_back(Nested("prompt.header_open", &RunConfig::prompt, &PromptTemplate::header_open));
  f.push_back(Nested("prompt.header_close", &RunConfig::prompt, &PromptTemplate::header_close));
  f.push_back(Nested("prompt.user_header", &RunConfig::prompt, &PromptTemplate::user_header));
  f.push_back(Nested("prompt.instruction", &RunConfig::prompt, &PromptTemplate::instruction));
  f.push_back(Nested("prompt.eot", &RunConfig::prompt, &PromptTemplate::eot));
  f.push_back(Nested("prompt.assistant_header", &RunConfig::prompt, &PromptTemplate::assistant_header));

  using P = SurrogateProjector::Options;
  f.push_back(Nested("projector.dim", &RunConfig::projector, &P::dim));
  f.push_back(Nested("projector.min_ngram", &RunConfig::projector, &P::min_ngram));
  f.push_back(Nested("projector.max_ngram", &RunConfig::projector, &P::max_ngram));
  f.push_back(Nested("projector.hashes_per_ngram", &RunConfig::projector, &P::hashes_per_ngram));
  f.push_back(Nested("projector.noise_scale", &RunConfig::projector, &P::noise_scale));
  f.push_back(Nested("projector.hash_seed", &RunConfig::projector, &P::hash_seed));
  f.push_back(Number("projector.noise_seed", &RunConfig::projector_noise_seed));

  f.push_back(Number("eval.decode_max_len", &RunConfig::decode_max_len));
  f.push_back(Number("eval.monitor_every", &RunConfig::monitor_every));
  f.push_back(Number("seed", &RunConfig::seed));
  std::sort(f.begin(), f.end(), [](const Field& a, const Field& b) { return a.key < b.key; });
  return f;
}

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = BuildFields();
  return fields;
}

}  // namespace

RunConfig::RunConfig() {
  train.dims = {48, 128, 2, 2, 192};
  train.learning_rate = 3e-3;
  train.warmup_steps = 50;
  train.max_steps = 2000;
  train.final_lr_fraction = 0.05;
  adapt = train;
  adapt.learning_rate = 1e-3;
  adapt.warmup_steps = 20;
  adapt.max_steps = 600;
}

KeyValues RunConfig::ToKeyValues() const {
  KeyValues kv;
  for (const Field& f : Fields()) kv[f.key] = f.get(*this);
  return kv;
}

void RunConfig::Set(const std::string& key, const std::string& value) {
  for (const Field& f : Fields()) {
    if (f.key == key) {
      f.set(*this, value);
      return;
    }
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown config key '" + key + "'");
}

RunConfig RunConfig::FromKeyValues(const KeyValues& kv) {
  RunConfig c;
  for (const auto& [key, value] : kv) c.Set(key, value);
  return c;
}

RunConfig RunConfig::Load(const std::string& path) { return FromKeyValues(LoadKeyValues(path)); }

std::string RunConfig::Hash() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(Serialize())));
  return buf;
}

MixtureWeights RunConfig::Weights(std::size_t n_source, std::size_t n_target) const {
  const double t = tau ? *tau : ComputeTau(n_source, n_target);
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::kInvalidTau, "tau must lie in [0, 1]");
  MixtureWeights w;
  if (sigma) {
    w = {(*sigma)[0], (*sigma)[1], (*sigma)[2], t};
    for (int k = 0; k < 3; ++k) {
      if (!active[k]) (k == 0 ? w.sigma_a : k == 1 ? w.sigma_ta : w.sigma_t) = 0.0;
    }
  } else {
    w = AblateWeights(t, active);
  }
  if (!w.IsValid(1e-9)) {
    throw Error(ErrorCode::kInvalidConfig, "mixture weights must be >= 0 and sum to 1");
  }
  return w;
}

ComposerOptions RunConfig::Composer() const {
  ComposerOptions o;
  o.text_variant = item_type;
  o.prompt = prompt;
  o.projector = SurrogateProjector(projector);
  o.projector_noise_seed = projector_noise_seed;
  return o;
}

ExperimentConfig RunConfig::Experiment() const {
  ExperimentConfig e;
  e.base = train;
  e.base.seed = seed;
  e.adapt = adapt;
  e.adapt.vocab = train.vocab;
  e.adapt.dims = train.dims;
  e.adapt.allow_unk = train.allow_unk;
  e.adapt.seed = seed;
  e.noise = noise;
  e.composer = Composer();
  e.seed = seed;
  e.decode_max_len = decode_max_len;
  return e;
}

std::vector<std::string> RunConfigKeys() {
  std::vector<std::string> keys;
  for (const Field& f : Fields()) keys.push_back(f.key);
  return keys;
}

std::string Version() { return DNADAPT_VERSION; }

std::string RunManifest(const RunConfig& cfg, const std::string& stage,
                        const std::vector<std::string>& outputs) {
  nlohmann::ordered_json m;
  m["stage"] = stage;
  m["config_hash"] = cfg.Hash();
  m["seed"] = cfg.seed;
  m["version"] = Version();
  m["outputs"] = outputs;
  return m.dump(2) + "\n";
}

void WriteRunManifest(const RunConfig& cfg, const std::string& stage,
                      const std::vector<std::string>& outputs, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write run manifest " + path);
  out << RunManifest(cfg, stage, outputs);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

}  // namespace dnadapt
