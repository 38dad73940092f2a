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

// Serializable configuration for one pipeline run.
//
// A RunConfig round-trips through the flat key-value format. Its canonical
// serialization (every key, sorted) is hashed and recorded next to every
// output, so the hash names the exact configuration that produced a file.

#ifndef DNADAPT_RUN_CONFIG_HPP_
#define DNADAPT_RUN_CONFIG_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dnadapt/batching.hpp"
#include "dnadapt/experiment.hpp"
#include "dnadapt/key_value.hpp"
#include "dnadapt/mixture.hpp"
#include "dnadapt/noising.hpp"
#include "dnadapt/tinylm.hpp"

namespace dnadapt {

struct RunPaths {
  std::string source_train;
  std::string source_validation;
  std::string source_test;
  std::string target_train;
  std::string target_validation;
  std::string target_test;
  std::string table;
  std::string output_dir = ".";

  bool operator==(const RunPaths&) const = default;
};

struct RunConfig {
  RunPaths paths;
  NoiseConfig noise;

  /// nullopt means tau is computed from the training-set sizes.
  std::optional<double> tau;
  /// Explicit source weights; nullopt splits 1 - tau equally among the
  /// active source views.
  std::optional<std::array<double, 3>> sigma;
  std::array<bool, 3> active{true, true, true};  // sigma_a, sigma_ta, sigma_t
  ItemVariant item_type = ItemVariant::kNoise;

  TrainConfig train;
  TrainConfig adapt;
  PromptTemplate prompt;
  SurrogateProjector::Options projector;
  std::uint64_t projector_noise_seed = 0x5eedULL;

  int decode_max_len = 96;
  int monitor_every = 0;
  std::uint64_t seed = 1;

  RunConfig();

  KeyValues ToKeyValues() const;
  /// Keys absent from `kv` keep their defaults; unknown keys are an error.
  static RunConfig FromKeyValues(const KeyValues& kv);
  static RunConfig Load(const std::string& path);

  /// Applies one "key=value" override.
  void Set(const std::string& key, const std::string& value);

  std::string Serialize() const { return SerializeKeyValues(ToKeyValues()); }
  /// 16 hex digits of FNV-1a over Serialize().
  std::string Hash() const;

  /// Weights for given training-set sizes. Throws kInvalidTau or
  /// kInvalidConfig when the result is not a distribution.
  MixtureWeights Weights(std::size_t n_source, std::size_t n_target) const;

  ComposerOptions Composer() const;
  /// The adaptation phase inherits vocabulary and dims from `train`.
  ExperimentConfig Experiment() const;

  bool operator==(const RunConfig&) const = default;
};

/// Every key understood by RunConfig, sorted.
std::vector<std::string> RunConfigKeys();

/// Version string recorded in manifests.
std::string Version();

/// JSON object: stage, config_hash, seed, version and output file names.
/// Contains no timestamps, so equal runs give equal manifests.
std::string RunManifest(const RunConfig& cfg, const std::string& stage,
                        const std::vector<std::string>& outputs);
void WriteRunManifest(const RunConfig& cfg, const std::string& stage,
                      const std::vector<std::string>& outputs, const std::string& path);

}  // namespace dnadapt

#endif  // DNADAPT_RUN_CONFIG_HPP_
