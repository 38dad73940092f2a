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

// Source (paired) and target (text-only) datasets, manifest I/O, and the
// target-share heuristic used to set up the batch mixture.
//
// A manifest holds one JSON object per line:
//
//   {"id":"u1","text":"hello there","surrogate_audio":"HeLLo s there","domain":"banking"}
//
// surrogate_audio stands in for the projected audio of a paired utterance and
// is omitted for text-only records.

#ifndef DNADAPT_CORPUS_HPP_
#define DNADAPT_CORPUS_HPP_

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "dnadapt/mixture.hpp"

namespace dnadapt {

enum class DatasetKind { kSourcePaired, kTargetTextOnly };
enum class Split { kTrain, kValidation, kTest };

std::string KindName(DatasetKind kind);
DatasetKind ParseKind(const std::string& name);  // "source" | "target"
std::string SplitName(Split split);
Split ParseSplit(const std::string& name);  // "train" | "validation" | "test"

struct Utterance {
  std::string id;
  std::string text;
  std::optional<std::string> surrogate_audio;
  std::string domain;

  bool operator==(const Utterance&) const = default;
};

struct DomainDataset {
  std::string name;
  DatasetKind kind = DatasetKind::kSourcePaired;
  Split split = Split::kTrain;
  std::vector<Utterance> utterances;

  std::size_t size() const { return utterances.size(); }
  bool empty() const { return utterances.empty(); }
};

/// Checks the invariants of the declared kind and split; throws on the first
/// violation (DuplicateId, MissingAudio, UnexpectedAudio, MalformedRecord).
void ValidateDataset(const DomainDataset& dataset);

DomainDataset ParseManifest(std::istream& in, DatasetKind kind, Split split = Split::kTrain,
                            std::string name = {});
DomainDataset LoadManifest(const std::string& path, DatasetKind kind,
                           Split split = Split::kTrain);

std::string SerializeRecord(const Utterance& u);
std::string SerializeManifest(const DomainDataset& dataset);
void SaveManifest(const DomainDataset& dataset, const std::string& path);

/// Target share tau = n_tgt / (n_tgt + n_src). Throws InvalidCount if
/// n_src == 0.
double ComputeTau(std::size_t n_src, std::size_t n_tgt);

/// sigma_a = sigma_ta = sigma_t = (1 - tau) / 3. Throws InvalidTau unless
/// 0 <= tau < 1.
MixtureWeights DeriveMixture(double tau);

/// Round half away from zero to a fixed number of decimals (display only).
double RoundDecimals(double value, int decimals);

}  // namespace dnadapt

#endif  // DNADAPT_CORPUS_HPP_
