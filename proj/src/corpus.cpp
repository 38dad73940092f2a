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

#include "dnadapt/corpus.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "dnadapt/error.hpp"
#include "dnadapt/text.hpp"
#include "json.hpp"

namespace dnadapt {

using OrderedJson = nlohmann::ordered_json;

std::string KindName(DatasetKind kind) {
  return kind == DatasetKind::kSourcePaired ? "source" : "target";
}

DatasetKind ParseKind(const std::string& name) {
  if (name == "source") return DatasetKind::kSourcePaired;
  if (name == "target") return DatasetKind::kTargetTextOnly;
  throw Error(ErrorCode::kInvalidArgument, "dataset kind must be 'source' or 'target', got '" +
                                               name + "'");
}

std::string SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValidation: return "validation";
    case Split::kTest: return "test";
  }
  return "train";
}

Split ParseSplit(const std::string& name) {
  if (name == "train") return Split::kTrain;
  if (name == "validation" || name == "valid" || name == "dev") return Split::kValidation;
  if (name == "test") return Split::kTest;
  throw Error(ErrorCode::kInvalidArgument, "unknown split '" + name + "'");
}

void ValidateDataset(const DomainDataset& dataset) {
  std::unordered_set<std::string> seen;
  seen.reserve(dataset.utterances.size());
  for (const Utterance& u : dataset.utterances) {
    if (u.id.empty()) throw Error(ErrorCode::kMalformedRecord, "empty id");
    if (!seen.insert(u.id).second) throw Error(ErrorCode::kDuplicateId, u.id);
    if (Trim(u.text).empty()) {
      throw Error(ErrorCode::kMalformedRecord, "empty text for id " + u.id);
    }
    if (dataset.kind == DatasetKind::kSourcePaired && !u.surrogate_audio) {
      throw Error(ErrorCode::kMissingAudio, u.id);
    }
    if (dataset.kind == DatasetKind::kTargetTextOnly && dataset.split == Split::kTrain &&
        u.surrogate_audio) {
      throw Error(ErrorCode::kUnexpectedAudio,
                  u.id + " (text-only training split carries surrogate_audio)");
    }
  }
}

namespace {

Utterance ParseRecord(std::string_view line, std::size_t line_no) {
  const auto malformed = [line_no](const std::string& why) {
    return Error(ErrorCode::kMalformedRecord, "line " + std::to_string(line_no) + ": " + why);
  };
  OrderedJson record;
  try {
    record = OrderedJson::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw malformed(e.what());
  }
  if (!record.is_object()) throw malformed("record is not an object");
  Utterance u;
  bool have_id = false, have_text = false, have_domain = false;
  for (const auto& [key, value] : record.items()) {
    if (!value.is_string()) throw malformed("field '" + key + "' is not a string");
    if (key == "id") {
      u.id = value.get<std::string>();
      have_id = true;
    } else if (key == "text") {
      u.text = value.get<std::string>();
      have_text = true;
    } else if (key == "surrogate_audio") {
      u.surrogate_audio = value.get<std::string>();
    } else if (key == "domain") {
      u.domain = value.get<std::string>();
      have_domain = true;
    } else {
      throw malformed("unknown field '" + key + "'");
    }
  }
  if (!have_id || u.id.empty()) throw malformed("missing id");
  if (!have_text || Trim(u.text).empty()) throw malformed("missing or empty text");
  if (!have_domain) throw malformed("missing domain");
  return u;
}

}  // namespace

DomainDataset ParseManifest(std::istream& in, DatasetKind kind, Split split, std::string name) {
  DomainDataset dataset;
  dataset.name = std::move(name);
  dataset.kind = kind;
  dataset.split = split;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    dataset.utterances.push_back(ParseRecord(line, line_no));
  }
  ValidateDataset(dataset);
  return dataset;
}

DomainDataset LoadManifest(const std::string& path, DatasetKind kind, Split split) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open manifest " + path);
  return ParseManifest(in, kind, split, path);
}

std::string SerializeRecord(const Utterance& u) {
  OrderedJson record;
  record["id"] = u.id;
  record["text"] = u.text;
  if (u.surrogate_audio) record["surrogate_audio"] = *u.surrogate_audio;
  record["domain"] = u.domain;
  return record.dump();
}

std::string SerializeManifest(const DomainDataset& dataset) {
  std::string out;
  for (const Utterance& u : dataset.utterances) {
    out += SerializeRecord(u);
    out.push_back('\n');
  }
  return out;
}

void SaveManifest(const DomainDataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write manifest " + path);
  out << SerializeManifest(dataset);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

double ComputeTau(std::size_t n_src, std::size_t n_tgt) {
  if (n_src == 0) {
    throw Error(ErrorCode::kInvalidCount, "source dataset has no training examples");
  }
  return static_cast<double>(n_tgt) / (static_cast<double>(n_tgt) + static_cast<double>(n_src));
}

MixtureWeights DeriveMixture(double tau) {
  if (!(tau >= 0.0) || !(tau < 1.0)) {
    std::ostringstream msg;
    msg << "tau must lie in [0, 1), got " << tau;
    throw Error(ErrorCode::kInvalidTau, msg.str());
  }
  const double share = (1.0 - tau) / 3.0;
  return MixtureWeights{share, share, share, tau};
}

double RoundDecimals(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

}  // namespace dnadapt
