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

// Seeded synthetic source/target domains. Both domains share one grammar and
// one set of function words; their content lexicons (nouns, verbs,
// adjectives) are disjoint, so the shift between them is purely lexical.
// Paired splits carry surrogate audio from SurrogateAcousticChannel.

#ifndef DNADAPT_SYNTHETIC_HPP_
#define DNADAPT_SYNTHETIC_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dnadapt/corpus.hpp"
#include "dnadapt/embedding_table.hpp"
#include "dnadapt/noising.hpp"

namespace dnadapt {

struct SyntheticOptions {
  std::uint64_t seed = 1;
  int nouns = 24;
  int verbs = 12;
  int adjectives = 8;
  int source_train = 2000;
  int target_train = 3000;
  int validation = 100;
  int test = 200;
  SurrogateChannelParams channel;
};

struct Lexicon {
  std::vector<std::string> nouns, verbs, adjectives;

  std::vector<std::string> All() const;
};

struct SyntheticCorpus {
  Lexicon source_lexicon, target_lexicon;
  std::vector<std::string> function_words;

  DomainDataset source_train, source_validation, source_test;
  DomainDataset target_train, target_validation, target_test;
};

SyntheticCorpus GenerateSyntheticCorpus(const SyntheticOptions& options);

/// Noise-free projector rows for every lexicon and function word plus the
/// single characters that the surrogate channel inserts as fillers.
EmbeddingTable BuildSyntheticTable(const SyntheticCorpus& corpus,
                                   const SurrogateProjector& projector,
                                   const SurrogateChannelParams& channel = {});

}  // namespace dnadapt

#endif  // DNADAPT_SYNTHETIC_HPP_
