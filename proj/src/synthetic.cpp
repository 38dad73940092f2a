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

#include "dnadapt/synthetic.hpp"

#include <set>

#include "dnadapt/error.hpp"
#include "dnadapt/random.hpp"
#include "dnadapt/text.hpp"

namespace dnadapt {

namespace {

const std::vector<std::string>& FunctionWords() {
  static const std::vector<std::string> words = {"the", "a",  "to", "in", "and", "is",
                                                 "with", "for", "on", "it", "of",  "that"};
  return words;
}

// Sentence shapes: N noun, V verb, A adjective; anything else is literal.
const std::vector<std::vector<std::string>>& Templates() {
  static const std::vector<std::vector<std::string>> t = {
      {"the", "N", "V", "the", "N"},
      {"a", "A", "N", "V", "to", "the", "N"},
      {"the", "N", "V", "in", "the", "N"},
      {"N", "V", "the", "N", "and", "N"},
      {"the", "N", "is", "A"},
      {"it", "V", "a", "A", "N"},
      {"the", "A", "N", "V", "for", "N"},
      {"that", "N", "V", "on", "the", "N"},
      {"the", "N", "of", "the", "N", "is", "A"},
      {"a", "N", "V", "with", "the", "A", "N"},
  };
  return t;
}

std::string MakeWord(Rng& rng) {
  static const std::string kOnset = "bcdfghjklmnprstvwz";
  static const std::string kVowel = "aeiou";
  static const std::string kCoda = "klmnrst";
  const int syllables = static_cast<int>(rng.UniformInt(1, 2));
  std::string w;
  for (int s = 0; s < syllables; ++s) {
    w.push_back(kOnset[rng.UniformIndex(kOnset.size())]);
    w.push_back(kVowel[rng.UniformIndex(kVowel.size())]);
    if (syllables == 1 || rng.Bernoulli(0.4)) w.push_back(kCoda[rng.UniformIndex(kCoda.size())]);
  }
  return w;
}

std::vector<std::string> DrawWords(Rng& rng, int count, std::set<std::string>& taken) {
  std::vector<std::string> out;
  while (static_cast<int>(out.size()) < count) {
    std::string w = MakeWord(rng);
    if (w.size() < 3 || !taken.insert(w).second) continue;
    out.push_back(std::move(w));
  }
  return out;
}

Lexicon DrawLexicon(Rng& rng, const SyntheticOptions& o, std::set<std::string>& taken) {
  Lexicon lex;
  lex.nouns = DrawWords(rng, o.nouns, taken);
  lex.verbs = DrawWords(rng, o.verbs, taken);
  lex.adjectives = DrawWords(rng, o.adjectives, taken);
  return lex;
}

std::string Sentence(Rng& rng, const Lexicon& lex) {
  const auto& shape = Templates()[rng.UniformIndex(Templates().size())];
  std::vector<std::string> words;
  for (const std::string& slot : shape) {
    if (slot == "N") {
      words.push_back(lex.nouns[rng.UniformIndex(lex.nouns.size())]);
    } else if (slot == "V") {
      words.push_back(lex.verbs[rng.UniformIndex(lex.verbs.size())]);
    } else if (slot == "A") {
      words.push_back(lex.adjectives[rng.UniformIndex(lex.adjectives.size())]);
    } else {
      words.push_back(slot);
    }
  }
  return JoinWords(words);
}

DomainDataset MakeSplit(const std::string& domain, DatasetKind kind, Split split, int count,
                        const Lexicon& lex, const SyntheticOptions& o, bool with_audio) {
  DomainDataset ds;
  ds.name = domain + "-" + SplitName(split);
  ds.kind = kind;
  ds.split = split;
  Rng rng(DeriveSeed(o.seed, ds.name));
  for (int i = 0; i < count; ++i) {
    Utterance u;
    u.id = domain.substr(0, 3) + "-" + SplitName(split).substr(0, 2) + "-" + std::to_string(i);
    u.text = Sentence(rng, lex);
    u.domain = domain;
    if (with_audio) {
      u.surrogate_audio = SurrogateAcousticChannel(u.text, DeriveSeed(o.seed, u.id), o.channel);
    }
    ds.utterances.push_back(std::move(u));
  }
  ValidateDataset(ds);
  return ds;
}

}  // namespace

std::vector<std::string> Lexicon::All() const {
  std::vector<std::string> all = nouns;
  all.insert(all.end(), verbs.begin(), verbs.end());
  all.insert(all.end(), adjectives.begin(), adjectives.end());
  return all;
}

SyntheticCorpus GenerateSyntheticCorpus(const SyntheticOptions& o) {
  if (o.nouns < 1 || o.verbs < 1 || o.adjectives < 1 || o.source_train < 1 || o.target_train < 0 ||
      o.validation < 0 || o.test < 0) {
    throw Error(ErrorCode::kInvalidConfig, "bad synthetic corpus sizes");
  }
  SyntheticCorpus c;
  c.function_words = FunctionWords();
  std::set<std::string> taken(c.function_words.begin(), c.function_words.end());
  Rng rng(DeriveSeed(o.seed, "lexicon"));
  c.source_lexicon = DrawLexicon(rng, o, taken);
  c.target_lexicon = DrawLexicon(rng, o, taken);

  const auto src = DatasetKind::kSourcePaired;
  const auto tgt = DatasetKind::kTargetTextOnly;
  c.source_train = MakeSplit("source", src, Split::kTrain, o.source_train, c.source_lexicon, o, true);
  c.source_validation =
      MakeSplit("source", src, Split::kValidation, o.validation, c.source_lexicon, o, true);
  c.source_test = MakeSplit("source", src, Split::kTest, o.test, c.source_lexicon, o, true);
  c.target_train =
      MakeSplit("target", tgt, Split::kTrain, o.target_train, c.target_lexicon, o, false);
  c.target_validation =
      MakeSplit("target", tgt, Split::kValidation, o.validation, c.target_lexicon, o, true);
  c.target_test = MakeSplit("target", tgt, Split::kTest, o.test, c.target_lexicon, o, true);
  return c;
}

EmbeddingTable BuildSyntheticTable(const SyntheticCorpus& corpus,
                                   const SurrogateProjector& projector,
                                   const SurrogateChannelParams& channel) {
  std::vector<std::string> tokens = corpus.function_words;
  for (const Lexicon* lex : {&corpus.source_lexicon, &corpus.target_lexicon}) {
    for (std::string& w : lex->All()) tokens.push_back(std::move(w));
  }
  std::set<std::string> seen(tokens.begin(), tokens.end());
  for (char c : channel.filler_alphabet) {
    if (seen.insert(std::string(1, c)).second) tokens.emplace_back(1, c);
  }
  for (char c = 'a'; c <= 'z'; ++c) {
    if (seen.insert(std::string(1, c)).second) tokens.emplace_back(1, c);
  }
  return projector.BuildTable(tokens);
}

}  // namespace dnadapt
