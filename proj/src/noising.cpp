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

#include "dnadapt/noising.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dnadapt/error.hpp"
#include "dnadapt/random.hpp"
#include "dnadapt/text.hpp"

namespace dnadapt {

void NoiseConfig::Validate() const {
  const auto bad = [](const std::string& what) {
    return Error(ErrorCode::kInvalidConfig, "noise config: " + what);
  };
  const auto is_prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!is_prob(word_select_prob)) throw bad("word_select_prob outside [0, 1]");
  if (!is_prob(char_sub_prob)) throw bad("char_sub_prob outside [0, 1]");
  if (!is_prob(dup_prob)) throw bad("dup_prob outside [0, 1]");
  if (min_edits < 1 || min_edits > max_edits) throw bad("need 1 <= min_edits <= max_edits");
  if (dup_min < 1 || dup_min > dup_max) throw bad("need 1 <= dup_min <= dup_max");
  if (DecodeUtf8(symbol_alphabet).empty()) throw bad("symbol_alphabet is empty");
}

namespace {

struct WordSpan {
  std::size_t begin;
  std::size_t length;
};

std::vector<WordSpan> FindWords(const std::u32string& s) {
  std::vector<WordSpan> words;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsSpace(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !IsSpace(s[i])) ++i;
    if (i > start) words.push_back({start, i - start});
  }
  return words;
}

// Picks `k` distinct elements of `pool` uniformly (partial Fisher-Yates).
template <typename T>
void SampleWithoutReplacement(std::vector<T>& pool, std::size_t k, Rng& rng) {
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.UniformIndex(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
}

}  // namespace

TextNoiseTrace TextNoiseWithTrace(std::string_view text, const NoiseConfig& cfg,
                                  std::string_view item_key) {
  if (Trim(text).empty()) throw Error(ErrorCode::kEmptyInput, "text_noise on blank input");
  cfg.Validate();
  Rng rng(DeriveSeed(cfg.seed, item_key));

  std::u32string chars = DecodeUtf8(text);
  const std::u32string alphabet = DecodeUtf8(cfg.symbol_alphabet);
  const std::vector<WordSpan> words = FindWords(chars);

  // Step 1: choose substitution positions.
  std::vector<std::size_t> edits;  // absolute code-point positions
  std::vector<char> edited(chars.size(), 0);
  std::vector<int> selected;
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    const WordSpan& w = words[wi];
    if (!rng.Bernoulli(cfg.word_select_prob)) continue;
    selected.push_back(static_cast<int>(wi));
    const auto wanted = static_cast<std::size_t>(
        std::max<long>(1, std::lround(cfg.char_sub_prob * static_cast<double>(w.length))));
    std::vector<std::size_t> positions(w.length);
    std::iota(positions.begin(), positions.end(), w.begin);
    SampleWithoutReplacement(positions, wanted, rng);
    for (std::size_t p : positions) {
      edits.push_back(p);
      edited[p] = 1;
    }
  }
  while (static_cast<int>(edits.size()) < cfg.min_edits) {
    std::vector<std::size_t> open_words;
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      const WordSpan& w = words[wi];
      for (std::size_t p = w.begin; p < w.begin + w.length; ++p) {
        if (!edited[p]) {
          open_words.push_back(wi);
          break;
        }
      }
    }
    if (open_words.empty()) break;
    const WordSpan& w = words[open_words[rng.UniformIndex(open_words.size())]];
    std::vector<std::size_t> free_positions;
    for (std::size_t p = w.begin; p < w.begin + w.length; ++p) {
      if (!edited[p]) free_positions.push_back(p);
    }
    const std::size_t p = free_positions[rng.UniformIndex(free_positions.size())];
    edits.push_back(p);
    edited[p] = 1;
  }
  if (static_cast<int>(edits.size()) > cfg.max_edits) {
    SampleWithoutReplacement(edits, static_cast<std::size_t>(cfg.max_edits), rng);
  }
  std::sort(edits.begin(), edits.end());

  TextNoiseTrace trace;
  trace.num_words = static_cast<int>(words.size());
  trace.selected_words = std::move(selected);
  for (std::size_t p : edits) {
    const char32_t original = chars[p];
    char32_t replacement = original;
    std::size_t excluded = alphabet.size();
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
      if (alphabet[a] == original) excluded = a;
    }
    const std::size_t choices = alphabet.size() - (excluded < alphabet.size() ? 1 : 0);
    if (choices > 0) {
      std::size_t pick = rng.UniformIndex(choices);
      if (excluded < alphabet.size() && pick >= excluded) ++pick;
      replacement = alphabet[pick];
    }
    chars[p] = replacement;
  }
  trace.substitutions = static_cast<int>(edits.size());
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    const WordSpan& w = words[wi];
    const bool hit = std::any_of(edits.begin(), edits.end(), [&w](std::size_t p) {
      return p >= w.begin && p < w.begin + w.length;
    });
    if (hit) trace.edited_words.push_back(static_cast<int>(wi));
  }
  trace.substituted = EncodeUtf8(chars);

  // Step 2: per-character duplication; whitespace is left as is so word
  // boundaries never change.
  std::u32string out;
  out.reserve(chars.size() * 2);
  for (char32_t c : chars) {
    out.push_back(c);
    if (IsSpace(c)) continue;
    ++trace.dup_candidates;
    if (rng.Bernoulli(cfg.dup_prob)) {
      ++trace.dup_events;
      const auto extra = rng.UniformInt(cfg.dup_min, cfg.dup_max);
      out.append(static_cast<std::size_t>(extra), c);
    }
  }
  trace.output = EncodeUtf8(out);
  return trace;
}

std::string TextNoise(std::string_view text, const NoiseConfig& cfg, std::string_view item_key) {
  return TextNoiseWithTrace(text, cfg, item_key).output;
}

std::string SurrogateAcousticChannel(std::string_view text, std::uint64_t seed,
                                     const SurrogateChannelParams& params) {
  if (Trim(text).empty()) throw Error(ErrorCode::kEmptyInput, "acoustic channel on blank input");
  Rng rng(DeriveSeed(seed, text));
  const std::vector<std::string> words = SplitWords(text);
  const std::u32string fillers = DecodeUtf8(params.filler_alphabet);

  std::vector<std::u32string> tokens;
  const auto maybe_fillers = [&] {
    if (fillers.empty() || !rng.Bernoulli(params.filler_prob)) return;
    const auto n = rng.UniformInt(params.filler_min, params.filler_max);
    for (std::int64_t k = 0; k < n; ++k) {
      tokens.emplace_back(1, fillers[rng.UniformIndex(fillers.size())]);
    }
  };

  maybe_fillers();
  for (const std::string& word : words) {
    std::u32string token;
    for (char32_t c : DecodeUtf8(word)) {
      if (rng.Bernoulli(params.case_flip_prob)) {
        if (c >= U'a' && c <= U'z') {
          c = c - U'a' + U'A';
        } else if (c >= U'A' && c <= U'Z') {
          c = c - U'A' + U'a';
        }
      }
      token.push_back(c);
      if (rng.Bernoulli(params.dup_prob)) {
        const auto extra = rng.UniformInt(params.dup_min, params.dup_max);
        token.append(static_cast<std::size_t>(extra), c);
      }
    }
    tokens.push_back(std::move(token));
    maybe_fillers();
  }

  std::u32string joined;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) joined.push_back(U' ');
    joined += tokens[i];
  }
  return EncodeUtf8(joined);
}

SurrogateProjector::SurrogateProjector(Options options) : options_(options) {
  if (options_.dim < 1 || options_.min_ngram < 1 || options_.max_ngram < options_.min_ngram ||
      options_.hashes_per_ngram < 1 || !(options_.noise_scale >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "invalid surrogate projector options");
  }
}

Eigen::VectorXf SurrogateProjector::EmbedToken(std::string_view token) const {
  Eigen::VectorXf v = Eigen::VectorXf::Zero(options_.dim);
  std::u32string marked = U"<";
  marked += DecodeUtf8(AsciiLower(token));
  marked += U">";
  for (int n = options_.min_ngram; n <= options_.max_ngram; ++n) {
    if (static_cast<std::size_t>(n) > marked.size()) break;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= marked.size(); ++i) {
      const std::string gram = EncodeUtf8(marked.substr(i, static_cast<std::size_t>(n)));
      std::uint64_t h = DeriveSeed(options_.hash_seed, gram);
      for (int k = 0; k < options_.hashes_per_ngram; ++k) {
        h = SplitMix64(h);
        const auto bucket = static_cast<Eigen::Index>(h % static_cast<std::uint64_t>(options_.dim));
        v[bucket] += (h >> 63) ? 1.0f : -1.0f;
      }
    }
  }
  const float norm = v.norm();
  if (norm > 0.0f) v /= norm;
  return v;
}

Eigen::MatrixXf SurrogateProjector::Project(std::string_view soft_tokens,
                                            std::uint64_t noise_seed,
                                            std::string_view item_key) const {
  const std::vector<std::string> tokens = SplitWords(soft_tokens);
  Eigen::MatrixXf frames(static_cast<Eigen::Index>(tokens.size()), options_.dim);
  Rng rng(DeriveSeed(noise_seed, item_key));
  const double per_dim = options_.noise_scale / std::sqrt(static_cast<double>(options_.dim));
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Eigen::VectorXf v = EmbedToken(tokens[i]);
    for (Eigen::Index d = 0; d < v.size(); ++d) {
      v[d] += static_cast<float>(per_dim * rng.Normal());
    }
    frames.row(static_cast<Eigen::Index>(i)) = v.transpose();
  }
  return frames;
}

EmbeddingTable SurrogateProjector::BuildTable(const std::vector<std::string>& tokens) const {
  EmbeddingTable table;
  table.tokens = tokens;
  table.vectors.resize(static_cast<Eigen::Index>(tokens.size()), options_.dim);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    table.vectors.row(static_cast<Eigen::Index>(i)) = EmbedToken(tokens[i]).transpose();
  }
  table.Validate();
  return table;
}

}  // namespace dnadapt
