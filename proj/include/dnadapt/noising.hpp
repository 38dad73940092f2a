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

// Noise channels.
//
//  * TextNoise: audio-free corruption by character substitution followed by
//    character duplication.
//  * SurrogateAcousticChannel: the desk-scale stand-in for projected audio;
//    produces pseudo soft-token strings ("mmy Z YesssS S that ...").
//  * SurrogateProjector + QuantizeToTokens: embed a soft-token string as
//    frames and snap every frame to its nearest vocabulary token, which is
//    how projector-induced text noise is obtained.

#ifndef DNADAPT_NOISING_HPP_
#define DNADAPT_NOISING_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dnadapt/embedding_table.hpp"

namespace dnadapt {

struct NoiseConfig {
  double word_select_prob = 0.15;
  double char_sub_prob = 0.30;
  int min_edits = 1;
  int max_edits = 10;
  double dup_prob = 0.10;
  int dup_min = 1;
  int dup_max = 3;
  std::string symbol_alphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
  std::uint64_t seed = 0;

  /// Throws Error(kInvalidConfig) when a field is out of range.
  void Validate() const;

  bool operator==(const NoiseConfig&) const = default;
};

/// Everything TextNoise decided, for inspection and statistics.
struct TextNoiseTrace {
  std::string substituted;       // output of the substitution step
  std::string output;            // final output
  int num_words = 0;
  int substitutions = 0;         // substituted characters in the utterance
  std::vector<int> selected_words;  // words picked by the per-word draw, before clamping
  std::vector<int> edited_words; // indices of words holding >= 1 substitution
  int dup_candidates = 0;        // non-whitespace characters seen by step 2
  int dup_events = 0;            // characters that were repeated
};

/// Two-step noise over whitespace-delimited words. Deterministic in
/// (cfg.seed, item_key). Throws Error(kEmptyInput) for blank input.
std::string TextNoise(std::string_view text, const NoiseConfig& cfg, std::string_view item_key);
TextNoiseTrace TextNoiseWithTrace(std::string_view text, const NoiseConfig& cfg,
                                  std::string_view item_key);

/// Fixed constants of the desk-scale acoustic stand-in. Deliberately
/// different from NoiseConfig defaults.
struct SurrogateChannelParams {
  double case_flip_prob = 0.30;
  double filler_prob = 0.40;  // per word boundary, including both ends
  int filler_min = 1;
  int filler_max = 2;
  double dup_prob = 0.15;
  int dup_min = 1;
  int dup_max = 3;
  std::string filler_alphabet = "SZBGMmsz";

  static SurrogateChannelParams Silent() {
    SurrogateChannelParams p;
    p.case_flip_prob = p.filler_prob = p.dup_prob = 0.0;
    return p;
  }
};

/// Deterministic in (text, seed). Throws Error(kEmptyInput) for blank input.
std::string SurrogateAcousticChannel(std::string_view text, std::uint64_t seed,
                                     const SurrogateChannelParams& params = {});

/// Maps a soft-token string to one frame per whitespace token using hashed
/// character n-grams (lowercased, with boundary markers), then perturbs each
/// frame with isotropic Gaussian noise. Tokens with similar spelling land
/// near each other, so quantization recovers mostly the intended words.
class SurrogateProjector {
 public:
  struct Options {
    int dim = 64;
    int min_ngram = 1;
    int max_ngram = 3;
    int hashes_per_ngram = 2;
    double noise_scale = 0.35;  // expected L2 norm of the perturbation
    std::uint64_t hash_seed = 0x70726f6aULL;

    bool operator==(const Options&) const = default;
  };

  SurrogateProjector() : SurrogateProjector(Options{}) {}
  explicit SurrogateProjector(Options options);

  const Options& options() const { return options_; }
  int dim() const { return options_.dim; }

  /// Unit-norm, noise-free embedding of one token.
  Eigen::VectorXf EmbedToken(std::string_view token) const;

  /// One row per whitespace token in `soft_tokens`; noise seeded by
  /// (noise_seed, item_key).
  Eigen::MatrixXf Project(std::string_view soft_tokens, std::uint64_t noise_seed,
                          std::string_view item_key) const;

  /// Table whose rows are the noise-free embeddings of `tokens`.
  EmbeddingTable BuildTable(const std::vector<std::string>& tokens) const;

 private:
  Options options_;
};

}  // namespace dnadapt

#endif  // DNADAPT_NOISING_HPP_
