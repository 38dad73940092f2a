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

// Character vocabulary for the toy model. The prompt prefix and suffix are
// single special symbols, so the template costs two positions per item.
//
//   prompted item:   OPEN  slot chars...  CLOSE  target chars...  EOS
//   NO_PROMPT item:  RAW_BOS               target chars...  EOS

#ifndef DNADAPT_TOKENIZER_HPP_
#define DNADAPT_TOKENIZER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dnadapt/mixture.hpp"
#include "dnadapt/prompting.hpp"

namespace dnadapt {

/// Printable ASCII, space through tilde.
std::string DefaultCharset();

struct EncodedItem {
  std::vector<int> tokens;
  std::vector<std::uint8_t> audio;  // 1 where the audio embedding applies
  std::size_t target_begin = 0;     // index of the first target symbol
};

class CharTokenizer {
 public:
  enum Special : int { kEos = 0, kUnk, kRawBos, kPromptOpen, kPromptClose, kNumSpecial };

  /// `charset` is UTF-8; duplicates are ignored. With `allow_unk` false,
  /// unknown characters raise VocabOverflow instead of mapping to UNK.
  explicit CharTokenizer(std::string_view charset = DefaultCharset(), PromptTemplate prompt = {},
                         bool allow_unk = true);

  int vocab_size() const { return kNumSpecial + static_cast<int>(chars_.size()); }
  const std::u32string& chars() const { return chars_; }
  const PromptTemplate& prompt() const { return prompt_; }
  bool allow_unk() const { return allow_unk_; }

  int CharId(char32_t c) const;
  bool IsChar(int id) const { return id >= kNumSpecial && id < vocab_size(); }

  /// Encodes an input region (rendered prompt prefix or empty) and marks the
  /// speech slot as audio when `view` is AUDIO.
  EncodedItem EncodeInput(std::string_view input_region, View view) const;
  /// Input, then target characters, then EOS.
  EncodedItem Encode(std::string_view input_region, std::string_view target_region,
                     View view) const;
  /// Concatenates character symbols; specials are dropped.
  std::string Decode(const std::vector<int>& ids) const;

 private:
  void AppendText(std::u32string_view text, bool audio, EncodedItem& out) const;

  std::u32string chars_;
  std::unordered_map<char32_t, int> index_;
  PromptTemplate prompt_;
  bool allow_unk_;
};

}  // namespace dnadapt

#endif  // DNADAPT_TOKENIZER_HPP_
