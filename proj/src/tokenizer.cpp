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

#include "dnadapt/tokenizer.hpp"

#include "dnadapt/error.hpp"
#include "dnadapt/text.hpp"

namespace dnadapt {

std::string DefaultCharset() {
  std::string s;
  for (char c = ' '; c <= '~'; ++c) s.push_back(c);
  return s;
}

CharTokenizer::CharTokenizer(std::string_view charset, PromptTemplate prompt, bool allow_unk)
    : prompt_(std::move(prompt)), allow_unk_(allow_unk) {
  for (char32_t c : DecodeUtf8(charset)) {
    if (index_.emplace(c, kNumSpecial + static_cast<int>(chars_.size())).second) {
      chars_.push_back(c);
    }
  }
  if (chars_.empty()) throw Error(ErrorCode::kInvalidConfig, "empty model charset");
}

int CharTokenizer::CharId(char32_t c) const {
  const auto it = index_.find(c);
  if (it != index_.end()) return it->second;
  if (!allow_unk_) {
    throw Error(ErrorCode::kVocabOverflow,
                "character U+" + std::to_string(static_cast<std::uint32_t>(c)) +
                    " outside the model charset");
  }
  return kUnk;
}

void CharTokenizer::AppendText(std::u32string_view text, bool audio, EncodedItem& out) const {
  for (char32_t c : text) {
    out.tokens.push_back(CharId(c));
    out.audio.push_back(audio ? 1 : 0);
  }
}

EncodedItem CharTokenizer::EncodeInput(std::string_view input_region, View view) const {
  EncodedItem out;
  if (input_region.empty()) {
    out.tokens.push_back(kRawBos);
    out.audio.push_back(0);
    out.target_begin = out.tokens.size();
    return out;
  }
  const std::optional<std::string> slot = ParseInputRegion(input_region, prompt_);
  if (!slot) {
    throw Error(ErrorCode::kInvalidArgument, "input region does not follow the prompt template");
  }
  out.tokens.push_back(kPromptOpen);
  out.audio.push_back(0);
  AppendText(DecodeUtf8(*slot), view == View::kAudio, out);
  out.tokens.push_back(kPromptClose);
  out.audio.push_back(0);
  out.target_begin = out.tokens.size();
  return out;
}

EncodedItem CharTokenizer::Encode(std::string_view input_region, std::string_view target_region,
                                  View view) const {
  EncodedItem out = EncodeInput(input_region, view);
  AppendText(DecodeUtf8(target_region), false, out);
  out.tokens.push_back(kEos);
  out.audio.push_back(0);
  return out;
}

std::string CharTokenizer::Decode(const std::vector<int>& ids) const {
  std::u32string s;
  for (int id : ids) {
    if (IsChar(id)) s.push_back(chars_[static_cast<std::size_t>(id - kNumSpecial)]);
  }
  return EncodeUtf8(s);
}

}  // namespace dnadapt
