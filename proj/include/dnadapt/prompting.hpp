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

// Fixed transcription prompt:
//
//   <|start_header_id|>user<|end_header_id|>Transcribe speech to text. Speech:{i}
//   <|eot_id|><|start_header_id|>assistant<|end_header_id|>{t}
//
// (one line, broken here for width). Training loss applies to the target
// region only, which starts immediately after the assistant header.

#ifndef DNADAPT_PROMPTING_HPP_
#define DNADAPT_PROMPTING_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace dnadapt {

/// Kind of input placed in the speech slot.
enum class ItemVariant {
  kNoise,     // Prompt(i, t) with i a noisy rendering of t
  kEcho,      // Prompt(t, t)
  kEmpty,     // Prompt("", t)
  kNoPrompt,  // raw t, no template
};

std::string VariantName(ItemVariant v);
ItemVariant ParseVariant(const std::string& name);

struct PromptTemplate {
  std::string header_open = "<|start_header_id|>";
  std::string header_close = "<|end_header_id|>";
  std::string user_header = "user";
  std::string instruction = "Transcribe speech to text. Speech:";
  std::string eot = "<|eot_id|>";
  std::string assistant_header = "assistant";

  /// Everything before the speech slot.
  std::string InputPrefix() const { return header_open + user_header + header_close + instruction; }
  /// Everything between the speech slot and the transcript.
  std::string InputSuffix() const { return eot + header_open + assistant_header + header_close; }

  /// Loads overrides from a flat key-value file; missing keys keep defaults.
  static PromptTemplate FromKeyValues(const std::map<std::string, std::string>& kv);
  static PromptTemplate Load(const std::string& path);

  bool operator==(const PromptTemplate&) const = default;
};

struct RenderedPrompt {
  std::string input_region;
  std::string target_region;

  std::string Full() const { return input_region + target_region; }
  bool operator==(const RenderedPrompt&) const = default;
};

/// Throws EmptyInput for blank t, MissingInput for kNoise with empty i, and
/// TemplateCollision when i or t contains a template literal.
RenderedPrompt Render(std::string_view input, std::string_view target, ItemVariant variant,
                      const PromptTemplate& tmpl = {});

/// Recovers the speech slot of a rendered input region, or nullopt if the
/// region does not follow the template.
std::optional<std::string> ParseInputRegion(std::string_view input_region,
                                            const PromptTemplate& tmpl = {});

struct ParsedPrompt {
  std::string input;
  std::string target;
};

/// Inverse of Render(...).Full() for every variant except kNoPrompt.
std::optional<ParsedPrompt> ParsePrompt(std::string_view full, const PromptTemplate& tmpl = {});

}  // namespace dnadapt

#endif  // DNADAPT_PROMPTING_HPP_
