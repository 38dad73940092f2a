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

#include "dnadapt/prompting.hpp"

#include "dnadapt/error.hpp"
#include "dnadapt/key_value.hpp"
#include "dnadapt/text.hpp"

namespace dnadapt {

std::string VariantName(ItemVariant v) {
  switch (v) {
    case ItemVariant::kNoise: return "NOISE";
    case ItemVariant::kEcho: return "ECHO";
    case ItemVariant::kEmpty: return "EMPTY";
    case ItemVariant::kNoPrompt: return "NO_PROMPT";
  }
  return "NOISE";
}

ItemVariant ParseVariant(const std::string& name) {
  for (ItemVariant v : {ItemVariant::kNoise, ItemVariant::kEcho, ItemVariant::kEmpty,
                        ItemVariant::kNoPrompt}) {
    if (VariantName(v) == name) return v;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown item variant '" + name + "'");
}

PromptTemplate PromptTemplate::FromKeyValues(const std::map<std::string, std::string>& kv) {
  PromptTemplate t;
  for (const auto& [key, value] : kv) {
    if (key == "header_open") {
      t.header_open = value;
    } else if (key == "header_close") {
      t.header_close = value;
    } else if (key == "user_header") {
      t.user_header = value;
    } else if (key == "instruction") {
      t.instruction = value;
    } else if (key == "eot") {
      t.eot = value;
    } else if (key == "assistant_header") {
      t.assistant_header = value;
    } else {
      throw Error(ErrorCode::kInvalidConfig, "unknown prompt template key '" + key + "'");
    }
  }
  if (t.eot.empty() || t.header_open.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "prompt template needs non-empty eot and header_open");
  }
  return t;
}

PromptTemplate PromptTemplate::Load(const std::string& path) {
  return FromKeyValues(LoadKeyValues(path));
}

namespace {

void CheckNoCollision(std::string_view s, const PromptTemplate& tmpl, const char* slot) {
  for (const std::string* lit : {&tmpl.header_open, &tmpl.header_close, &tmpl.eot}) {
    if (!lit->empty() && s.find(*lit) != std::string_view::npos) {
      throw Error(ErrorCode::kTemplateCollision,
                  std::string(slot) + " contains template literal '" + *lit + "'");
    }
  }
}

}  // namespace

RenderedPrompt Render(std::string_view input, std::string_view target, ItemVariant variant,
                      const PromptTemplate& tmpl) {
  if (Trim(target).empty()) throw Error(ErrorCode::kEmptyInput, "empty target transcript");
  CheckNoCollision(target, tmpl, "target");
  RenderedPrompt out;
  out.target_region = std::string(target);
  std::string_view slot;
  switch (variant) {
    case ItemVariant::kNoPrompt:
      return out;
    case ItemVariant::kNoise:
      if (input.empty()) throw Error(ErrorCode::kMissingInput, "NOISE item without input");
      CheckNoCollision(input, tmpl, "input");
      slot = input;
      break;
    case ItemVariant::kEcho:
      slot = target;
      break;
    case ItemVariant::kEmpty:
      break;
  }
  out.input_region = tmpl.InputPrefix();
  out.input_region += slot;
  out.input_region += tmpl.InputSuffix();
  return out;
}

std::optional<std::string> ParseInputRegion(std::string_view input_region,
                                            const PromptTemplate& tmpl) {
  const std::string prefix = tmpl.InputPrefix();
  const std::string suffix = tmpl.InputSuffix();
  if (input_region.size() < prefix.size() + suffix.size()) return std::nullopt;
  if (!input_region.starts_with(prefix) || !input_region.ends_with(suffix)) return std::nullopt;
  std::string_view slot =
      input_region.substr(prefix.size(), input_region.size() - prefix.size() - suffix.size());
  if (slot.find(tmpl.eot) != std::string_view::npos) return std::nullopt;
  return std::string(slot);
}

std::optional<ParsedPrompt> ParsePrompt(std::string_view full, const PromptTemplate& tmpl) {
  const std::string prefix = tmpl.InputPrefix();
  const std::string suffix = tmpl.InputSuffix();
  if (!full.starts_with(prefix)) return std::nullopt;
  const auto cut = full.find(suffix, prefix.size());
  if (cut == std::string_view::npos) return std::nullopt;
  ParsedPrompt parsed;
  parsed.input = std::string(full.substr(prefix.size(), cut - prefix.size()));
  parsed.target = std::string(full.substr(cut + suffix.size()));
  return parsed;
}

}  // namespace dnadapt
