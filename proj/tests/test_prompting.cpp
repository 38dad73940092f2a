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

#include <gtest/gtest.h>

#include <sstream>

#include "dnadapt/key_value.hpp"
#include "dnadapt/prompting.hpp"
#include "test_util.hpp"

namespace dnadapt {
namespace {

constexpr const char* kExpected =
    "<|start_header_id|>user<|end_header_id|>Transcribe speech to text. Speech:"
    "x y<|eot_id|><|start_header_id|>assistant<|end_header_id|>x y";

std::size_t Count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

TEST(Render, EchoMatchesTemplateVerbatim) {
  const RenderedPrompt p = Render("ignored", "x y", ItemVariant::kEcho);
  EXPECT_EQ(p.Full(), kExpected);
  EXPECT_EQ(p.target_region, "x y");
  EXPECT_EQ(Render("x y", "x y", ItemVariant::kNoise), p);
}

TEST(Render, EmptySlot) {
  const RenderedPrompt p = Render("anything", "hello", ItemVariant::kEmpty);
  EXPECT_EQ(p.input_region,
            "<|start_header_id|>user<|end_header_id|>Transcribe speech to text. Speech:"
            "<|eot_id|><|start_header_id|>assistant<|end_header_id|>");
  EXPECT_EQ(p.target_region, "hello");
}

TEST(Render, NoPromptPassesThrough) {
  const RenderedPrompt p = Render("anything", "hello", ItemVariant::kNoPrompt);
  EXPECT_EQ(p.input_region, "");
  EXPECT_EQ(p.target_region, "hello");
}

TEST(Render, Errors) {
  EXPECT_ERROR_CODE(Render("", "hello", ItemVariant::kNoise), ErrorCode::kMissingInput);
  EXPECT_ERROR_CODE(Render("a", " ", ItemVariant::kNoise), ErrorCode::kEmptyInput);
  EXPECT_ERROR_CODE(Render("a<|eot_id|>", "t", ItemVariant::kNoise),
                    ErrorCode::kTemplateCollision);
  EXPECT_ERROR_CODE(Render("a", "t<|start_header_id|>", ItemVariant::kEcho),
                    ErrorCode::kTemplateCollision);
}

TEST(Render, OrderAndMultiplicity) {
  const std::string full = Render("mmy Z YesssS", "yes", ItemVariant::kNoise).Full();
  const std::string instr = "Transcribe speech to text. Speech:";
  EXPECT_EQ(Count(full, instr), 1u);
  EXPECT_EQ(Count(full, "mmy Z YesssS"), 1u);
  const auto user = full.find("user");
  const auto i = full.find(instr);
  const auto slot = full.find("mmy Z YesssS");
  const auto eot = full.find("<|eot_id|>");
  const auto assistant = full.find("assistant");
  const auto t = full.rfind("yes");
  EXPECT_LT(user, i);
  EXPECT_LT(i, slot);
  EXPECT_LT(slot, eot);
  EXPECT_LT(eot, assistant);
  EXPECT_LT(assistant, t);
}

TEST(Parse, RecoversSlotAndTarget) {
  for (ItemVariant v : {ItemVariant::kNoise, ItemVariant::kEcho, ItemVariant::kEmpty}) {
    const RenderedPrompt p = Render("n0isy inp ut", "clean text", v);
    const auto parsed = ParsePrompt(p.Full());
    ASSERT_TRUE(parsed.has_value());
    EXPECT_EQ(parsed->target, "clean text");
    EXPECT_EQ(*ParseInputRegion(p.input_region), parsed->input);
    if (v == ItemVariant::kNoise) { EXPECT_EQ(parsed->input, "n0isy inp ut"); }
    if (v == ItemVariant::kEcho) { EXPECT_EQ(parsed->input, "clean text"); }
    if (v == ItemVariant::kEmpty) { EXPECT_EQ(parsed->input, ""); }
  }
  EXPECT_FALSE(ParseInputRegion("plain text").has_value());
  EXPECT_FALSE(ParsePrompt("plain text").has_value());
}

TEST(Template, ConfigurableLiterals) {
  std::istringstream in("header_open = [[\nheader_close = ]]\neot = \"<end>\"\n");
  const PromptTemplate t = PromptTemplate::FromKeyValues(ParseKeyValues(in, "t"));
  EXPECT_EQ(Render("i", "t", ItemVariant::kNoise, t).Full(),
            "[[user]]Transcribe speech to text. Speech:i<end>[[assistant]]t");
  std::istringstream bad("colour = red\n");
  EXPECT_ERROR_CODE(PromptTemplate::FromKeyValues(ParseKeyValues(bad, "t")),
                    ErrorCode::kInvalidConfig);
}

TEST(Variant, Names) {
  for (ItemVariant v : {ItemVariant::kNoise, ItemVariant::kEcho, ItemVariant::kEmpty,
                        ItemVariant::kNoPrompt}) {
    EXPECT_EQ(ParseVariant(VariantName(v)), v);
  }
  EXPECT_ERROR_CODE(ParseVariant("LOUD"), ErrorCode::kInvalidConfig);
}

TEST(KeyValues, ParseAndSerialize) {
  std::istringstream in("# comment\n  a = 1 \nb=\" spaced \"\n\nc = x y\n");
  const KeyValues kv = ParseKeyValues(in, "cfg");
  EXPECT_EQ(kv.at("a"), "1");
  EXPECT_EQ(kv.at("b"), " spaced ");
  EXPECT_EQ(kv.at("c"), "x y");
  std::istringstream again(SerializeKeyValues(kv));
  EXPECT_EQ(ParseKeyValues(again, "cfg"), kv);
  std::istringstream dup("a = 1\na = 2\n");
  EXPECT_ERROR_CODE(ParseKeyValues(dup, "cfg"), ErrorCode::kInvalidConfig);
  std::istringstream junk("just words\n");
  EXPECT_ERROR_CODE(ParseKeyValues(junk, "cfg"), ErrorCode::kInvalidConfig);
}

}  // namespace
}  // namespace dnadapt
