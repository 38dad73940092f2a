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

#include <array>
#include <fstream>
#include <sstream>

#include "dnadapt/batching.hpp"
#include "dnadapt/synthetic.hpp"
#include "test_util.hpp"

namespace dnadapt {
namespace {

class BatchingTest : public ::testing::Test {
 protected:
  void SetUp() override {
    SyntheticOptions o;
    o.source_train = 50;
    o.target_train = 60;
    o.validation = 0;
    o.test = 0;
    corpus_ = GenerateSyntheticCorpus(o);
    table_ = BuildSyntheticTable(corpus_, SurrogateProjector());
  }

  BatchComposer Composer(const MixtureWeights& w, ComposerOptions options = {}) const {
    return BatchComposer(corpus_.source_train, corpus_.target_train, w, NoiseConfig{}, &table_,
                         std::move(options));
  }

  SyntheticCorpus corpus_;
  EmbeddingTable table_;
};

TEST_F(BatchingTest, DegenerateWeightsGiveOneView) {
  const Batch b = Composer({1, 0, 0, 0}).Compose(32, 0, 1);
  for (const BatchItem& item : b) EXPECT_EQ(item.view, View::kAudio);
  const Batch t = Composer({0, 0, 0, 1}).Compose(32, 0, 1);
  for (const BatchItem& item : t) EXPECT_EQ(item.view, View::kTextNoiseTgt);
}

TEST_F(BatchingTest, ItemsReferenceTheRightDataset) {
  const BatchComposer c = Composer(DeriveMixture(0.61));
  std::map<std::string, const Utterance*> src, tgt;
  for (const auto& u : corpus_.source_train.utterances) src[u.id] = &u;
  for (const auto& u : corpus_.target_train.utterances) tgt[u.id] = &u;
  for (std::int64_t b = 0; b < 20; ++b) {
    for (const BatchItem& item : c.Compose(16, b, 3)) {
      const auto& owner = item.view == View::kTextNoiseTgt ? tgt : src;
      ASSERT_TRUE(owner.count(item.utterance_id)) << item.utterance_id;
      const Utterance& u = *owner.at(item.utterance_id);
      EXPECT_EQ(item.target_region, u.text);
      const auto slot = ParseInputRegion(item.input_region);
      ASSERT_TRUE(slot.has_value());
      if (item.view == View::kAudio) { EXPECT_EQ(*slot, *u.surrogate_audio); }
      if (item.view == View::kProjNoise) { EXPECT_EQ(*slot, c.ProjectorNoise(u)); }
    }
  }
}

TEST_F(BatchingTest, DeterministicAndOrderIndependent) {
  const BatchComposer c = Composer(DeriveMixture(0.5));
  const Batch b3 = c.Compose(16, 3, 9);
  c.Compose(16, 0, 9);
  EXPECT_EQ(c.Compose(16, 3, 9), b3);
  EXPECT_NE(c.Compose(16, 3, 10), b3);
  EXPECT_NE(c.Compose(16, 4, 9), b3);
  EXPECT_EQ(ComposeBatch(corpus_.source_train, corpus_.target_train, DeriveMixture(0.5), 16, 3, 9,
                         NoiseConfig{}, &table_),
            b3);
}

TEST_F(BatchingTest, ViewFrequenciesConverge) {
  const MixtureWeights w{0.13, 0.13, 0.13, 0.61};
  const BatchComposer c = Composer(w);
  std::array<int, 4> counts{};
  int total = 0;
  for (std::int64_t b = 0; b < 300; ++b) {
    for (const BatchItem& item : c.Compose(64, b, 1)) {
      ++counts[static_cast<std::size_t>(item.view)];
      ++total;
    }
  }
  for (View v : kAllViews) {
    EXPECT_NEAR(static_cast<double>(counts[static_cast<std::size_t>(v)]) / total, w.Weight(v),
                0.02);
  }
}

TEST_F(BatchingTest, TextVariantsApplyToTextViews) {
  ComposerOptions echo;
  echo.text_variant = ItemVariant::kEcho;
  for (const BatchItem& item : Composer({0.5, 0, 0, 0.5}, echo).Compose(32, 0, 1)) {
    const auto slot = ParseInputRegion(item.input_region);
    ASSERT_TRUE(slot.has_value());
    if (item.view == View::kTextNoiseTgt) {
      EXPECT_EQ(*slot, item.target_region);
    } else {
      EXPECT_NE(*slot, item.target_region);  // audio is untouched
    }
  }
  ComposerOptions none;
  none.text_variant = ItemVariant::kNoPrompt;
  for (const BatchItem& item : Composer({0, 0, 0.5, 0.5}, none).Compose(16, 0, 1)) {
    EXPECT_EQ(item.input_region, "");
  }
}

TEST_F(BatchingTest, FreeProjectorNoiseMatchesComposer) {
  const BatchComposer c = Composer(DeriveMixture(0.61));
  for (int k = 0; k < 5; ++k) {
    const Utterance& u = corpus_.source_train.utterances[static_cast<std::size_t>(k)];
    EXPECT_EQ(ProjectorNoise(u, table_, ComposerOptions{}), c.ProjectorNoise(u));
  }
}

TEST_F(BatchingTest, Errors) {
  DomainDataset empty_target;
  empty_target.kind = DatasetKind::kTargetTextOnly;
  EXPECT_ERROR_CODE(BatchComposer(corpus_.source_train, empty_target, {0.5, 0, 0, 0.5},
                                  NoiseConfig{}, &table_),
                    ErrorCode::kEmptyDataset);
  EXPECT_ERROR_CODE(BatchComposer(corpus_.source_train, corpus_.target_train, {0.5, 0.5, 0, 0},
                                  NoiseConfig{}, nullptr),
                    ErrorCode::kWeightViewMismatch);
  EXPECT_ERROR_CODE(Composer({0.5, 0.5, 0.5, 0.5}), ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(Composer({0.25, 0.25, 0.25, 0.25}).Compose(3, 0, 1),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(BatchComposer(corpus_.target_train, corpus_.target_train, {1, 0, 0, 0},
                                  NoiseConfig{}, nullptr),
                    ErrorCode::kInvalidArgument);
}

TEST_F(BatchingTest, ForgettingWarningFlag) {
  EXPECT_TRUE(Composer({0, 0.2, 0.2, 0.6}).forgetting_warning());
  EXPECT_FALSE(Composer(DeriveMixture(0.6)).forgetting_warning());
}

TEST_F(BatchingTest, ExportRoundTrip) {
  testing::TempDir dir;
  const BatchComposer c = Composer(DeriveMixture(0.4));
  const std::vector<Batch> batches = {c.Compose(4, 0, 1), c.Compose(4, 1, 1)};
  ExportManifest(batches, dir.File("b.jsonl"));
  std::ifstream in(dir.File("b.jsonl"));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 8u);
  for (int i = 0; i < 8; ++i) {
    EXPECT_EQ(lines[static_cast<std::size_t>(i)].rfind(
                  std::string("{\"batch_index\":") + (i < 4 ? "0" : "1"), 0),
              0u);
  }
  EXPECT_EQ(ReadBatchManifest(dir.File("b.jsonl")), batches);
  EXPECT_EQ(SerializeBatches(ReadBatchManifest(dir.File("b.jsonl"))), SerializeBatches(batches));

  ExportManifest({}, dir.File("empty.jsonl"));
  std::ifstream e(dir.File("empty.jsonl"));
  EXPECT_EQ(e.peek(), std::char_traits<char>::eof());
  EXPECT_ERROR_CODE(ExportManifest(batches, dir.File("no/such/dir/x")), ErrorCode::kIoError);
}

}  // namespace
}  // namespace dnadapt
