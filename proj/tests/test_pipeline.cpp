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

#include <algorithm>
#include <filesystem>
#include <set>

#include "dnadapt/pipeline.hpp"
#include "dnadapt/random.hpp"
#include "dnadapt/synthetic.hpp"
#include "dnadapt/text.hpp"
#include "test_util.hpp"

namespace dnadapt {
namespace {

SyntheticOptions SmallCorpus() {
  SyntheticOptions o;
  o.seed = 4;
  o.source_train = 60;
  o.target_train = 90;
  o.validation = 5;
  o.test = 6;
  return o;
}

std::set<std::string> Words(const DomainDataset& ds) {
  std::set<std::string> out;
  for (const Utterance& u : ds.utterances) {
    for (const std::string& w : SplitWords(u.text)) out.insert(w);
  }
  return out;
}

TEST(Synthetic, DomainsShareOnlyFunctionWords) {
  const SyntheticCorpus c = GenerateSyntheticCorpus(SmallCorpus());
  const std::set<std::string> function(c.function_words.begin(), c.function_words.end());
  const auto src = c.source_lexicon.All();
  for (const std::string& w : c.target_lexicon.All()) {
    EXPECT_EQ(std::count(src.begin(), src.end(), w), 0) << w;
    EXPECT_EQ(function.count(w), 0u) << w;
  }
  const std::set<std::string> src_words = Words(c.source_train);
  for (const std::string& w : Words(c.target_train)) {
    if (src_words.count(w)) { EXPECT_EQ(function.count(w), 1u) << w; }
  }
}

TEST(Synthetic, SplitShapes) {
  const SyntheticOptions o = SmallCorpus();
  const SyntheticCorpus c = GenerateSyntheticCorpus(o);
  EXPECT_EQ(c.source_train.size(), 60u);
  EXPECT_EQ(c.target_train.size(), 90u);
  EXPECT_EQ(c.target_test.size(), 6u);
  EXPECT_EQ(c.target_train.kind, DatasetKind::kTargetTextOnly);
  for (const Utterance& u : c.target_train.utterances) EXPECT_FALSE(u.surrogate_audio);
  for (const Utterance& u : c.target_test.utterances) EXPECT_TRUE(u.surrogate_audio);
  for (const Utterance& u : c.target_validation.utterances) EXPECT_TRUE(u.surrogate_audio);
  for (const Utterance& u : c.source_train.utterances) {
    EXPECT_EQ(*u.surrogate_audio, SurrogateAcousticChannel(u.text, DeriveSeed(o.seed, u.id)));
  }
  EXPECT_EQ(DomainOf(c.source_test), "source");
  EXPECT_EQ(DomainOf(c.target_test), "target");
}

TEST(Synthetic, Deterministic) {
  const SyntheticCorpus a = GenerateSyntheticCorpus(SmallCorpus());
  const SyntheticCorpus b = GenerateSyntheticCorpus(SmallCorpus());
  EXPECT_EQ(SerializeManifest(a.source_train), SerializeManifest(b.source_train));
  EXPECT_EQ(SerializeManifest(a.target_test), SerializeManifest(b.target_test));
  SyntheticOptions other = SmallCorpus();
  other.seed = 5;
  EXPECT_NE(SerializeManifest(GenerateSyntheticCorpus(other).source_train),
            SerializeManifest(a.source_train));
}

TEST(Synthetic, TableCoversVocabulary) {
  const SyntheticCorpus c = GenerateSyntheticCorpus(SmallCorpus());
  const SurrogateProjector projector;
  const EmbeddingTable table = BuildSyntheticTable(c, projector);
  for (const std::string& w : Words(c.target_train)) {
    EXPECT_NE(std::find(table.tokens.begin(), table.tokens.end(), w), table.tokens.end()) << w;
  }
  EXPECT_EQ(table.dim(), projector.dim());
}

TEST(Ablation, WeightsArithmetic) {
  EXPECT_EQ(AblateWeights(0.61, {true, true, true}).sigma_a, (1.0 - 0.61) / 3.0);
  const MixtureWeights w = AblateWeights(0.61, {false, true, true});
  EXPECT_EQ(w.sigma_a, 0.0);
  EXPECT_DOUBLE_EQ(w.sigma_ta, 0.195);
  EXPECT_DOUBLE_EQ(w.sigma_t, 0.195);
  EXPECT_NEAR(w.Sum(), 1.0, 1e-12);
  EXPECT_ERROR_CODE(AblateWeights(1.0, {true, false, false}), ErrorCode::kInvalidTau);
  EXPECT_EQ(CompositionRows().size(), 5u);
  EXPECT_EQ(ItemTypeRows().size(), 4u);
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    corpus_ = GenerateSyntheticCorpus(SmallCorpus());
    cfg_.train.dims = {8, 16, 1, 2, 160};
    cfg_.train.max_steps = 4;
    cfg_.train.batch_size = 4;
    cfg_.adapt.max_steps = 3;
    cfg_.adapt.batch_size = 4;
    cfg_.decode_max_len = 8;
    cfg_.seed = 2;
  }

  ExperimentData Data() const {
    return {corpus_.source_train, corpus_.source_test, corpus_.target_train, corpus_.target_test,
            BuildSyntheticTable(corpus_, SurrogateProjector(cfg_.projector))};
  }

  SyntheticCorpus corpus_;
  RunConfig cfg_;
};

TEST_F(PipelineTest, AblationSuiteReports) {
  testing::TempDir dir;
  AdaptationExperiment ex(Data(), cfg_.Experiment());
  AblationOptions options;
  options.row_dir = dir.File("rows");
  std::vector<AblationRow> rows = CompositionRows();
  const auto items = ItemTypeRows();
  rows.insert(rows.end(), items.begin(), items.end());
  const std::vector<EvalReport> reports = RunAblationSuite(ex, cfg_, rows, options);
  ASSERT_EQ(reports.size(), rows.size());
  const EvalReport base = BaseReport(ex, cfg_);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    EXPECT_EQ(reports[r].system_name, rows[r].name);
    ASSERT_EQ(reports[r].per_domain.size(), 2u);
    EXPECT_EQ(reports[r].per_domain[1].domain, "target");
    EXPECT_TRUE(reports[r].per_domain[1].delta.has_value());
    EXPECT_EQ(reports[r].metadata.at("config_hash"), cfg_.Hash());
    EXPECT_EQ(reports[r].metadata.count("tau.target"), 1u);
  }
  // "all" and "item:NOISE" are the same configuration.
  EXPECT_EQ(reports[4].per_domain, reports[5].per_domain);
  EXPECT_TRUE(std::filesystem::exists(dir.File("rows/audio_proj.jsonl")));
  EXPECT_TRUE(std::filesystem::exists(dir.File("rows/item_NO_PROMPT.jsonl")));
  EXPECT_EQ(LoadReports(dir.File("rows/all.jsonl")).front(), reports[4]);
  EXPECT_EQ(base.per_domain[0].wer, ex.BaseSourceWer());
}

TEST_F(PipelineTest, ParallelRowsMatchSequential) {
  AdaptationExperiment seq(Data(), cfg_.Experiment());
  AdaptationExperiment par(Data(), cfg_.Experiment());
  AblationOptions parallel;
  parallel.parallel_rows = true;
  EXPECT_EQ(RunAblationSuite(seq, cfg_, ItemTypeRows()),
            RunAblationSuite(par, cfg_, ItemTypeRows(), parallel));
}

TEST_F(PipelineTest, LoadsDataFromPaths) {
  testing::TempDir dir;
  RunConfig cfg = cfg_;
  cfg.paths.source_train = dir.File("st.jsonl");
  cfg.paths.target_train = dir.File("tt.jsonl");
  cfg.paths.source_test = dir.File("se.jsonl");
  cfg.paths.target_test = dir.File("te.jsonl");
  SaveManifest(corpus_.source_train, cfg.paths.source_train);
  SaveManifest(corpus_.target_train, cfg.paths.target_train);
  SaveManifest(corpus_.source_test, cfg.paths.source_test);
  EXPECT_ERROR_CODE(LoadExperimentData(cfg), ErrorCode::kIoError);
  SaveManifest(corpus_.target_test, cfg.paths.target_test);
  const ExperimentData d = LoadExperimentData(cfg);
  EXPECT_EQ(d.target_test.utterances, corpus_.target_test.utterances);
  EXPECT_FALSE(d.table.has_value());
  cfg.paths.source_test.clear();
  EXPECT_ERROR_CODE(LoadExperimentData(cfg), ErrorCode::kInvalidConfig);
}

TEST_F(PipelineTest, EvaluateModelScoresEachDomain) {
  const ModelState m = InitModel(cfg_.train);
  const EvalReport r = EvaluateModel(m, {corpus_.source_test, corpus_.target_test}, "x", 4);
  ASSERT_EQ(r.per_domain.size(), 2u);
  EXPECT_EQ(r.per_domain[0].domain, "source");
  EXPECT_DOUBLE_EQ(r.per_domain[1].wer, TestWer(m, corpus_.target_test, 4));
}

}  // namespace
}  // namespace dnadapt
