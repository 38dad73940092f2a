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

// Scoring: word error rate, relative improvement, validation perplexity and
// plain-text result tables.

#ifndef DNADAPT_EVAL_HPP_
#define DNADAPT_EVAL_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dnadapt/corpus.hpp"
#include "dnadapt/prompting.hpp"
#include "dnadapt/tinylm.hpp"

namespace dnadapt {

/// Lowercases and splits on whitespace.
std::vector<std::string> NormalizeForWer(std::string_view s);

struct WerResult {
  double wer = 0.0;  // fraction, (S + D + I) / N
  int substitutions = 0;
  int deletions = 0;
  int insertions = 0;
  int reference_words = 0;

  int errors() const { return substitutions + deletions + insertions; }
};

/// Unit-cost Levenshtein alignment over normalized words. Among minimum-cost
/// alignments the one with the most substitutions is counted. Throws
/// EmptyReference for a reference without words.
WerResult Wer(std::string_view reference, std::string_view hypothesis);
WerResult Wer(const std::vector<std::string>& reference,
              const std::vector<std::string>& hypothesis);

/// Accumulates errors over many utterances; Percent() = 100 * errors / words.
struct CorpusWer {
  std::int64_t errors = 0;
  std::int64_t reference_words = 0;

  void Add(const WerResult& r) {
    errors += r.errors();
    reference_words += r.reference_words;
  }
  double Percent() const;
};

/// (base - adapted) / base * 100. Throws DivisionByZero when base <= 0.
double Delta(double base_wer, double adapted_wer);
/// Delta rounded to one decimal, as displayed in tables.
double DeltaDisplay(double base_wer, double adapted_wer);

/// exp of the mean target cross-entropy over AUDIO-view inputs of a
/// validation dataset with surrogate audio.
double Perplexity(const ModelState& model, const DomainDataset& dataset);

/// Perplexity series recorded during training.
class PerplexityMonitor {
 public:
  PerplexityMonitor(const DomainDataset& validation, int every)
      : validation_(validation), every_(every) {}

  /// Installs itself as the monitor of `log`.
  void Attach(TrainLog& log);

  struct Point {
    std::int64_t step;
    double perplexity;
  };
  const std::vector<Point>& series() const { return series_; }
  /// One "step<TAB>perplexity" line per point.
  std::string Serialize() const;

 private:
  const DomainDataset& validation_;
  int every_;
  std::vector<Point> series_;
};

struct DomainScore {
  std::string domain;
  double wer = 0.0;                 // percent
  std::optional<double> delta;      // percent, relative to the report's baseline
  bool operator==(const DomainScore&) const = default;
};

struct EvalReport {
  std::string system_name;
  std::vector<DomainScore> per_domain;
  /// Free-form provenance: tau values ("tau.<domain>"), seeds, config hash.
  std::map<std::string, std::string> metadata;
  /// Active source views (sigma_a, sigma_ta, sigma_t) for composition rows.
  std::optional<std::array<bool, 3>> active_views;
  /// Item type of the sigma_t and tau views for item-type rows.
  std::optional<ItemVariant> item_type;

  bool operator==(const EvalReport&) const = default;
};

/// Fills `delta` of every domain of `report` against the same domain of
/// `baseline`.
void AttachBaseline(EvalReport& report, const EvalReport& baseline);

enum class ReportLayout { kTable2, kTable4, kTable5 };

std::string LayoutName(ReportLayout layout);
ReportLayout ParseLayout(const std::string& name);  // TABLE2_STYLE, ...

/// Aligned plain-text table; systems in input order, domains alphabetical.
/// Throws InconsistentDomains when reports cover different domain sets.
std::string RenderReport(const std::vector<EvalReport>& reports, ReportLayout layout);

std::string SerializeReport(const EvalReport& report);  // one line
EvalReport ParseReport(std::string_view line);
void SaveReports(const std::vector<EvalReport>& reports, const std::string& path);
std::vector<EvalReport> LoadReports(const std::string& path);

}  // namespace dnadapt

#endif  // DNADAPT_EVAL_HPP_
