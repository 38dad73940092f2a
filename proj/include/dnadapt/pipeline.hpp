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

// Pipeline stages shared by the command-line tool and the acceptance suite.

#ifndef DNADAPT_PIPELINE_HPP_
#define DNADAPT_PIPELINE_HPP_

#include <string>
#include <vector>

#include "dnadapt/eval.hpp"
#include "dnadapt/experiment.hpp"
#include "dnadapt/run_config.hpp"

namespace dnadapt {

/// Domain label of a dataset: the domain of its first utterance, else its
/// name.
std::string DomainOf(const DomainDataset& dataset);

/// Loads the four datasets and the optional embedding table named in
/// cfg.paths. Test manifests must carry surrogate audio.
ExperimentData LoadExperimentData(const RunConfig& cfg);

/// One DomainScore per test set.
EvalReport EvaluateModel(const ModelState& model, const std::vector<DomainDataset>& tests,
                         const std::string& system_name, int max_len);

struct AblationOptions {
  /// When non-empty, every finished row is written to <row_dir>/<row>.jsonl.
  std::string row_dir;
  bool parallel_rows = false;
};

/// Report of the unadapted model on the source and target test splits.
EvalReport BaseReport(AdaptationExperiment& experiment, const RunConfig& cfg);

/// One report per row with deltas against BaseReport. Disabled source views
/// give their mass to the remaining active ones in equal parts, tau fixed.
/// Rows with identical weights and item type are trained once.
std::vector<EvalReport> RunAblationSuite(AdaptationExperiment& experiment, const RunConfig& cfg,
                                         const std::vector<AblationRow>& rows,
                                         const AblationOptions& options = {});

}  // namespace dnadapt

#endif  // DNADAPT_PIPELINE_HPP_
