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

#include "dnadapt/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <filesystem>
#include <future>
#include <map>

#include "dnadapt/corpus.hpp"
#include "dnadapt/error.hpp"

namespace dnadapt {
namespace {

DomainDataset LoadRequired(const std::string& path, const char* key, DatasetKind kind,
                           Split split) {
  if (path.empty()) throw Error(ErrorCode::kInvalidConfig, std::string(key) + " is not set");
  return LoadManifest(path, kind, split);
}

std::string FormatWeights(const MixtureWeights& w) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.4f,%.4f,%.4f,%.4f", w.sigma_a, w.sigma_ta, w.sigma_t, w.tau);
  return buf;
}

void AddProvenance(EvalReport& r, const AdaptationExperiment& ex, const RunConfig& cfg,
                   double tau) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", RoundDecimals(tau, 2));
  r.metadata["tau." + DomainOf(ex.data().target_test)] = buf;
  r.metadata["config_hash"] = cfg.Hash();
  r.metadata["seed"] = std::to_string(cfg.seed);
}

}  // namespace

std::string DomainOf(const DomainDataset& dataset) {
  if (!dataset.empty() && !dataset.utterances.front().domain.empty()) {
    return dataset.utterances.front().domain;
  }
  return dataset.name;
}

ExperimentData LoadExperimentData(const RunConfig& cfg) {
  const RunPaths& p = cfg.paths;
  ExperimentData data;
  data.source_train =
      LoadRequired(p.source_train, "paths.source_train", DatasetKind::kSourcePaired, Split::kTrain);
  data.target_train = LoadRequired(p.target_train, "paths.target_train",
                                   DatasetKind::kTargetTextOnly, Split::kTrain);
  data.source_test =
      LoadRequired(p.source_test, "paths.source_test", DatasetKind::kSourcePaired, Split::kTest);
  data.target_test =
      LoadRequired(p.target_test, "paths.target_test", DatasetKind::kSourcePaired, Split::kTest);
  if (!p.table.empty()) data.table = LoadEmbeddingTable(p.table);
  return data;
}

EvalReport EvaluateModel(const ModelState& model, const std::vector<DomainDataset>& tests,
                         const std::string& system_name, int max_len) {
  EvalReport report;
  report.system_name = system_name;
  for (const DomainDataset& test : tests) {
    report.per_domain.push_back({DomainOf(test), TestWer(model, test, max_len), std::nullopt});
  }
  return report;
}

EvalReport BaseReport(AdaptationExperiment& experiment, const RunConfig& cfg) {
  const ExperimentData& d = experiment.data();
  EvalReport r;
  r.system_name = "Base";
  r.per_domain = {{DomainOf(d.source_test), experiment.BaseSourceWer(), std::nullopt},
                  {DomainOf(d.target_test), experiment.BaseTargetWer(), std::nullopt}};
  AddProvenance(r, experiment, cfg, cfg.Weights(d.source_train.size(), d.target_train.size()).tau);
  return r;
}

std::vector<EvalReport> RunAblationSuite(AdaptationExperiment& experiment, const RunConfig& cfg,
                                         const std::vector<AblationRow>& rows,
                                         const AblationOptions& options) {
  const ExperimentData& d = experiment.data();
  const double tau = cfg.Weights(d.source_train.size(), d.target_train.size()).tau;
  const EvalReport base = BaseReport(experiment, cfg);
  if (!options.row_dir.empty()) std::filesystem::create_directories(options.row_dir);

  struct Job {
    MixtureWeights weights;
    ItemVariant variant;
  };
  std::vector<Job> jobs;
  std::vector<std::size_t> job_of_row;
  for (const AblationRow& row : rows) {
    const Job job{AblateWeights(tau, row.active), row.item_type};
    std::size_t j = 0;
    while (j < jobs.size() && !(jobs[j].weights == job.weights && jobs[j].variant == job.variant)) ++j;
    if (j == jobs.size()) jobs.push_back(job);
    job_of_row.push_back(j);
  }

  const ExperimentConfig ecfg = cfg.Experiment();
  const auto run_job = [&](const Job& job) {
    const ModelState adapted = AdaptModel(experiment.Base(), d, job.weights, job.variant, ecfg);
    return std::make_pair(TestWer(adapted, d.source_test, ecfg.decode_max_len),
                          TestWer(adapted, d.target_test, ecfg.decode_max_len));
  };
  std::vector<EvalReport> reports(rows.size());
  const auto finish = [&](std::size_t j, const std::pair<double, double>& wers) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (job_of_row[r] != j) continue;
      const AblationRow& row = rows[r];
      EvalReport& report = reports[r];
      report.system_name = row.name;
      report.per_domain = {{DomainOf(d.source_test), wers.first, std::nullopt},
                           {DomainOf(d.target_test), wers.second, std::nullopt}};
      report.active_views = row.active;
      report.item_type = row.item_type;
      AddProvenance(report, experiment, cfg, tau);
      report.metadata["weights"] = FormatWeights(jobs[j].weights);
      report.metadata["renormalization"] = "equal among active source views, tau fixed";
      AttachBaseline(report, base);
      spdlog::info("ablation row {}: source {:.2f} target {:.2f}", row.name, wers.first,
                   wers.second);
      if (!options.row_dir.empty()) {
        std::string file = row.name;
        for (char& c : file) {
          if (c == ':' || c == '+' || c == '/') c = '_';
        }
        SaveReports({report}, options.row_dir + "/" + file + ".jsonl");
      }
    }
  };
  if (options.parallel_rows) {
    experiment.Base();
    std::vector<std::future<std::pair<double, double>>> futures;
    for (const Job& job : jobs) futures.push_back(std::async(std::launch::async, run_job, job));
    for (std::size_t j = 0; j < jobs.size(); ++j) finish(j, futures[j].get());
  } else {
    for (std::size_t j = 0; j < jobs.size(); ++j) finish(j, run_job(jobs[j]));
  }
  return reports;
}

}  // namespace dnadapt
