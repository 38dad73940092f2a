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

// dnadapt: command-line entry point for the adaptation pipeline.
//
// Every RunConfig key is also a global flag (--train.max_steps 500), and
// --config loads a key-value file first. Exit status: 0 success, 2 config
// or usage error, 3 data error, 4 numeric failure.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "dnadapt/batching.hpp"
#include "dnadapt/corpus.hpp"
#include "dnadapt/embedding_table.hpp"
#include "dnadapt/error.hpp"
#include "dnadapt/eval.hpp"
#include "dnadapt/experiment.hpp"
#include "dnadapt/noising.hpp"
#include "dnadapt/pipeline.hpp"
#include "dnadapt/run_config.hpp"
#include "dnadapt/synthetic.hpp"
#include "dnadapt/text.hpp"
#include "dnadapt/tinylm.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace dnadapt;

namespace {

struct Globals {
  std::string config_path;
  std::map<std::string, std::string> overrides;
  bool quiet = false;
  bool verbose = false;
};

RunConfig ResolveConfig(const Globals& g) {
  RunConfig cfg = g.config_path.empty() ? RunConfig() : RunConfig::Load(g.config_path);
  for (const auto& [key, value] : g.overrides) cfg.Set(key, value);
  cfg.noise.Validate();
  cfg.train.Validate();
  return cfg;
}

void EnsureParent(const std::string& path) {
  if (const fs::path parent = fs::path(path).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
}

std::string OutPath(const RunConfig& cfg, const std::string& explicit_path,
                    const std::string& default_name) {
  const std::string path = explicit_path.empty()
                               ? (fs::path(cfg.paths.output_dir) / default_name).string()
                               : explicit_path;
  EnsureParent(path);
  return path;
}

void WriteText(const std::string& path, const std::string& text) {
  EnsureParent(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

void Manifest(const RunConfig& cfg, const std::string& stage, const std::vector<std::string>& outputs) {
  std::vector<std::string> names;
  for (const std::string& o : outputs) names.push_back(fs::path(o).filename().string());
  WriteRunManifest(cfg, stage, names, outputs.front() + ".manifest.json");
}

std::string Losses(const TrainLog& log) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < log.losses.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu\t%.6f\n", i + 1, log.losses[i]);
    out += buf;
  }
  return out;
}

// ---- synth ----

struct SynthArgs {
  std::string out_dir;
  SyntheticOptions options;
};

void RunSynth(const RunConfig& base_cfg, const SynthArgs& a) {
  SyntheticOptions o = a.options;
  o.seed = base_cfg.seed;
  const SyntheticCorpus c = GenerateSyntheticCorpus(o);
  fs::create_directories(a.out_dir);
  const auto path = [&](const std::string& name) { return (fs::path(a.out_dir) / name).string(); };
  RunConfig cfg = base_cfg;
  cfg.paths.source_train = path("source_train.jsonl");
  cfg.paths.source_validation = path("source_validation.jsonl");
  cfg.paths.source_test = path("source_test.jsonl");
  cfg.paths.target_train = path("target_train.jsonl");
  cfg.paths.target_validation = path("target_validation.jsonl");
  cfg.paths.target_test = path("target_test.jsonl");
  cfg.paths.table = path("table.dnem");
  SaveManifest(c.source_train, cfg.paths.source_train);
  SaveManifest(c.source_validation, cfg.paths.source_validation);
  SaveManifest(c.source_test, cfg.paths.source_test);
  SaveManifest(c.target_train, cfg.paths.target_train);
  SaveManifest(c.target_validation, cfg.paths.target_validation);
  SaveManifest(c.target_test, cfg.paths.target_test);
  SaveEmbeddingTable(BuildSyntheticTable(c, SurrogateProjector(cfg.projector)), cfg.paths.table);
  WriteText(path("run.cfg"), cfg.Serialize());
  Manifest(cfg, "synth",
           {cfg.paths.source_train, cfg.paths.source_validation, cfg.paths.source_test,
            cfg.paths.target_train, cfg.paths.target_validation, cfg.paths.target_test,
            cfg.paths.table, path("run.cfg")});
  std::cout << "wrote synthetic corpus to " << a.out_dir << " (config: " << path("run.cfg")
            << ")\n";
}

// ---- ingest ----

struct IngestArgs {
  std::string input, kind = "source", split = "train", out;
};

void RunIngest(const RunConfig& cfg, const IngestArgs& a) {
  const DomainDataset ds = LoadManifest(a.input, ParseKind(a.kind), ParseSplit(a.split));
  std::size_t with_audio = 0, words = 0;
  for (const Utterance& u : ds.utterances) {
    with_audio += u.surrogate_audio.has_value();
    words += SplitWords(u.text).size();
  }
  std::cout << "utterances " << ds.size() << "\nwith_audio " << with_audio << "\nwords " << words
            << "\n";
  if (!a.out.empty()) {
    EnsureParent(a.out);
    SaveManifest(ds, a.out);
    Manifest(cfg, "ingest", {a.out});
  }
}

// ---- noise ----

struct NoiseArgs {
  std::string input, kind = "target", split = "train", out;
};

void RunNoise(const RunConfig& cfg, const NoiseArgs& a) {
  const DomainDataset ds = LoadManifest(a.input, ParseKind(a.kind), ParseSplit(a.split));
  std::string lines;
  long words = 0, selected = 0, candidates = 0, dups = 0;
  for (const Utterance& u : ds.utterances) {
    const TextNoiseTrace t = TextNoiseWithTrace(u.text, cfg.noise, u.id);
    words += t.num_words;
    selected += static_cast<long>(t.selected_words.size());
    candidates += t.dup_candidates;
    dups += t.dup_events;
    nlohmann::ordered_json rec;
    rec["id"] = u.id;
    rec["text"] = u.text;
    rec["noisy"] = t.output;
    lines += rec.dump() + "\n";
  }
  const std::string out = OutPath(cfg, a.out, "noised.jsonl");
  WriteText(out, lines);
  Manifest(cfg, "noise", {out});
  std::printf("utterances %zu\nword_selection_rate %.4f\nduplication_rate %.4f\n", ds.size(),
              words ? static_cast<double>(selected) / static_cast<double>(words) : 0.0,
              candidates ? static_cast<double>(dups) / static_cast<double>(candidates) : 0.0);
}

// ---- quantize ----

struct QuantizeArgs {
  std::string input, out, tokens;
};

void RunQuantize(const RunConfig& cfg, const QuantizeArgs& a) {
  const SurrogateProjector projector(cfg.projector);
  if (!a.tokens.empty()) {
    std::ifstream in(a.tokens);
    if (!in) throw Error(ErrorCode::kIoError, "cannot open token list " + a.tokens);
    std::vector<std::string> tokens;
    for (std::string line; std::getline(in, line);) {
      if (!Trim(line).empty()) tokens.emplace_back(Trim(line));
    }
    const std::string out = OutPath(cfg, a.out, "table.dnem");
    SaveEmbeddingTable(projector.BuildTable(tokens), out);
    Manifest(cfg, "quantize", {out});
    std::cout << "table rows " << tokens.size() << " dim " << projector.dim() << "\n";
    return;
  }
  if (a.input.empty()) throw Error(ErrorCode::kInvalidArgument, "quantize needs --input or --tokens");
  if (cfg.paths.table.empty()) throw Error(ErrorCode::kInvalidConfig, "paths.table is not set");
  const EmbeddingTable table = LoadEmbeddingTable(cfg.paths.table);
  const DomainDataset ds = LoadManifest(a.input, DatasetKind::kSourcePaired, Split::kTrain);
  const ComposerOptions options = cfg.Composer();
  std::string lines;
  for (const Utterance& u : ds.utterances) {
    nlohmann::ordered_json rec;
    rec["id"] = u.id;
    rec["text"] = u.text;
    rec["projector_noise"] = ProjectorNoise(u, table, options);
    lines += rec.dump() + "\n";
  }
  const std::string out = OutPath(cfg, a.out, "projector_noise.jsonl");
  WriteText(out, lines);
  Manifest(cfg, "quantize", {out});
}

// ---- compose ----

struct ComposeArgs {
  std::string tau, exported;
  int batch_size = 16;
  long num_batches = 10;
  long start = 0;
};

void RunCompose(RunConfig cfg, const ComposeArgs& a) {
  if (!a.tau.empty()) cfg.Set("mix.tau", a.tau);
  const DomainDataset src = LoadManifest(cfg.paths.source_train, DatasetKind::kSourcePaired);
  const DomainDataset tgt = LoadManifest(cfg.paths.target_train, DatasetKind::kTargetTextOnly);
  const MixtureWeights w = cfg.Weights(src.size(), tgt.size());
  std::optional<EmbeddingTable> table;
  if (!cfg.paths.table.empty()) table = LoadEmbeddingTable(cfg.paths.table);
  const BatchComposer composer(src, tgt, w, cfg.noise, table ? &*table : nullptr, cfg.Composer());
  std::vector<Batch> batches;
  std::array<long, 4> counts{};
  for (long b = 0; b < a.num_batches; ++b) {
    batches.push_back(composer.Compose(a.batch_size, a.start + b, cfg.seed));
    for (const BatchItem& item : batches.back()) ++counts[static_cast<int>(item.view)];
  }
  std::printf("weights sigma_a %.4f sigma_ta %.4f sigma_t %.4f tau %.4f\n", w.sigma_a, w.sigma_ta,
              w.sigma_t, w.tau);
  for (int k = 0; k < 4; ++k) {
    std::printf("%-15s %ld\n", ViewName(static_cast<View>(k)).c_str(), counts[k]);
  }
  const std::string out = OutPath(cfg, a.exported, "batches.jsonl");
  ExportManifest(batches, out);
  Manifest(cfg, "compose", {out});
}

// ---- train / adapt ----

void MaybeMonitor(const RunConfig& cfg, const std::string& validation_path, TrainLog& log,
                  std::optional<DomainDataset>& validation,
                  std::optional<PerplexityMonitor>& monitor) {
  if (cfg.monitor_every <= 0 || validation_path.empty()) return;
  validation = LoadManifest(validation_path, DatasetKind::kSourcePaired, Split::kValidation);
  monitor.emplace(*validation, cfg.monitor_every);
  monitor->Attach(log);
}

struct TrainArgs {
  std::string out;
};

void RunTrain(const RunConfig& cfg, const TrainArgs& a) {
  const DomainDataset src = LoadManifest(cfg.paths.source_train, DatasetKind::kSourcePaired);
  TrainLog log;
  std::optional<DomainDataset> validation;
  std::optional<PerplexityMonitor> monitor;
  MaybeMonitor(cfg, cfg.paths.source_validation, log, validation, monitor);
  const ModelState model = TrainBaseModel(src, cfg.Experiment(), &log);
  const std::string out = OutPath(cfg, a.out, "base.ckpt");
  SaveCheckpoint(model, out);
  std::vector<std::string> outputs{out, out + ".losses.tsv"};
  WriteText(outputs[1], Losses(log));
  if (monitor) {
    outputs.push_back(out + ".perplexity.tsv");
    WriteText(outputs.back(), monitor->Serialize());
  }
  Manifest(cfg, "train", outputs);
  std::printf("steps %lld final_loss %.4f\n", static_cast<long long>(model.step_count),
              log.TailMean(50));
}

struct AdaptArgs {
  std::string base, out;
};

void RunAdapt(const RunConfig& cfg, const AdaptArgs& a) {
  ExperimentData data;
  data.source_train = LoadManifest(cfg.paths.source_train, DatasetKind::kSourcePaired);
  data.target_train = LoadManifest(cfg.paths.target_train, DatasetKind::kTargetTextOnly);
  if (!cfg.paths.table.empty()) data.table = LoadEmbeddingTable(cfg.paths.table);
  const MixtureWeights w = cfg.Weights(data.source_train.size(), data.target_train.size());
  const ModelState base = LoadCheckpoint(a.base);
  TrainLog log;
  std::optional<DomainDataset> validation;
  std::optional<PerplexityMonitor> monitor;
  MaybeMonitor(cfg, cfg.paths.target_validation, log, validation, monitor);
  const ModelState model = AdaptModel(base, data, w, cfg.item_type, cfg.Experiment(), &log);
  const std::string out = OutPath(cfg, a.out, "adapted.ckpt");
  SaveCheckpoint(model, out);
  std::vector<std::string> outputs{out, out + ".losses.tsv"};
  WriteText(outputs[1], Losses(log));
  if (monitor) {
    outputs.push_back(out + ".perplexity.tsv");
    WriteText(outputs.back(), monitor->Serialize());
  }
  Manifest(cfg, "adapt", outputs);
  std::printf("weights %.4f %.4f %.4f %.4f steps %lld final_loss %.4f\n", w.sigma_a, w.sigma_ta,
              w.sigma_t, w.tau, static_cast<long long>(model.step_count), log.TailMean(50));
}

// ---- evaluate ----

struct EvaluateArgs {
  std::string model, out, system = "model", baseline, hypotheses;
  std::vector<std::string> tests;
};

void RunEvaluate(const RunConfig& cfg, const EvaluateArgs& a) {
  std::vector<std::string> paths = a.tests;
  if (paths.empty()) {
    for (const std::string* p : {&cfg.paths.source_test, &cfg.paths.target_test}) {
      if (!p->empty()) paths.push_back(*p);
    }
  }
  if (paths.empty()) throw Error(ErrorCode::kInvalidConfig, "no test manifests given");
  const ModelState model = LoadCheckpoint(a.model);
  std::vector<DomainDataset> tests;
  for (const std::string& p : paths) {
    tests.push_back(LoadManifest(p, DatasetKind::kSourcePaired, Split::kTest));
  }
  EvalReport report = EvaluateModel(model, tests, a.system, cfg.decode_max_len);
  report.metadata["config_hash"] = cfg.Hash();
  report.metadata["seed"] = std::to_string(cfg.seed);
  if (!a.baseline.empty()) {
    const std::vector<EvalReport> base = LoadReports(a.baseline);
    if (base.empty()) throw Error(ErrorCode::kEmptyDataset, "baseline report is empty");
    AttachBaseline(report, base.front());
  }
  const std::string out = OutPath(cfg, a.out, "report.jsonl");
  SaveReports({report}, out);
  std::vector<std::string> outputs{out};
  if (!a.hypotheses.empty()) {
    std::string lines;
    for (const DomainDataset& test : tests) {
      const std::vector<std::string> hyps = TranscribeAudio(model, test, cfg.decode_max_len);
      for (std::size_t i = 0; i < hyps.size(); ++i) {
        nlohmann::ordered_json rec;
        rec["id"] = test.utterances[i].id;
        rec["reference"] = test.utterances[i].text;
        rec["hypothesis"] = hyps[i];
        lines += rec.dump() + "\n";
      }
    }
    WriteText(a.hypotheses, lines);
    outputs.push_back(a.hypotheses);
  }
  Manifest(cfg, "evaluate", outputs);
  std::cout << RenderReport({report}, ReportLayout::kTable2);
}

// ---- ablate ----

struct AblateArgs {
  std::string base, out_dir, rows = "all";
  bool parallel_rows = false;
};

void RunAblate(const RunConfig& cfg, const AblateArgs& a) {
  AdaptationExperiment ex(LoadExperimentData(cfg), cfg.Experiment());
  if (!a.base.empty()) ex.SetBase(LoadCheckpoint(a.base));
  const std::string dir = a.out_dir.empty() ? cfg.paths.output_dir : a.out_dir;
  fs::create_directories(dir);
  AblationOptions options;
  options.row_dir = (fs::path(dir) / "rows").string();
  options.parallel_rows = a.parallel_rows;
  const EvalReport base = BaseReport(ex, cfg);
  std::vector<std::string> outputs;
  const auto suite = [&](const std::vector<AblationRow>& rows, ReportLayout layout,
                         const std::string& name) {
    std::vector<EvalReport> reports = RunAblationSuite(ex, cfg, rows, options);
    const std::string path = (fs::path(dir) / (name + ".jsonl")).string();
    SaveReports(reports, path);
    const std::string table = RenderReport(reports, layout);
    WriteText((fs::path(dir) / (name + ".txt")).string(), table);
    outputs.push_back(path);
    outputs.push_back((fs::path(dir) / (name + ".txt")).string());
    std::cout << table << "\n";
  };
  SaveReports({base}, (fs::path(dir) / "base.jsonl").string());
  outputs.push_back((fs::path(dir) / "base.jsonl").string());
  if (a.rows == "all" || a.rows == "composition") {
    suite(CompositionRows(), ReportLayout::kTable4, "composition");
  }
  if (a.rows == "all" || a.rows == "items") {
    suite(ItemTypeRows(), ReportLayout::kTable5, "item_types");
  }
  Manifest(cfg, "ablate", outputs);
}

// ---- report ----

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string layout = "TABLE2_STYLE", out;
};

void RunReport(const ReportArgs& a) {
  std::vector<EvalReport> reports;
  for (const std::string& p : a.inputs) {
    for (EvalReport& r : LoadReports(p)) reports.push_back(std::move(r));
  }
  const std::string table = RenderReport(reports, ParseLayout(a.layout));
  if (a.out.empty()) {
    std::cout << table;
  } else {
    WriteText(a.out, table);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dnadapt: text-only domain adaptation with noised transcripts"};
  app.set_version_flag("--version", Version());
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "Key-value run configuration file")
      ->check(CLI::ExistingFile);
  app.add_flag("-q,--quiet", g.quiet, "Only log warnings and errors");
  app.add_flag("-v,--verbose", g.verbose, "Log debug messages");
  std::map<std::string, CLI::Option*> key_options;
  for (const std::string& key : RunConfigKeys()) {
    key_options[key] = app.add_option_function<std::string>(
                              "--" + key, [&g, key](const std::string& v) { g.overrides[key] = v; },
                              "config override")
                           ->group("Config keys");
  }

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a seeded synthetic source/target corpus");
  synth_cmd->add_option("--out-dir", synth.out_dir, "Output directory")->required();
  synth_cmd->add_option("--source-train", synth.options.source_train)->capture_default_str();
  synth_cmd->add_option("--target-train", synth.options.target_train)->capture_default_str();
  synth_cmd->add_option("--validation", synth.options.validation)->capture_default_str();
  synth_cmd->add_option("--test", synth.options.test)->capture_default_str();
  synth_cmd->add_option("--nouns", synth.options.nouns)->capture_default_str();
  synth_cmd->add_option("--verbs", synth.options.verbs)->capture_default_str();
  synth_cmd->add_option("--adjectives", synth.options.adjectives)->capture_default_str();

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate a manifest and write it canonically");
  ingest_cmd->add_option("--input", ingest.input)->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--kind", ingest.kind, "source | target")->capture_default_str();
  ingest_cmd->add_option("--split", ingest.split, "train | validation | test")->capture_default_str();
  ingest_cmd->add_option("--out", ingest.out, "Canonical manifest output");

  NoiseArgs noise;
  auto* noise_cmd = app.add_subcommand("noise", "Apply text noise to every transcript");
  noise_cmd->add_option("--input", noise.input)->required()->check(CLI::ExistingFile);
  noise_cmd->add_option("--kind", noise.kind)->capture_default_str();
  noise_cmd->add_option("--split", noise.split)->capture_default_str();
  noise_cmd->add_option("--out", noise.out);

  QuantizeArgs quantize;
  auto* quantize_cmd =
      app.add_subcommand("quantize", "Projector noise of paired audio, or build a table");
  quantize_cmd->add_option("--input", quantize.input, "Source manifest with surrogate audio");
  quantize_cmd->add_option("--tokens", quantize.tokens, "Token list; writes an embedding table");
  quantize_cmd->add_option("--out", quantize.out);

  ComposeArgs compose;
  auto* compose_cmd = app.add_subcommand("compose", "Compose mixed batches and export them");
  compose_cmd->add_option("--tau", compose.tau, "float or auto");
  compose_cmd->add_option("--batch-size", compose.batch_size)->capture_default_str();
  compose_cmd->add_option("--num-batches", compose.num_batches)->capture_default_str();
  compose_cmd->add_option("--start", compose.start, "First batch index")->capture_default_str();
  compose_cmd->add_option("--export", compose.exported, "Batch manifest output");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train the base model on paired source audio");
  train_cmd->add_option("--out", train.out, "Checkpoint output");

  AdaptArgs adapt;
  auto* adapt_cmd = app.add_subcommand("adapt", "Adapt a base model with the four-view mixture");
  adapt_cmd->add_option("--base", adapt.base)->required()->check(CLI::ExistingFile);
  adapt_cmd->add_option("--out", adapt.out, "Checkpoint output");

  EvaluateArgs evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "WER of a checkpoint on test manifests");
  evaluate_cmd->add_option("--model", evaluate.model)->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--test", evaluate.tests, "Test manifests (default: config paths)");
  evaluate_cmd->add_option("--system", evaluate.system)->capture_default_str();
  evaluate_cmd->add_option("--baseline", evaluate.baseline, "Report to compute Delta against");
  evaluate_cmd->add_option("--hypotheses", evaluate.hypotheses, "Write decoded hypotheses");
  evaluate_cmd->add_option("--out", evaluate.out, "Report output");

  AblateArgs ablate;
  auto* ablate_cmd = app.add_subcommand("ablate", "Run the composition and item-type ablations");
  ablate_cmd->add_option("--base", ablate.base, "Base checkpoint (trained if absent)");
  ablate_cmd->add_option("--out-dir", ablate.out_dir);
  ablate_cmd->add_option("--rows", ablate.rows, "all | composition | items")
      ->check(CLI::IsMember({"all", "composition", "items"}))
      ->capture_default_str();
  ablate_cmd->add_flag("--parallel-rows", ablate.parallel_rows, "Train rows concurrently");

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Render reports as a table");
  report_cmd->add_option("--input", report.inputs)->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--layout", report.layout, "TABLE2_STYLE | TABLE4_STYLE | TABLE5_STYLE")
      ->capture_default_str();
  report_cmd->add_option("--out", report.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto logger = spdlog::stderr_color_mt("dnadapt");
  spdlog::set_default_logger(logger);
  spdlog::set_level(g.quiet ? spdlog::level::warn
                            : g.verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    for (CLI::App* cmd : {compose_cmd, train_cmd, adapt_cmd}) {
      if (cmd->parsed() && key_options.at("seed")->count() == 0) {
        throw Error(ErrorCode::kInvalidConfig, "--seed is required for " + cmd->get_name());
      }
    }
    const RunConfig cfg = ResolveConfig(g);
    if (synth_cmd->parsed()) RunSynth(cfg, synth);
    if (ingest_cmd->parsed()) RunIngest(cfg, ingest);
    if (noise_cmd->parsed()) RunNoise(cfg, noise);
    if (quantize_cmd->parsed()) RunQuantize(cfg, quantize);
    if (compose_cmd->parsed()) RunCompose(cfg, compose);
    if (train_cmd->parsed()) RunTrain(cfg, train);
    if (adapt_cmd->parsed()) RunAdapt(cfg, adapt);
    if (evaluate_cmd->parsed()) RunEvaluate(cfg, evaluate);
    if (ablate_cmd->parsed()) RunAblate(cfg, ablate);
    if (report_cmd->parsed()) RunReport(report);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return ExitStatusFor(e.code());
  } catch (const fs::filesystem_error& e) {
    spdlog::error("{}", e.what());
    return 3;
  }
  return 0;
}
