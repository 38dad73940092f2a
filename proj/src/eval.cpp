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

#include "dnadapt/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dnadapt/error.hpp"
#include "dnadapt/text.hpp"
#include "json.hpp"

namespace dnadapt {

std::vector<std::string> NormalizeForWer(std::string_view s) {
  return SplitWords(AsciiLower(s));
}

namespace {

struct Cell {
  int cost = 0;
  int subs = 0;
  int dels = 0;
  int ins = 0;

  bool Better(const Cell& o) const { return cost < o.cost || (cost == o.cost && subs > o.subs); }
};

}  // namespace

WerResult Wer(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  if (ref.empty()) throw Error(ErrorCode::kEmptyReference, "reference has no words");
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<Cell> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = {static_cast<int>(j), 0, 0, static_cast<int>(j)};
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = {static_cast<int>(i), 0, static_cast<int>(i), 0};
    for (std::size_t j = 1; j <= m; ++j) {
      Cell best = prev[j - 1];
      if (ref[i - 1] != hyp[j - 1]) {
        ++best.cost;
        ++best.subs;
      }
      Cell del = prev[j];
      ++del.cost;
      ++del.dels;
      if (del.Better(best)) best = del;
      Cell ins = cur[j - 1];
      ++ins.cost;
      ++ins.ins;
      if (ins.Better(best)) best = ins;
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  const Cell& c = prev[m];
  WerResult r;
  r.substitutions = c.subs;
  r.deletions = c.dels;
  r.insertions = c.ins;
  r.reference_words = static_cast<int>(n);
  r.wer = static_cast<double>(c.cost) / static_cast<double>(n);
  return r;
}

WerResult Wer(std::string_view reference, std::string_view hypothesis) {
  return Wer(NormalizeForWer(reference), NormalizeForWer(hypothesis));
}

double CorpusWer::Percent() const {
  if (reference_words == 0) throw Error(ErrorCode::kEmptyReference, "no reference words");
  return 100.0 * static_cast<double>(errors) / static_cast<double>(reference_words);
}

double Delta(double base_wer, double adapted_wer) {
  if (!(base_wer > 0.0)) throw Error(ErrorCode::kDivisionByZero, "delta needs base WER > 0");
  return (base_wer - adapted_wer) / base_wer * 100.0;
}

double DeltaDisplay(double base_wer, double adapted_wer) {
  return RoundDecimals(Delta(base_wer, adapted_wer), 1);
}

double Perplexity(const ModelState& model, const DomainDataset& dataset) {
  if (dataset.split != Split::kValidation) {
    throw Error(ErrorCode::kInvalidArgument, "perplexity expects a validation split");
  }
  if (dataset.empty()) throw Error(ErrorCode::kEmptyDataset, dataset.name);
  constexpr std::size_t kChunk = 32;
  LossTotals total;
  Batch chunk;
  const auto flush = [&] {
    const LossTotals t = TargetLoss(model, chunk);
    total.sum += t.sum;
    total.count += t.count;
    chunk.clear();
  };
  for (const Utterance& u : dataset.utterances) {
    if (!u.surrogate_audio) throw Error(ErrorCode::kMissingAudio, u.id);
    const RenderedPrompt p = Render(*u.surrogate_audio, u.text, ItemVariant::kNoise, model.spec.prompt);
    chunk.push_back({View::kAudio, u.id, p.input_region, p.target_region});
    if (chunk.size() == kChunk) flush();
  }
  if (!chunk.empty()) flush();
  return std::exp(total.sum / static_cast<double>(total.count));
}

void PerplexityMonitor::Attach(TrainLog& log) {
  log.monitor_every = every_;
  log.monitor = [this](const ModelState& m) {
    series_.push_back({m.step_count, Perplexity(m, validation_)});
  };
}

std::string PerplexityMonitor::Serialize() const {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  for (const Point& p : series_) out << p.step << '\t' << p.perplexity << '\n';
  return out.str();
}

void AttachBaseline(EvalReport& report, const EvalReport& baseline) {
  for (DomainScore& s : report.per_domain) {
    const auto it = std::find_if(baseline.per_domain.begin(), baseline.per_domain.end(),
                                 [&](const DomainScore& b) { return b.domain == s.domain; });
    if (it == baseline.per_domain.end()) {
      throw Error(ErrorCode::kInconsistentDomains, "baseline lacks domain " + s.domain);
    }
    s.delta = Delta(it->wer, s.wer);
  }
}

std::string LayoutName(ReportLayout layout) {
  switch (layout) {
    case ReportLayout::kTable2: return "TABLE2_STYLE";
    case ReportLayout::kTable4: return "TABLE4_STYLE";
    case ReportLayout::kTable5: return "TABLE5_STYLE";
  }
  return "TABLE2_STYLE";
}

ReportLayout ParseLayout(const std::string& name) {
  for (ReportLayout l : {ReportLayout::kTable2, ReportLayout::kTable4, ReportLayout::kTable5}) {
    if (LayoutName(l) == name) return l;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown report layout '" + name + "'");
}

namespace {

std::string Fixed(double v, int decimals) {
  std::ostringstream out;
  out.precision(decimals);
  out << std::fixed << RoundDecimals(v, decimals);
  std::string s = out.str();
  if (s == "-0.0" || s == "-0.00") s.erase(0, 1);
  return s;
}

std::size_t DisplayWidth(const std::string& s) { return DecodeUtf8(s).size(); }

std::string StrategyName(ItemVariant v) {
  switch (v) {
    case ItemVariant::kNoise: return "Noise";
    case ItemVariant::kEcho: return "Echoing";
    case ItemVariant::kEmpty: return "Empty";
    case ItemVariant::kNoPrompt: return "No prompt";
  }
  return "";
}

std::string ItemTypeName(ItemVariant v) {
  switch (v) {
    case ItemVariant::kNoise: return "Prompt(noise(t), t)";
    case ItemVariant::kEcho: return "Prompt(t, t)";
    case ItemVariant::kEmpty: return "Prompt(∅, t)";
    case ItemVariant::kNoPrompt: return "t";
  }
  return "";
}

}  // namespace

std::string RenderReport(const std::vector<EvalReport>& reports, ReportLayout layout) {
  if (reports.empty()) return {};
  std::set<std::string> domains;
  for (const DomainScore& s : reports.front().per_domain) domains.insert(s.domain);
  for (const EvalReport& r : reports) {
    std::set<std::string> mine;
    for (const DomainScore& s : r.per_domain) mine.insert(s.domain);
    if (mine != domains || mine.size() != r.per_domain.size()) {
      throw Error(ErrorCode::kInconsistentDomains,
                  "report '" + r.system_name + "' covers a different domain set");
    }
  }

  std::vector<std::string> header;
  std::size_t lead = 0;  // left-aligned leading columns
  switch (layout) {
    case ReportLayout::kTable2:
      header = {"System"};
      break;
    case ReportLayout::kTable4:
      header = {"sigma_a", "sigma_ta", "sigma_t"};
      break;
    case ReportLayout::kTable5:
      header = {"Strategy", "Batch item type"};
      break;
  }
  lead = header.size();
  for (const std::string& d : domains) {
    std::string wer_head = d + " WER";
    const auto tau = reports.front().metadata.find("tau." + d);
    if (tau != reports.front().metadata.end()) wer_head += " (tau=" + tau->second + ")";
    header.push_back(wer_head);
    header.push_back("Delta");
  }

  std::vector<std::vector<std::string>> rows{header};
  for (const EvalReport& r : reports) {
    std::vector<std::string> row;
    switch (layout) {
      case ReportLayout::kTable2:
        row.push_back(r.system_name);
        break;
      case ReportLayout::kTable4:
        if (!r.active_views) {
          throw Error(ErrorCode::kInvalidArgument, r.system_name + ": no active views recorded");
        }
        for (bool on : *r.active_views) row.push_back(on ? "x" : "");
        break;
      case ReportLayout::kTable5:
        if (!r.item_type) {
          throw Error(ErrorCode::kInvalidArgument, r.system_name + ": no item type recorded");
        }
        row.push_back(StrategyName(*r.item_type));
        row.push_back(ItemTypeName(*r.item_type));
        break;
    }
    for (const std::string& d : domains) {
      const auto it = std::find_if(r.per_domain.begin(), r.per_domain.end(),
                                   [&](const DomainScore& s) { return s.domain == d; });
      row.push_back(Fixed(it->wer, 2));
      row.push_back(it->delta ? Fixed(*it->delta, 1) : "-");
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], DisplayWidth(row[c]));
  }
  const auto line = [&](const std::vector<std::string>& row) {
    std::string out;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string pad(width[c] - DisplayWidth(row[c]), ' ');
      if (c > 0) out += c == lead ? " | " : "  ";
      out += c < lead ? row[c] + pad : pad + row[c];
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::string out = line(rows[0]);
  std::size_t total = 0;
  for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c == 0 ? 0 : c == lead ? 3 : 2);
  out += std::string(total, '-') + "\n";
  for (std::size_t r = 1; r < rows.size(); ++r) out += line(rows[r]);
  return out;
}

std::string SerializeReport(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["system"] = report.system_name;
  auto& domains = j["per_domain"] = nlohmann::ordered_json::array();
  for (const DomainScore& s : report.per_domain) {
    nlohmann::ordered_json d;
    d["domain"] = s.domain;
    d["wer"] = s.wer;
    d["delta"] = s.delta ? nlohmann::ordered_json(*s.delta) : nlohmann::ordered_json(nullptr);
    domains.push_back(std::move(d));
  }
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.metadata) j["metadata"][k] = v;
  if (report.active_views) {
    j["active_views"] = {(*report.active_views)[0], (*report.active_views)[1],
                         (*report.active_views)[2]};
  }
  if (report.item_type) j["item_type"] = VariantName(*report.item_type);
  return j.dump();
}

EvalReport ParseReport(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    EvalReport r;
    r.system_name = j.at("system").get<std::string>();
    for (const auto& d : j.at("per_domain")) {
      DomainScore s;
      s.domain = d.at("domain").get<std::string>();
      s.wer = d.at("wer").get<double>();
      if (d.contains("delta") && !d.at("delta").is_null()) s.delta = d.at("delta").get<double>();
      r.per_domain.push_back(std::move(s));
    }
    for (const auto& [k, v] : j.at("metadata").items()) r.metadata[k] = v.get<std::string>();
    if (j.contains("active_views")) {
      const auto& a = j.at("active_views");
      r.active_views = std::array<bool, 3>{a.at(0).get<bool>(), a.at(1).get<bool>(),
                                           a.at(2).get<bool>()};
    }
    if (j.contains("item_type")) r.item_type = ParseVariant(j.at("item_type").get<std::string>());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("report record: ") + e.what());
  }
}

void SaveReports(const std::vector<EvalReport>& reports, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write report " + path);
  for (const EvalReport& r : reports) out << SerializeReport(r) << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

std::vector<EvalReport> LoadReports(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open report " + path);
  std::vector<EvalReport> reports;
  std::string line;
  while (std::getline(in, line)) {
    if (!Trim(line).empty()) reports.push_back(ParseReport(line));
  }
  return reports;
}

}  // namespace dnadapt
