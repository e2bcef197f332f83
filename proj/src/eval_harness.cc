// Copyright 2026 The claimgraph Authors.
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

#include "claimgraph/eval_harness.h"

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "claimgraph/error.h"
#include "claimgraph/text.h"

namespace claimgraph {
namespace {

using ojson = nlohmann::ordered_json;

size_t Index(FeverLabel label) { return static_cast<size_t>(label); }

double Ratio(size_t num, size_t den, bool *undefined) {
  if (den == 0) {
    *undefined = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::string_view FeverLabelName(FeverLabel label) {
  switch (label) {
    case FeverLabel::kSupports: return "SUPPORTS";
    case FeverLabel::kRefutes: return "REFUTES";
    case FeverLabel::kNotEnoughInfo: return "NOT ENOUGH INFO";
  }
  return "NOT ENOUGH INFO";
}

FeverLabel ParseFeverLabel(std::string_view name) {
  for (FeverLabel label : kFeverLabels) {
    if (FeverLabelName(label) == name) return label;
  }
  throw Error(ErrorCode::kMalformedRecord,
              "unknown label '" + std::string(name) + "'");
}

LabeledClaim ParseLabeledClaim(std::string_view line) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorCode::kMalformedRecord, e.what());
  }
  if (!obj.is_object() || !obj.contains("claim") || !obj["claim"].is_string() ||
      !obj.contains("gold") || !obj["gold"].is_string()) {
    throw Error(ErrorCode::kMalformedRecord, "claim and gold are required");
  }
  LabeledClaim item;
  item.claim = obj["claim"].get<std::string>();
  if (Trim(item.claim).empty()) {
    throw Error(ErrorCode::kMalformedRecord, "claim is empty");
  }
  item.gold = ParseFeverLabel(obj["gold"].get<std::string>());
  if (auto hint = obj.find("evidence_hint");
      hint != obj.end() && !hint->is_null()) {
    if (!hint->is_array()) {
      throw Error(ErrorCode::kMalformedRecord, "evidence_hint must be a list");
    }
    for (const auto &url : *hint) {
      if (!url.is_string()) {
        throw Error(ErrorCode::kMalformedRecord, "evidence_hint entries are urls");
      }
      item.evidence_hint.push_back(url.get<std::string>());
    }
  }
  return item;
}

std::vector<LabeledClaim> LoadDataset(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  std::vector<LabeledClaim> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    try {
      out.push_back(ParseLabeledClaim(line));
    } catch (const Error &e) {
      throw Error(ErrorCode::kMalformedRecord,
                  path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "read failed: " + path);
  return out;
}

FeverLabel MapLabel(const ClaimEvaluation &evaluation,
                    const LabelThresholds &thresholds) {
  if (evaluation.status != ClaimStatus::kOk || !evaluation.verdict) {
    return FeverLabel::kNotEnoughInfo;
  }
  const NliVerdict &v = *evaluation.verdict;
  if (v.e > v.c && v.e > v.n) {
    if (thresholds.support_min_e && v.e < *thresholds.support_min_e) {
      return FeverLabel::kNotEnoughInfo;
    }
    return FeverLabel::kSupports;
  }
  if (v.c > v.e && v.c > v.n) {
    if (thresholds.refute_min_c && v.c < *thresholds.refute_min_c) {
      return FeverLabel::kNotEnoughInfo;
    }
    return FeverLabel::kRefutes;
  }
  return FeverLabel::kNotEnoughInfo;
}

Metrics MetricsFromConfusion(const ConfusionMatrix &confusion) {
  Metrics m;
  m.confusion = confusion;
  size_t correct = 0;
  for (size_t g = 0; g < 3; ++g) {
    for (size_t p = 0; p < 3; ++p) {
      m.total += confusion[g][p];
      m.per_label[g].support += confusion[g][p];
      m.per_label[p].predicted += confusion[g][p];
    }
    correct += confusion[g][g];
  }
  for (size_t k = 0; k < 3; ++k) {
    LabelMetrics &lm = m.per_label[k];
    const size_t tp = confusion[k][k];
    lm.precision = Ratio(tp, lm.predicted, &lm.zero_division);
    lm.recall = Ratio(tp, lm.support, &lm.zero_division);
    const double sum = lm.precision + lm.recall;
    lm.f1 = sum > 0.0 ? 2.0 * lm.precision * lm.recall / sum : 0.0;
    m.zero_division_warning = m.zero_division_warning || lm.zero_division;
  }
  bool undefined = false;
  m.accuracy = Ratio(correct, m.total, &undefined);
  if (m.total > 0) {
    const double total = static_cast<double>(m.total);
    for (const LabelMetrics &lm : m.per_label) {
      const double w = static_cast<double>(lm.support);
      m.weighted_precision += w * lm.precision;
      m.weighted_recall += w * lm.recall;
      m.weighted_f1 += w * lm.f1;
    }
    m.weighted_precision /= total;
    m.weighted_recall /= total;
    m.weighted_f1 /= total;
  }
  return m;
}

Metrics ScoreDataset(const std::vector<LabeledClaim> &gold,
                     const std::vector<FeverLabel> &predicted) {
  if (gold.size() != predicted.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(gold.size()) + " gold vs " +
                    std::to_string(predicted.size()) + " predicted");
  }
  ConfusionMatrix confusion{};
  for (size_t i = 0; i < gold.size(); ++i) {
    ++confusion[Index(gold[i].gold)][Index(predicted[i])];
  }
  return MetricsFromConfusion(confusion);
}

EvalReport RunEval(const std::vector<LabeledClaim> &dataset,
                   const GraphStore &store, const Scorers &scorers,
                   const EvalOptions &options) {
  EvalReport report;
  report.claims.resize(dataset.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (size_t i = next++; i < dataset.size(); i = next++) {
      try {
        ClaimReport &r = report.claims[i];
        r.item = dataset[i];
        r.evaluation = EvaluateClaim(dataset[i].claim, store, scorers,
                                     options.linker, options.limits);
        r.predicted = MapLabel(r.evaluation, options.thresholds);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (std::thread &t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<FeverLabel> predicted;
  predicted.reserve(report.claims.size());
  for (const ClaimReport &r : report.claims) predicted.push_back(r.predicted);
  report.metrics = ScoreDataset(dataset, predicted);
  return report;
}

EvalReport RunEval(const std::string &dataset_path, const GraphStore &store,
                   const Scorers &scorers, const EvalOptions &options) {
  return RunEval(LoadDataset(dataset_path), store, scorers, options);
}

nlohmann::ordered_json MetricsToJson(const Metrics &metrics) {
  ojson out;
  ojson labels = ojson::object();
  for (FeverLabel label : kFeverLabels) {
    const LabelMetrics &lm = metrics.per_label[Index(label)];
    labels[std::string(FeverLabelName(label))] = {
        {"precision", lm.precision}, {"recall", lm.recall}, {"f1", lm.f1},
        {"support", lm.support},     {"predicted", lm.predicted},
        {"zero_division", lm.zero_division}};
  }
  out["labels"] = std::move(labels);
  out["weighted_average"] = {{"precision", metrics.weighted_precision},
                             {"recall", metrics.weighted_recall},
                             {"f1", metrics.weighted_f1}};
  out["accuracy"] = metrics.accuracy;
  out["total"] = metrics.total;
  out["confusion"] = metrics.confusion;
  out["zero_division_warning"] = metrics.zero_division_warning;
  return out;
}

std::string ReportJsonLines(const EvalReport &report) {
  std::string out;
  for (const ClaimReport &r : report.claims) {
    const ClaimEvaluation &ev = r.evaluation;
    ojson line;
    line["claim"] = r.item.claim;
    line["gold"] = FeverLabelName(r.item.gold);
    line["predicted"] = FeverLabelName(r.predicted);
    line["status"] = ClaimStatusName(ev.status);
    // Distinguishes a neutral verdict from missing entities or evidence.
    std::string cause;
    if (r.predicted == FeverLabel::kNotEnoughInfo) {
      cause = ev.status == ClaimStatus::kOk ? "neutral_verdict"
                                            : std::string(ClaimStatusName(ev.status));
    }
    line["nei_cause"] = cause.empty() ? ojson(nullptr) : ojson(cause);
    ojson sections = ojson::array();
    if (ev.best) {
      for (SectionId s : ev.best->sections) sections.push_back(s.value);
    }
    line["best_sections"] = std::move(sections);
    line["sts"] = ev.sts ? ojson(ev.sts->value) : ojson(nullptr);
    if (ev.verdict) {
      line["verdict"] = {{"c", ev.verdict->c}, {"e", ev.verdict->e},
                         {"n", ev.verdict->n}};
    } else {
      line["verdict"] = nullptr;
    }
    out += line.dump() + "\n";
  }
  ojson summary;
  summary["summary"] = MetricsToJson(report.metrics);
  out += summary.dump() + "\n";
  return out;
}

void WriteReport(const EvalReport &report, const std::string &path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  out << ReportJsonLines(report);
  out.close();
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed: " + path);
}

std::string FormatSummary(const Metrics &metrics) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-24s %9s %9s %9s %8s\n", "Label",
                "Precision", "Recall", "F1-score", "Support");
  out << line;
  for (FeverLabel label : {FeverLabel::kNotEnoughInfo, FeverLabel::kRefutes,
                           FeverLabel::kSupports}) {
    const LabelMetrics &lm = metrics.per_label[Index(label)];
    std::snprintf(line, sizeof(line), "%-24s %9.2f %9.2f %9.2f %8zu%s\n",
                  std::string(FeverLabelName(label)).c_str(), lm.precision,
                  lm.recall, lm.f1, lm.support, lm.zero_division ? " *" : "");
    out << line;
  }
  std::snprintf(line, sizeof(line), "%-24s %9.2f %9.2f %9.2f %8zu\n",
                "Weighted Average", metrics.weighted_precision,
                metrics.weighted_recall, metrics.weighted_f1, metrics.total);
  out << line;
  std::snprintf(line, sizeof(line), "%-24s %9.2f\n", "Label accuracy",
                metrics.accuracy);
  out << line;
  if (metrics.zero_division_warning) {
    out << "* undefined ratio reported as 0\n";
  }
  return out.str();
}

}  // namespace claimgraph
