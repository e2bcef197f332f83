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

// FEVER-style label evaluation of claim verdicts.

#ifndef CLAIMGRAPH_EVAL_HARNESS_H_
#define CLAIMGRAPH_EVAL_HARNESS_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "claimgraph/pipeline.h"
#include "json.hpp"

namespace claimgraph {

enum class FeverLabel { kSupports = 0, kRefutes = 1, kNotEnoughInfo = 2 };

inline constexpr std::array<FeverLabel, 3> kFeverLabels = {
    FeverLabel::kSupports, FeverLabel::kRefutes, FeverLabel::kNotEnoughInfo};

std::string_view FeverLabelName(FeverLabel label);
// Accepts "SUPPORTS", "REFUTES", "NOT ENOUGH INFO"; throws MalformedRecord.
FeverLabel ParseFeverLabel(std::string_view name);

struct LabeledClaim {
  std::string claim;
  FeverLabel gold = FeverLabel::kNotEnoughInfo;
  std::vector<std::string> evidence_hint;
};

LabeledClaim ParseLabeledClaim(std::string_view line);
std::vector<LabeledClaim> LoadDataset(const std::string &path);

// Optional minimum probabilities; off by default.
struct LabelThresholds {
  std::optional<double> support_min_e;
  std::optional<double> refute_min_c;
};

// Status other than ok maps to NOT ENOUGH INFO; otherwise the verdict's
// argmax (e -> SUPPORTS, c -> REFUTES, n -> NOT ENOUGH INFO), with any
// exact tie for the maximum going to NOT ENOUGH INFO.
FeverLabel MapLabel(const ClaimEvaluation &evaluation,
                    const LabelThresholds &thresholds = {});

struct LabelMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  size_t support = 0;    // gold count
  size_t predicted = 0;  // predicted count
  // Set when the ratio was undefined (zero denominator) and reported as 0.
  bool zero_division = false;
};

using ConfusionMatrix = std::array<std::array<size_t, 3>, 3>;  // [gold][pred]

struct Metrics {
  std::array<LabelMetrics, 3> per_label;  // indexed by FeverLabel
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double weighted_f1 = 0.0;
  double accuracy = 0.0;
  size_t total = 0;
  ConfusionMatrix confusion{};
  bool zero_division_warning = false;
};

Metrics MetricsFromConfusion(const ConfusionMatrix &confusion);

// Throws LengthMismatch when the lists differ in length.
Metrics ScoreDataset(const std::vector<LabeledClaim> &gold,
                     const std::vector<FeverLabel> &predicted);

struct ClaimReport {
  LabeledClaim item;
  FeverLabel predicted = FeverLabel::kNotEnoughInfo;
  ClaimEvaluation evaluation;
};

struct EvalReport {
  Metrics metrics;
  std::vector<ClaimReport> claims;  // dataset order
};

struct EvalOptions {
  LinkerConfig linker;
  EvaluationLimits limits;
  LabelThresholds thresholds;
  int jobs = 1;
};

EvalReport RunEval(const std::vector<LabeledClaim> &dataset,
                   const GraphStore &store, const Scorers &scorers,
                   const EvalOptions &options = {});
EvalReport RunEval(const std::string &dataset_path, const GraphStore &store,
                   const Scorers &scorers, const EvalOptions &options = {});

nlohmann::ordered_json MetricsToJson(const Metrics &metrics);

// One JSON object per claim, then a final {"summary": ...} line.
std::string ReportJsonLines(const EvalReport &report);
void WriteReport(const EvalReport &report, const std::string &path);

// Precision / recall / F1 table with the weighted average and accuracy rows.
std::string FormatSummary(const Metrics &metrics);

}  // namespace claimgraph

#endif  // CLAIMGRAPH_EVAL_HARNESS_H_
