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

#include <boost/rational.hpp>
#include <numeric>
#include <random>
#include <sstream>

#include "claimgraph/error.h"
#include "doctest.h"
#include "testing.h"

namespace claimgraph {
namespace {

using Q = boost::rational<long long>;

struct OracleLabel {
  Q precision, recall, f1;
};

// Exact per-label metrics straight from the definitions.
struct Oracle {
  std::array<OracleLabel, 3> label;
  Q weighted_p, weighted_r, weighted_f1, accuracy;

  explicit Oracle(const ConfusionMatrix &m) {
    long long total = 0, trace = 0;
    for (int g = 0; g < 3; ++g) {
      for (int p = 0; p < 3; ++p) total += static_cast<long long>(m[g][p]);
      trace += static_cast<long long>(m[g][g]);
    }
    for (int k = 0; k < 3; ++k) {
      long long row = 0, col = 0;
      for (int j = 0; j < 3; ++j) {
        row += static_cast<long long>(m[k][j]);
        col += static_cast<long long>(m[j][k]);
      }
      const long long tp = static_cast<long long>(m[k][k]);
      OracleLabel &l = label[k];
      l.precision = col ? Q(tp, col) : Q(0);
      l.recall = row ? Q(tp, row) : Q(0);
      l.f1 = (l.precision + l.recall) != Q(0)
                 ? 2 * l.precision * l.recall / (l.precision + l.recall)
                 : Q(0);
      weighted_p += Q(row, total) * l.precision;
      weighted_r += Q(row, total) * l.recall;
      weighted_f1 += Q(row, total) * l.f1;
    }
    accuracy = Q(trace, total);
  }
};

double D(Q q) { return boost::rational_cast<double>(q); }

constexpr double kExact = 1e-12;

std::pair<std::vector<LabeledClaim>, std::vector<FeverLabel>> Expand(
    const ConfusionMatrix &m) {
  std::vector<LabeledClaim> gold;
  std::vector<FeverLabel> pred;
  for (int g = 0; g < 3; ++g) {
    for (int p = 0; p < 3; ++p) {
      for (size_t i = 0; i < m[g][p]; ++i) {
        LabeledClaim c;
        c.claim = "c";
        c.gold = static_cast<FeverLabel>(g);
        gold.push_back(c);
        pred.push_back(static_cast<FeverLabel>(p));
      }
    }
  }
  return {gold, pred};
}

void CheckAgainstOracle(const Metrics &got, const ConfusionMatrix &m) {
  const Oracle o(m);
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(got.per_label[k].precision - D(o.label[k].precision)) <= kExact);
    CHECK(std::abs(got.per_label[k].recall - D(o.label[k].recall)) <= kExact);
    CHECK(std::abs(got.per_label[k].f1 - D(o.label[k].f1)) <= kExact);
  }
  CHECK(std::abs(got.weighted_precision - D(o.weighted_p)) <= kExact);
  CHECK(std::abs(got.weighted_recall - D(o.weighted_r)) <= kExact);
  CHECK(std::abs(got.weighted_f1 - D(o.weighted_f1)) <= kExact);
  CHECK(std::abs(got.accuracy - D(o.accuracy)) <= kExact);
  CHECK(got.confusion == m);
}

ClaimEvaluation WithVerdict(double c, double e, double n) {
  ClaimEvaluation ev;
  ev.status = ClaimStatus::kOk;
  ev.verdict = NliVerdict{c, e, n};
  return ev;
}

TEST_SUITE("eval_harness") {

TEST_CASE("hand confusion matrix matches the rational oracle") {
  const ConfusionMatrix m = {{{8, 1, 1}, {2, 7, 1}, {1, 1, 8}}};
  const auto [gold, pred] = Expand(m);
  const Metrics got = ScoreDataset(gold, pred);
  CheckAgainstOracle(got, m);
  // Spot values worked by hand: SUPPORTS P = 8/11, R = 8/10.
  CHECK(std::abs(got.per_label[0].precision - 8.0 / 11) <= kExact);
  CHECK(std::abs(got.per_label[0].recall - 0.8) <= kExact);
  CHECK(std::abs(got.accuracy - 23.0 / 30) <= kExact);
  CHECK(got.total == 30);
  CHECK_FALSE(got.zero_division_warning);
  CheckAgainstOracle(MetricsFromConfusion(m), m);
}

TEST_CASE("all correct") {
  const ConfusionMatrix m = {{{3, 0, 0}, {0, 3, 0}, {0, 0, 3}}};
  const auto [gold, pred] = Expand(m);
  const Metrics got = ScoreDataset(gold, pred);
  CHECK(got.accuracy == 1.0);
  for (const auto &l : got.per_label) CHECK(l.f1 == 1.0);
}

TEST_CASE("zero division is flagged") {
  const ConfusionMatrix m = {{{2, 1, 0}, {0, 0, 0}, {0, 0, 0}}};
  const auto [gold, pred] = Expand(m);
  const Metrics got = ScoreDataset(gold, pred);
  CHECK(got.per_label[1].precision == 0.0);
  CHECK(got.per_label[1].zero_division);  // recall has no gold support
  CHECK(got.per_label[2].precision == 0.0);
  CHECK(got.per_label[2].zero_division);
  CHECK_FALSE(got.per_label[0].zero_division);
  CHECK(got.zero_division_warning);
  CheckAgainstOracle(got, m);
}

TEST_CASE("random matrices match the oracle") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<size_t> cell(0, 9);
  for (int round = 0; round < 200; ++round) {
    ConfusionMatrix m{};
    for (auto &row : m) {
      for (auto &v : row) v = cell(rng);
    }
    m[0][0] += 1;
    CheckAgainstOracle(MetricsFromConfusion(m), m);
  }
}

TEST_CASE("score dataset is order invariant and checks lengths") {
  const ConfusionMatrix m = {{{8, 1, 1}, {2, 7, 1}, {1, 1, 8}}};
  auto [gold, pred] = Expand(m);
  const Metrics a = ScoreDataset(gold, pred);
  std::vector<size_t> idx(gold.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), std::mt19937_64(5));
  std::vector<LabeledClaim> g2;
  std::vector<FeverLabel> p2;
  for (size_t i : idx) {
    g2.push_back(gold[i]);
    p2.push_back(pred[i]);
  }
  const Metrics b = ScoreDataset(g2, p2);
  CHECK(MetricsToJson(a).dump() == MetricsToJson(b).dump());
  pred.pop_back();
  try {
    ScoreDataset(gold, pred);
    FAIL("expected LengthMismatch");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kLengthMismatch);
  }
}

TEST_CASE("map label") {
  CHECK(MapLabel(WithVerdict(0.951, 0.002, 0.047)) == FeverLabel::kRefutes);
  CHECK(MapLabel(WithVerdict(0.014, 0.958, 0.028)) == FeverLabel::kSupports);
  CHECK(MapLabel(WithVerdict(0.1, 0.2, 0.7)) == FeverLabel::kNotEnoughInfo);
  CHECK(MapLabel(WithVerdict(1.0 / 3, 1.0 / 3, 1.0 / 3)) == FeverLabel::kNotEnoughInfo);
  CHECK(MapLabel(WithVerdict(0.45, 0.45, 0.1)) == FeverLabel::kNotEnoughInfo);
  ClaimEvaluation none;
  none.status = ClaimStatus::kNoEvidence;
  CHECK(MapLabel(none) == FeverLabel::kNotEnoughInfo);
  none.status = ClaimStatus::kOk;
  CHECK(MapLabel(none) == FeverLabel::kNotEnoughInfo);

  LabelThresholds t;
  t.support_min_e = 0.9;
  t.refute_min_c = 0.96;
  CHECK(MapLabel(WithVerdict(0.014, 0.958, 0.028), t) == FeverLabel::kSupports);
  CHECK(MapLabel(WithVerdict(0.2, 0.6, 0.2), t) == FeverLabel::kNotEnoughInfo);
  CHECK(MapLabel(WithVerdict(0.951, 0.002, 0.047), t) == FeverLabel::kNotEnoughInfo);
}

TEST_CASE("label names and dataset parsing") {
  for (FeverLabel l : kFeverLabels) CHECK(ParseFeverLabel(FeverLabelName(l)) == l);
  CHECK_THROWS_AS(ParseFeverLabel("MAYBE"), Error);
  const auto c = ParseLabeledClaim(
      R"({"claim":"x","gold":"NOT ENOUGH INFO","evidence_hint":["u1"]})");
  CHECK(c.gold == FeverLabel::kNotEnoughInfo);
  CHECK(c.evidence_hint == std::vector<std::string>{"u1"});
  CHECK_THROWS_AS(ParseLabeledClaim(R"({"claim":"x"})"), Error);
  CHECK_THROWS_AS(ParseLabeledClaim(R"({"claim":"","gold":"REFUTES"})"), Error);
}

TEST_CASE("run eval over the scenario fixtures") {
  testing::Scenario sc;
  sc.LoadScenario1();
  sc.LoadScenario2();
  std::vector<LabeledClaim> data = {
      {testing::kClaim1a, FeverLabel::kSupports, {}},
      {testing::kClaim1b, FeverLabel::kRefutes, {}},
      {"Nobody known is named here.", FeverLabel::kNotEnoughInfo, {}},
      {testing::kClaim2, FeverLabel::kSupports, {}},
  };
  const EvalReport report = RunEval(data, sc.store, sc.scorers());
  CHECK(report.metrics.accuracy == 1.0);
  REQUIRE(report.claims.size() == 4);
  CHECK(report.claims[2].evaluation.status == ClaimStatus::kNoEntities);

  EvalOptions parallel;
  parallel.jobs = 4;
  const EvalReport again = RunEval(data, sc.store, sc.scorers(), parallel);
  CHECK(ReportJsonLines(again) == ReportJsonLines(report));

  std::reverse(data.begin(), data.end());
  const EvalReport reversed = RunEval(data, sc.store, sc.scorers());
  CHECK(MetricsToJson(reversed.metrics).dump() ==
        MetricsToJson(report.metrics).dump());

  const std::string lines = ReportJsonLines(report);
  std::istringstream in(lines);
  std::vector<nlohmann::json> parsed;
  for (std::string line; std::getline(in, line);) {
    parsed.push_back(nlohmann::json::parse(line));
  }
  REQUIRE(parsed.size() == 5);
  CHECK(parsed[0]["predicted"] == "SUPPORTS");
  CHECK(parsed[2]["nei_cause"] == "no_entities");
  CHECK(parsed[0]["nei_cause"].is_null());
  CHECK(parsed[4].contains("summary"));

  const std::string summary = FormatSummary(report.metrics);
  CHECK(summary.find("SUPPORTS") != std::string::npos);
  CHECK(summary.find("accuracy") != std::string::npos);
}

}  // TEST_SUITE

}  // namespace
}  // namespace claimgraph
