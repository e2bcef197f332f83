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

#include "claimgraph/pipeline.h"

#include <cstdio>
#include <sstream>

#include "claimgraph/error.h"
#include "claimgraph/text.h"

namespace claimgraph {
namespace {

using ojson = nlohmann::ordered_json;

ojson EntityJson(const EntityRef &e) {
  return {{"entity_id", e.entity_id}, {"label", e.label}, {"types", e.types}};
}

ojson VerdictJson(const NliVerdict &v) {
  return {{"c", v.c}, {"e", v.e}, {"n", v.n},
          {"label", NliLabelName(v.Argmax())}};
}

ojson SectionIds(const std::vector<SectionId> &sections) {
  ojson ids = ojson::array();
  for (SectionId s : sections) ids.push_back(s.value);
  return ids;
}

std::string Fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string SectionList(const std::vector<SectionId> &sections) {
  std::string out;
  for (SectionId s : sections) {
    if (!out.empty()) out += ",";
    out += "s" + std::to_string(s.value);
  }
  return out;
}

}  // namespace

std::string_view ClaimStatusName(ClaimStatus status) {
  switch (status) {
    case ClaimStatus::kOk: return "ok";
    case ClaimStatus::kNoEntities: return "no_entities";
    case ClaimStatus::kNoEvidence: return "no_evidence";
    case ClaimStatus::kLinkerUnavailable: return "linker_unavailable";
    case ClaimStatus::kProviderUnavailable: return "provider_unavailable";
  }
  return "ok";
}

ClaimEvaluation EvaluateClaim(std::string_view claim, const GraphStore &store,
                              const Scorers &scorers,
                              const LinkerConfig &linker_cfg,
                              const EvaluationLimits &limits) {
  if (Trim(claim).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "claim is empty");
  }
  ClaimEvaluation result;
  result.claim = std::string(claim);

  try {
    result.entities = ClaimEntities(claim, scorers.linker, linker_cfg);
  } catch (const Error &e) {
    if (e.code() != ErrorCode::kLinkerUnavailable &&
        e.code() != ErrorCode::kMalformedResponse) {
      throw;
    }
    result.status = ClaimStatus::kLinkerUnavailable;
    result.detail = e.what();
    return result;
  }
  if (result.entities.empty()) {
    result.status = ClaimStatus::kNoEntities;
    return result;
  }

  std::vector<CandidateEvidence> candidates =
      BuildCandidates(result.entities, store, limits.evidence);
  result.total_candidates = candidates.size();
  if (candidates.empty()) {
    result.status = ClaimStatus::kNoEvidence;
    return result;
  }

  try {
    std::vector<RankedCandidate> ranked =
        Rank(claim, std::move(candidates), scorers.sts);
    // The claim is the hypothesis; the evidence is the premise.
    const size_t scored = std::min(std::max<size_t>(limits.nli_top_k, 1),
                                   ranked.size());
    for (size_t i = 0; i < scored; ++i) {
      ranked[i].verdict = scorers.nli.Classify(ranked[i].candidate.text, claim);
    }
    result.best = ranked.front().candidate;
    result.sts = ranked.front().sts;
    result.verdict = ranked.front().verdict;
    if (ranked.size() > limits.top_k) ranked.resize(std::max<size_t>(limits.top_k, 1));
    result.candidates = std::move(ranked);
  } catch (const Error &e) {
    if (e.code() != ErrorCode::kProviderUnavailable &&
        e.code() != ErrorCode::kMalformedResponse &&
        e.code() != ErrorCode::kDimensionMismatch) {
      throw;
    }
    result.status = ClaimStatus::kProviderUnavailable;
    result.detail = e.what();
    result.best.reset();
    result.sts.reset();
    result.verdict.reset();
    result.candidates.clear();
    return result;
  }
  result.status = ClaimStatus::kOk;
  return result;
}

nlohmann::ordered_json ToJson(const ClaimEvaluation &evaluation) {
  ojson out;
  out["claim"] = evaluation.claim;
  out["status"] = ClaimStatusName(evaluation.status);
  if (!evaluation.detail.empty()) out["detail"] = evaluation.detail;
  out["entities"] = ojson::array();
  for (const EntityRef &e : evaluation.entities) {
    out["entities"].push_back(EntityJson(e));
  }
  if (evaluation.best) {
    out["best"] = {{"text", evaluation.best->text},
                   {"sections", SectionIds(evaluation.best->sections)},
                   {"origin", EvidenceOriginName(evaluation.best->origin)},
                   {"hop_count", evaluation.best->hop_count}};
  } else {
    out["best"] = nullptr;
  }
  out["sts"] = evaluation.sts ? ojson(evaluation.sts->value) : ojson(nullptr);
  out["verdict"] =
      evaluation.verdict ? VerdictJson(*evaluation.verdict) : ojson(nullptr);
  out["total_candidates"] = evaluation.total_candidates;
  out["candidates"] = ojson::array();
  for (const RankedCandidate &rc : evaluation.candidates) {
    ojson c = {{"text", rc.candidate.text},
               {"sections", SectionIds(rc.candidate.sections)},
               {"origin", EvidenceOriginName(rc.candidate.origin)},
               {"hop_count", rc.candidate.hop_count},
               {"sts", rc.sts.value}};
    if (rc.verdict) c["verdict"] = VerdictJson(*rc.verdict);
    out["candidates"].push_back(std::move(c));
  }
  return out;
}

std::string Explain(const ClaimEvaluation &evaluation) {
  std::ostringstream out;
  out << "claim: " << evaluation.claim << "\n";
  out << "status: " << ClaimStatusName(evaluation.status) << "\n";
  if (!evaluation.detail.empty()) out << "detail: " << evaluation.detail << "\n";
  out << "entities:";
  if (evaluation.entities.empty()) out << " (none)";
  for (const EntityRef &e : evaluation.entities) {
    out << " " << e.entity_id;
    if (!e.label.empty()) out << " (" << e.label << ")";
  }
  out << "\n";
  if (evaluation.verdict) {
    const NliVerdict &v = *evaluation.verdict;
    out << "verdict: " << NliLabelName(v.Argmax()) << "  c: " << Fixed(v.c, 3)
        << "  e: " << Fixed(v.e, 3) << "  n: " << Fixed(v.n, 3) << "\n";
  }
  out << "candidates (" << evaluation.candidates.size() << " of "
      << evaluation.total_candidates << "):\n";
  for (size_t i = 0; i < evaluation.candidates.size(); ++i) {
    const RankedCandidate &rc = evaluation.candidates[i];
    out << "  " << (i + 1) << ". sts " << Fixed(rc.sts.value) << " ["
        << SectionList(rc.candidate.sections) << "] "
        << EvidenceOriginName(rc.candidate.origin) << ": " << rc.candidate.text
        << "\n";
  }
  return out.str();
}

}  // namespace claimgraph
