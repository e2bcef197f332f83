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

// Claim evaluation: claim -> linked entities -> candidate evidence ->
// similarity ranking -> inference verdict on the best candidate.

#ifndef CLAIMGRAPH_PIPELINE_H_
#define CLAIMGRAPH_PIPELINE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "claimgraph/entity_linking.h"
#include "claimgraph/evidence.h"
#include "claimgraph/graph_store.h"
#include "claimgraph/scoring.h"
#include "json.hpp"

namespace claimgraph {

enum class ClaimStatus {
  kOk,
  kNoEntities,
  kNoEvidence,
  kLinkerUnavailable,
  kProviderUnavailable,
};

std::string_view ClaimStatusName(ClaimStatus status);

struct EvaluationLimits {
  EvidenceLimits evidence;
  size_t top_k = 10;     // ranked candidates kept in the result
  size_t nli_top_k = 1;  // candidates that receive a verdict
};

struct ClaimEvaluation {
  std::string claim;
  std::vector<EntityRef> entities;
  std::optional<CandidateEvidence> best;
  std::optional<StsScore> sts;
  std::optional<NliVerdict> verdict;
  std::vector<RankedCandidate> candidates;  // best first, at most top_k
  size_t total_candidates = 0;
  ClaimStatus status = ClaimStatus::kOk;
  std::string detail;  // error text for the unavailable statuses
};

struct Scorers {
  const EntityLinker &linker;
  const StsScorer &sts;
  const NliScorer &nli;
};

// Never throws for empty results; those degrade to kNoEntities or
// kNoEvidence. Linker and provider failures become statuses as well. An
// empty claim throws InvalidArgument. The store is only read.
ClaimEvaluation EvaluateClaim(std::string_view claim, const GraphStore &store,
                              const Scorers &scorers,
                              const LinkerConfig &linker_cfg,
                              const EvaluationLimits &limits = {});

nlohmann::ordered_json ToJson(const ClaimEvaluation &evaluation);

// Plain-text report: status, entities, ranked candidates, verdict.
std::string Explain(const ClaimEvaluation &evaluation);

}  // namespace claimgraph

#endif  // CLAIMGRAPH_PIPELINE_H_
