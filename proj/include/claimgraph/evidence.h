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

// Candidate evidence construction: claim entities are joined through the
// graph by minimum-length alternating paths, and each path's sections are
// concatenated into one candidate text. When no path exists, every section
// mentioning at least one claim entity becomes a single-section candidate.

#ifndef CLAIMGRAPH_EVIDENCE_H_
#define CLAIMGRAPH_EVIDENCE_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "claimgraph/entity_linking.h"
#include "claimgraph/graph_store.h"
#include "claimgraph/types.h"

namespace claimgraph {

enum class EvidenceOrigin { kPath, kFallback };

std::string_view EvidenceOriginName(EvidenceOrigin origin);

struct CandidateEvidence {
  std::string text;  // section texts in path order, joined by one space
  std::vector<SectionId> sections;
  std::vector<EntityRef> entities;  // claim entities the candidate covers
  int hop_count = 0;                // 0 for fallback candidates
  EvidenceOrigin origin = EvidenceOrigin::kPath;
};

struct EvidenceLimits {
  // <= 0 selects the minimum path length 2(n-1).
  int max_hops = 0;
  size_t cap = kDefaultPathCap;
};

// Distinct entities linked in the claim, in order of first appearance.
// Propagates LinkerUnavailable.
std::vector<EntityRef> ClaimEntities(std::string_view claim,
                                     const EntityLinker &linker,
                                     const LinkerConfig &cfg);

// Candidates deduplicated by unordered section set, sorted by hop_count
// descending then section-id sequence, truncated at limits.cap. Throws
// EmptyEntitySet.
std::vector<CandidateEvidence> BuildCandidates(
    std::span<const EntityRef> entities, const GraphStore &store,
    const EvidenceLimits &limits = {});

}  // namespace claimgraph

#endif  // CLAIMGRAPH_EVIDENCE_H_
