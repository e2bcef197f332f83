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

#include "claimgraph/evidence.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "claimgraph/error.h"

namespace claimgraph {

std::string_view EvidenceOriginName(EvidenceOrigin origin) {
  return origin == EvidenceOrigin::kPath ? "path" : "fallback";
}

std::vector<EntityRef> ClaimEntities(std::string_view claim,
                                     const EntityLinker &linker,
                                     const LinkerConfig &cfg) {
  std::vector<EntityRef> out;
  for (EntityMention &m : linker.Annotate(claim, cfg)) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const EntityRef &e) {
      return e.entity_id == m.entity.entity_id;
    });
    if (!seen) out.push_back(std::move(m.entity));
  }
  return out;
}

std::vector<CandidateEvidence> BuildCandidates(
    std::span<const EntityRef> entities, const GraphStore &store,
    const EvidenceLimits &limits) {
  std::map<std::string, EntityRef> claim;  // by id, for order independence
  for (const EntityRef &e : entities) claim.try_emplace(e.entity_id, e);
  if (claim.empty()) {
    throw Error(ErrorCode::kEmptyEntitySet, "no claim entities");
  }
  const size_t n = claim.size();

  auto join = [&](const std::vector<SectionId> &sections) {
    std::string text;
    for (SectionId sid : sections) {
      const auto info = store.GetSection(sid);
      if (!info) continue;
      if (!text.empty()) text.push_back(' ');
      text += info->text;
    }
    return text;
  };

  std::vector<CandidateEvidence> out;
  if (n >= 2) {
    std::vector<EntityRef> query;
    for (const auto &[id, e] : claim) query.push_back(e);
    const int max_hops =
        limits.max_hops > 0 ? limits.max_hops : static_cast<int>(2 * (n - 1));
    PathQueryOptions options;
    options.cap = std::numeric_limits<size_t>::max();
    // Paths arrive sorted by section-id sequence, so the first path seen for
    // a section set is its lexicographically smallest ordering.
    std::set<std::vector<SectionId>> seen;
    for (EvidencePath &path :
         store.ShortestEvidencePaths(query, max_hops, options)) {
      std::vector<SectionId> key = path.sections;
      std::sort(key.begin(), key.end());
      if (!seen.insert(std::move(key)).second) continue;
      CandidateEvidence c;
      c.text = join(path.sections);
      if (c.text.empty()) continue;
      c.sections = std::move(path.sections);
      c.entities = std::move(path.entities);
      c.hop_count = path.hop_count;
      c.origin = EvidenceOrigin::kPath;
      out.push_back(std::move(c));
    }
  }

  if (out.empty()) {
    std::map<SectionId, std::vector<EntityRef>> mentioned;
    for (const auto &[id, e] : claim) {
      for (SectionId sid : store.SectionsMentioning(e)) {
        mentioned[sid].push_back(e);
      }
    }
    for (auto &[sid, covered] : mentioned) {
      CandidateEvidence c;
      c.sections = {sid};
      c.text = join(c.sections);
      if (c.text.empty()) continue;
      c.entities = std::move(covered);
      c.hop_count = 0;
      c.origin = EvidenceOrigin::kFallback;
      out.push_back(std::move(c));
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const CandidateEvidence &a, const CandidateEvidence &b) {
                     if (a.hop_count != b.hop_count) {
                       return a.hop_count > b.hop_count;
                     }
                     return a.sections < b.sections;
                   });
  if (out.size() > limits.cap) out.resize(limits.cap);
  return out;
}

}  // namespace claimgraph
