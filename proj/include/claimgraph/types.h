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

#ifndef CLAIMGRAPH_TYPES_H_
#define CLAIMGRAPH_TYPES_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace claimgraph {

template <typename Tag>
struct StrongId {
  uint64_t value = 0;

  friend auto operator<=>(const StrongId &, const StrongId &) = default;
};

struct ArticleTag {};
struct SectionTag {};

using ArticleId = StrongId<ArticleTag>;
using SectionId = StrongId<SectionTag>;

// A news document as delivered by the ingestion format.
struct ArticleRecord {
  std::string url;
  std::string title;
  std::string body;
  std::optional<std::string> published_at;
  std::optional<std::string> author;
  std::optional<std::string> source;

  friend bool operator==(const ArticleRecord &, const ArticleRecord &) = default;
};

// A knowledge-base concept, e.g. a WikiData item.
struct EntityRef {
  std::string entity_id;
  std::string label;
  std::vector<std::string> types;

  friend bool operator==(const EntityRef &, const EntityRef &) = default;
};

// A scored occurrence of an entity in some text. Offsets are UTF-8 byte
// offsets, so text.substr(start, end - start) == surface.
struct EntityMention {
  EntityRef entity;
  std::string surface;
  size_t start = 0;
  size_t end = 0;
  double score = 1.0;
};

}  // namespace claimgraph

template <typename Tag>
struct std::hash<claimgraph::StrongId<Tag>> {
  size_t operator()(const claimgraph::StrongId<Tag> &id) const noexcept {
    return std::hash<uint64_t>()(id.value);
  }
};

#endif  // CLAIMGRAPH_TYPES_H_
