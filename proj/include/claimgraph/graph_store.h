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

// Embedded property graph with three node kinds (Article, Section, Entity)
// and two relationships:
//
//   (Article)-[:HAS_SECTION {ordinal}]->(Section)
//   (Section)-[:HAS_ENTITY {score}]->(Entity)
//
// The store is safe for many concurrent readers or one writer; every public
// member takes the appropriate lock.

#ifndef CLAIMGRAPH_GRAPH_STORE_H_
#define CLAIMGRAPH_GRAPH_STORE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "claimgraph/types.h"

namespace claimgraph {

inline constexpr size_t kDefaultPathCap = 256;

// Alternating Entity/Section path e1, s_a, e2, ..., s_k, en.
struct EvidencePath {
  std::vector<EntityRef> entities;
  std::vector<SectionId> sections;  // sections[i] joins entities[i], [i+1]
  int hop_count = 0;

  using Node = std::variant<EntityRef, SectionId>;
  std::vector<Node> nodes() const;
};

struct GraphStats {
  size_t articles = 0;
  size_t sections = 0;
  size_t entities = 0;
  size_t mention_edges = 0;

  friend bool operator==(const GraphStats &, const GraphStats &) = default;
};

struct SectionInfo {
  SectionId id;
  ArticleId article;
  uint32_t ordinal = 0;
  std::string text;
};

struct PathQueryOptions {
  size_t cap = kDefaultPathCap;
  // When set, an entity absent from the store raises UnknownEntity instead
  // of contributing no paths.
  bool strict = false;
};

enum class UpsertOutcome { kInserted, kReplaced, kUnchanged };

struct UpsertResult {
  ArticleId id;
  UpsertOutcome outcome;
  // Signed change in the number of section nodes.
  long section_delta = 0;
};

class GraphStore {
 public:
  GraphStore() = default;
  GraphStore(const GraphStore &) = delete;
  GraphStore &operator=(const GraphStore &) = delete;

  // Inserts the article, or replaces the article with the same url together
  // with its sections and their mention edges. Re-upserting an identical
  // record with identical sections is a no-op that keeps existing ids.
  UpsertResult UpsertArticle(const ArticleRecord &record,
                             const std::vector<std::string> &sections);

  // Upserts the Entity node and a HAS_ENTITY edge; a repeated
  // (section, entity) pair keeps the max score.
  void AttachEntity(SectionId section, const EntityMention &mention);

  // All minimum-length alternating paths over every ordering of the given
  // entity set, deduplicated by section-id sequence (a path and its reverse
  // count once), sorted by hop_count descending then section-id sequence,
  // and truncated at options.cap.
  std::vector<EvidencePath> ShortestEvidencePaths(
      std::span<const EntityRef> entities, int max_hops,
      const PathQueryOptions &options = {}) const;

  std::vector<SectionId> SectionsMentioning(const EntityRef &entity) const;

  GraphStats Stats() const;

  std::optional<SectionInfo> GetSection(SectionId id) const;
  std::optional<ArticleId> FindArticle(std::string_view url) const;
  std::optional<ArticleRecord> GetArticle(ArticleId id) const;
  std::vector<SectionId> SectionsOf(ArticleId id) const;
  std::vector<SectionId> AllSections() const;
  std::optional<EntityRef> GetEntity(std::string_view entity_id) const;
  std::optional<double> MentionScore(SectionId section,
                                     std::string_view entity_id) const;
  // Entity ids mentioned by a section, sorted.
  std::vector<std::string> EntitiesOf(SectionId section) const;

  // Versioned, CRC-checked single-file snapshot.
  void SaveSnapshot(const std::string &path) const;
  std::string SerializeSnapshot() const;
  // Replaces the current contents. On error the store is left unchanged.
  GraphStats LoadSnapshot(const std::string &path);
  GraphStats DeserializeSnapshot(std::string_view bytes);

 private:
  struct ArticleNode {
    ArticleRecord record;
    std::vector<SectionId> sections;
  };
  struct SectionNode {
    ArticleId article;
    uint32_t ordinal = 0;
    std::string text;
    std::map<std::string, double, std::less<>> mentions;
  };
  struct EntityNode {
    EntityRef ref;
    std::set<SectionId> sections;
  };
  struct State {
    uint64_t next_article = 1;
    uint64_t next_section = 1;
    std::map<ArticleId, ArticleNode> articles;
    std::unordered_map<std::string, ArticleId> by_url;
    std::map<SectionId, SectionNode> sections;
    std::map<std::string, EntityNode, std::less<>> entities;
  };

  static std::string Serialize(const State &state);
  static State Parse(std::string_view bytes);

  void RemoveArticleLocked(ArticleId id);

  mutable std::shared_mutex mutex_;
  State state_;
};

}  // namespace claimgraph

#endif  // CLAIMGRAPH_GRAPH_STORE_H_
