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

#include "claimgraph/graph_store.h"

#include <algorithm>
#include <mutex>

#include "claimgraph/error.h"

namespace claimgraph {

std::vector<EvidencePath::Node> EvidencePath::nodes() const {
  std::vector<Node> out;
  out.reserve(entities.size() + sections.size());
  for (size_t i = 0; i < entities.size(); ++i) {
    out.emplace_back(entities[i]);
    if (i < sections.size()) out.emplace_back(sections[i]);
  }
  return out;
}

UpsertResult GraphStore::UpsertArticle(
    const ArticleRecord &record, const std::vector<std::string> &sections) {
  if (sections.empty()) {
    throw Error(ErrorCode::kEmptySections, "article " + record.url);
  }
  if (record.url.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "article url is empty");
  }
  std::unique_lock lock(mutex_);
  UpsertResult result{};
  long before = static_cast<long>(state_.sections.size());
  auto existing = state_.by_url.find(record.url);
  if (existing != state_.by_url.end()) {
    const ArticleNode &node = state_.articles.at(existing->second);
    bool same = node.record == record && node.sections.size() == sections.size();
    for (size_t i = 0; same && i < sections.size(); ++i) {
      same = state_.sections.at(node.sections[i]).text == sections[i];
    }
    if (same) return {existing->second, UpsertOutcome::kUnchanged, 0};
    RemoveArticleLocked(existing->second);
    result.outcome = UpsertOutcome::kReplaced;
  } else {
    result.outcome = UpsertOutcome::kInserted;
  }

  const ArticleId id{state_.next_article++};
  ArticleNode node{record, {}};
  for (size_t i = 0; i < sections.size(); ++i) {
    const SectionId sid{state_.next_section++};
    state_.sections.emplace(
        sid, SectionNode{id, static_cast<uint32_t>(i), sections[i], {}});
    node.sections.push_back(sid);
  }
  state_.articles.emplace(id, std::move(node));
  state_.by_url[record.url] = id;
  result.id = id;
  result.section_delta = static_cast<long>(state_.sections.size()) - before;
  return result;
}

void GraphStore::RemoveArticleLocked(ArticleId id) {
  auto it = state_.articles.find(id);
  if (it == state_.articles.end()) return;
  for (SectionId sid : it->second.sections) {
    auto section = state_.sections.find(sid);
    if (section == state_.sections.end()) continue;
    for (const auto &[entity_id, score] : section->second.mentions) {
      auto entity = state_.entities.find(entity_id);
      if (entity != state_.entities.end()) entity->second.sections.erase(sid);
    }
    state_.sections.erase(section);
  }
  state_.by_url.erase(it->second.record.url);
  state_.articles.erase(it);
}

void GraphStore::AttachEntity(SectionId section, const EntityMention &mention) {
  if (mention.entity.entity_id.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "entity id is empty");
  }
  if (!(mention.score >= 0.0 && mention.score <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mention score outside [0,1]");
  }
  std::unique_lock lock(mutex_);
  auto sec = state_.sections.find(section);
  if (sec == state_.sections.end()) {
    throw Error(ErrorCode::kUnknownSection,
                "section " + std::to_string(section.value));
  }
  auto [entity, inserted] = state_.entities.try_emplace(
      mention.entity.entity_id, EntityNode{mention.entity, {}});
  if (!inserted) {
    EntityRef &ref = entity->second.ref;
    if (ref.label.empty()) ref.label = mention.entity.label;
    for (const std::string &type : mention.entity.types) {
      if (std::find(ref.types.begin(), ref.types.end(), type) ==
          ref.types.end()) {
        ref.types.push_back(type);
      }
    }
  }
  entity->second.sections.insert(section);
  auto [edge, fresh] =
      sec->second.mentions.try_emplace(mention.entity.entity_id, mention.score);
  if (!fresh) edge->second = std::max(edge->second, mention.score);
}

std::vector<EvidencePath> GraphStore::ShortestEvidencePaths(
    std::span<const EntityRef> entities, int max_hops,
    const PathQueryOptions &options) const {
  if (max_hops < 2) {
    throw Error(ErrorCode::kInvalidArgument, "max_hops must be >= 2");
  }
  // The query is an entity set; duplicates collapse.
  std::vector<EntityRef> query;
  for (const EntityRef &e : entities) {
    auto same = [&](const EntityRef &q) { return q.entity_id == e.entity_id; };
    if (std::none_of(query.begin(), query.end(), same)) query.push_back(e);
  }
  if (query.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "path queries need at least two distinct entities");
  }
  const size_t n = query.size();
  if (max_hops < static_cast<int>(2 * (n - 1))) return {};

  std::shared_lock lock(mutex_);
  std::vector<const EntityNode *> nodes(n, nullptr);
  for (size_t i = 0; i < n; ++i) {
    auto it = state_.entities.find(query[i].entity_id);
    if (it == state_.entities.end()) {
      if (options.strict) {
        throw Error(ErrorCode::kUnknownEntity, query[i].entity_id);
      }
      return {};
    }
    nodes[i] = &it->second;
  }

  // shared[i][j]: sorted sections mentioning both query entities i and j.
  std::vector<std::vector<std::vector<SectionId>>> shared(
      n, std::vector<std::vector<SectionId>>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      std::set_intersection(nodes[i]->sections.begin(), nodes[i]->sections.end(),
                            nodes[j]->sections.begin(), nodes[j]->sections.end(),
                            std::back_inserter(shared[i][j]));
      shared[j][i] = shared[i][j];
    }
  }

  // Canonical section sequence -> smallest entity-id sequence seen for it.
  std::map<std::vector<SectionId>, std::vector<size_t>> found;
  auto entity_less = [&](const std::vector<size_t> &a,
                         const std::vector<size_t> &b) {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(), [&](size_t x, size_t y) {
          return query[x].entity_id < query[y].entity_id;
        });
  };
  auto record = [&](std::vector<size_t> order, std::vector<SectionId> secs) {
    std::vector<SectionId> rsecs(secs.rbegin(), secs.rend());
    std::vector<size_t> rorder(order.rbegin(), order.rend());
    if (rsecs < secs || (rsecs == secs && entity_less(rorder, order))) {
      secs.swap(rsecs);
      order.swap(rorder);
    }
    auto [it, inserted] = found.try_emplace(std::move(secs), order);
    if (!inserted && entity_less(order, it->second)) it->second = order;
  };

  std::vector<size_t> order;
  std::vector<SectionId> used;
  std::vector<bool> visited(n, false);
  auto extend = [&](auto &&self) -> void {
    if (order.size() == n) {
      record(order, used);
      return;
    }
    const size_t last = order.back();
    for (size_t next = 0; next < n; ++next) {
      if (visited[next]) continue;
      for (SectionId s : shared[last][next]) {
        if (std::find(used.begin(), used.end(), s) != used.end()) continue;
        visited[next] = true;
        order.push_back(next);
        used.push_back(s);
        self(self);
        used.pop_back();
        order.pop_back();
        visited[next] = false;
      }
    }
  };
  for (size_t start = 0; start < n; ++start) {
    visited[start] = true;
    order.push_back(start);
    extend(extend);
    order.pop_back();
    visited[start] = false;
  }

  std::vector<EvidencePath> paths;
  paths.reserve(std::min(found.size(), options.cap));
  for (const auto &[secs, ord] : found) {
    if (paths.size() >= options.cap) break;
    EvidencePath path;
    for (size_t idx : ord) path.entities.push_back(nodes[idx]->ref);
    path.sections = secs;
    path.hop_count = static_cast<int>(2 * secs.size());
    paths.push_back(std::move(path));
  }
  // All paths share the minimum length today; the sort keeps the ordering
  // contract (hop_count descending) once longer paths are admitted.
  std::stable_sort(paths.begin(), paths.end(),
                   [](const EvidencePath &a, const EvidencePath &b) {
                     return a.hop_count > b.hop_count;
                   });
  return paths;
}

std::vector<SectionId> GraphStore::SectionsMentioning(
    const EntityRef &entity) const {
  std::shared_lock lock(mutex_);
  auto it = state_.entities.find(entity.entity_id);
  if (it == state_.entities.end()) return {};
  return {it->second.sections.begin(), it->second.sections.end()};
}

GraphStats GraphStore::Stats() const {
  std::shared_lock lock(mutex_);
  GraphStats stats;
  stats.articles = state_.articles.size();
  stats.sections = state_.sections.size();
  stats.entities = state_.entities.size();
  for (const auto &[id, section] : state_.sections) {
    stats.mention_edges += section.mentions.size();
  }
  return stats;
}

std::optional<SectionInfo> GraphStore::GetSection(SectionId id) const {
  std::shared_lock lock(mutex_);
  auto it = state_.sections.find(id);
  if (it == state_.sections.end()) return std::nullopt;
  return SectionInfo{id, it->second.article, it->second.ordinal,
                     it->second.text};
}

std::optional<ArticleId> GraphStore::FindArticle(std::string_view url) const {
  std::shared_lock lock(mutex_);
  auto it = state_.by_url.find(std::string(url));
  if (it == state_.by_url.end()) return std::nullopt;
  return it->second;
}

std::optional<ArticleRecord> GraphStore::GetArticle(ArticleId id) const {
  std::shared_lock lock(mutex_);
  auto it = state_.articles.find(id);
  if (it == state_.articles.end()) return std::nullopt;
  return it->second.record;
}

std::vector<SectionId> GraphStore::SectionsOf(ArticleId id) const {
  std::shared_lock lock(mutex_);
  auto it = state_.articles.find(id);
  if (it == state_.articles.end()) return {};
  return it->second.sections;
}

std::vector<SectionId> GraphStore::AllSections() const {
  std::shared_lock lock(mutex_);
  std::vector<SectionId> out;
  out.reserve(state_.sections.size());
  for (const auto &[id, section] : state_.sections) out.push_back(id);
  return out;
}

std::optional<EntityRef> GraphStore::GetEntity(
    std::string_view entity_id) const {
  std::shared_lock lock(mutex_);
  auto it = state_.entities.find(entity_id);
  if (it == state_.entities.end()) return std::nullopt;
  return it->second.ref;
}

std::optional<double> GraphStore::MentionScore(
    SectionId section, std::string_view entity_id) const {
  std::shared_lock lock(mutex_);
  auto it = state_.sections.find(section);
  if (it == state_.sections.end()) return std::nullopt;
  auto edge = it->second.mentions.find(entity_id);
  if (edge == it->second.mentions.end()) return std::nullopt;
  return edge->second;
}

std::vector<std::string> GraphStore::EntitiesOf(SectionId section) const {
  std::shared_lock lock(mutex_);
  auto it = state_.sections.find(section);
  if (it == state_.sections.end()) return {};
  std::vector<std::string> out;
  for (const auto &[entity_id, score] : it->second.mentions) {
    out.push_back(entity_id);
  }
  return out;
}

}  // namespace claimgraph
