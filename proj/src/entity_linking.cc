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

#include "claimgraph/entity_linking.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "claimgraph/error.h"
#include "claimgraph/text.h"
#include "http_util.h"
#include "httplib.h"
#include "json.hpp"

namespace claimgraph {
namespace {

using json = nlohmann::json;

// Keeps the longest spans first, leftmost on ties, dropping anything that
// overlaps an accepted span; returns survivors ordered by start.
std::vector<EntityMention> ResolveOverlaps(std::vector<EntityMention> found) {
  std::stable_sort(found.begin(), found.end(),
                   [](const EntityMention &a, const EntityMention &b) {
                     const size_t la = a.end - a.start;
                     const size_t lb = b.end - b.start;
                     if (la != lb) return la > lb;
                     return a.start < b.start;
                   });
  std::vector<EntityMention> kept;
  for (EntityMention &m : found) {
    const bool overlaps =
        std::any_of(kept.begin(), kept.end(), [&](const EntityMention &k) {
          return m.start < k.end && k.start < m.end;
        });
    if (!overlaps) kept.push_back(std::move(m));
  }
  std::sort(kept.begin(), kept.end(),
            [](const EntityMention &a, const EntityMention &b) {
              return a.start < b.start;
            });
  return kept;
}

// Tokens of a multi-token alias may only be separated by spaces or hyphens.
bool JoinableGap(std::string_view gap) {
  for (const CodePoint &cp : DecodeUtf8(gap)) {
    if (!IsSpace(cp.value) && cp.value != U'-' && cp.value != 0x2010) {
      return false;
    }
  }
  return true;
}

std::vector<std::string> SplitTabs(std::string_view line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t tab = line.find('\t', start);
    fields.emplace_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

void ValidateLinkerConfig(const LinkerConfig &cfg) {
  if (!(cfg.threshold >= 0.0 && cfg.threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be in [0,1]");
  }
}

std::string Gazetteer::Key(std::string_view alias) {
  std::string key;
  for (const Token &token : Tokenize(alias, /*keep_digits=*/true)) {
    if (!key.empty()) key.push_back(' ');
    key += token.folded;
  }
  return key;
}

void Gazetteer::Add(std::string_view alias, EntityRef entity) {
  const std::string key = Key(alias);
  if (key.empty()) return;
  auto &targets = index_[key];
  const bool dup = std::any_of(
      targets.begin(), targets.end(),
      [&](const EntityRef &e) { return e.entity_id == entity.entity_id; });
  if (!dup) targets.push_back(std::move(entity));
  max_tokens_ = std::max<size_t>(
      max_tokens_, std::count(key.begin(), key.end(), ' ') + 1);
}

const std::vector<EntityRef> *Gazetteer::Lookup(const std::string &key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &it->second;
}

Gazetteer ParseGazetteer(std::string_view contents) {
  Gazetteer gazetteer;
  std::istringstream in{std::string(contents)};
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    const auto fields = SplitTabs(line);
    if (fields.size() < 3 || fields.size() > 4) {
      throw Error(ErrorCode::kMalformedGazetteer,
                  "line " + std::to_string(lineno) + ": expected 3 or 4 fields");
    }
    EntityRef entity;
    entity.entity_id = std::string(Trim(fields[1]));
    entity.label = std::string(Trim(fields[2]));
    if (fields.size() == 4) {
      std::istringstream types(fields[3]);
      std::string type;
      while (std::getline(types, type, ',')) {
        if (!Trim(type).empty()) entity.types.emplace_back(Trim(type));
      }
    }
    if (entity.entity_id.empty() || Gazetteer::Key(fields[0]).empty()) {
      throw Error(ErrorCode::kMalformedGazetteer,
                  "line " + std::to_string(lineno) + ": empty alias or id");
    }
    gazetteer.Add(fields[0], std::move(entity));
  }
  return gazetteer;
}

Gazetteer LoadGazetteer(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseGazetteer(buffer.str());
}

std::vector<EntityMention> GazetteerLinker::Annotate(
    std::string_view text, const LinkerConfig &cfg) const {
  ValidateLinkerConfig(cfg);
  constexpr double kScore = 1.0;
  if (kScore < cfg.threshold) return {};
  const auto tokens = Tokenize(text, /*keep_digits=*/true);
  std::vector<EntityMention> found;
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::string key;
    for (size_t len = 1;
         len <= gazetteer_->max_tokens() && i + len <= tokens.size(); ++len) {
      const Token &last = tokens[i + len - 1];
      if (len > 1) {
        const Token &prev = tokens[i + len - 2];
        if (!JoinableGap(text.substr(prev.end, last.begin - prev.end))) break;
        key.push_back(' ');
      }
      key += last.folded;
      const auto *targets = gazetteer_->Lookup(key);
      if (targets == nullptr) continue;
      EntityMention m;
      m.entity = targets->front();
      m.start = tokens[i].begin;
      m.end = last.end;
      m.surface = std::string(text.substr(m.start, m.end - m.start));
      m.score = kScore;
      found.push_back(std::move(m));
    }
  }
  return ResolveOverlaps(std::move(found));
}

std::vector<EntityMention> ParseWikifierResponse(std::string_view text,
                                                 std::string_view body,
                                                 const LinkerConfig &cfg) {
  ValidateLinkerConfig(cfg);
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::kMalformedResponse, e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kMalformedResponse, "response is not an object");
  }
  auto annotations = doc.find("annotations");
  if (annotations == doc.end() || annotations->is_null()) return {};
  if (!annotations->is_array()) {
    throw Error(ErrorCode::kMalformedResponse, "annotations is not an array");
  }

  double max_rank = 0.0;
  for (const json &a : *annotations) {
    if (!a.is_object() || !a.contains("pageRank") ||
        !a["pageRank"].is_number()) {
      throw Error(ErrorCode::kMalformedResponse, "annotation without pageRank");
    }
    const double rank = a["pageRank"].get<double>();
    if (!std::isfinite(rank) || rank < 0.0) {
      throw Error(ErrorCode::kMalformedResponse, "invalid pageRank");
    }
    max_rank = std::max(max_rank, rank);
  }
  if (max_rank <= 0.0) return {};

  const size_t ncodepoints = CountCodePoints(text);
  std::vector<EntityMention> found;
  for (const json &a : *annotations) {
    const double score =
        std::clamp(a["pageRank"].get<double>() / max_rank, 0.0, 1.0);
    if (score < cfg.threshold) continue;
    // Annotations without a WikiData item cannot become Entity nodes.
    if (!a.contains("wikiDataItemId") || !a["wikiDataItemId"].is_string()) {
      continue;
    }
    EntityRef entity;
    entity.entity_id = a["wikiDataItemId"].get<std::string>();
    if (entity.entity_id.empty()) continue;
    entity.label = a.value("title", "");
    if (auto classes = a.find("wikiDataClasses");
        classes != a.end() && classes->is_array()) {
      for (const json &c : *classes) {
        if (c.is_object() && c.contains("enLabel") && c["enLabel"].is_string()) {
          entity.types.push_back(c["enLabel"].get<std::string>());
        }
      }
    }
    auto support = a.find("support");
    if (support == a.end() || !support->is_array()) continue;
    for (const json &s : *support) {
      if (!s.is_object() || !s.contains("chFrom") || !s.contains("chTo") ||
          !s["chFrom"].is_number_integer() || !s["chTo"].is_number_integer()) {
        throw Error(ErrorCode::kMalformedResponse, "bad support span");
      }
      // chFrom/chTo are inclusive code point indices.
      const auto from = s["chFrom"].get<long long>();
      const auto to = s["chTo"].get<long long>();
      if (from < 0 || to < from || static_cast<size_t>(to) >= ncodepoints) {
        throw Error(ErrorCode::kMalformedResponse, "support span out of range");
      }
      EntityMention m;
      m.entity = entity;
      m.start = CodePointToByteOffset(text, static_cast<size_t>(from));
      m.end = CodePointToByteOffset(text, static_cast<size_t>(to) + 1);
      m.surface = std::string(text.substr(m.start, m.end - m.start));
      m.score = score;
      found.push_back(std::move(m));
    }
  }
  return ResolveOverlaps(std::move(found));
}

WikifierLinker::WikifierLinker(WikifierEndpoint endpoint)
    : endpoint_(std::move(endpoint)),
      in_flight_(std::max(1, endpoint_.max_in_flight)) {
  const auto split = internal::SplitUrl(endpoint_.url);
  host_ = split.base;
  path_ = split.path;
}

WikifierLinker::~WikifierLinker() = default;

std::vector<EntityMention> WikifierLinker::Annotate(
    std::string_view text, const LinkerConfig &cfg) const {
  ValidateLinkerConfig(cfg);
  if (text.empty()) return {};
  // Pruning happens client-side so both linkers share one threshold rule.
  httplib::Params params{
      {"text", std::string(text)},
      {"lang", cfg.language},
      {"userKey", endpoint_.user_key},
      {"applyPageRankSqThreshold", "false"},
      {"support", "true"},
      {"wikiDataClasses", "true"},
      {"includeCosines", "false"},
  };
  httplib::Result res;
  {
    internal::SlotGuard slot(in_flight_);
    httplib::Client client(host_);
    const auto secs = endpoint_.timeout;
    client.set_connection_timeout(secs);
    client.set_read_timeout(secs);
    client.set_write_timeout(secs);
    res = client.Post(path_, params);
  }
  if (!res) {
    throw Error(ErrorCode::kLinkerUnavailable,
                "wikifier request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kLinkerUnavailable,
                "wikifier returned HTTP " + std::to_string(res->status));
  }
  return ParseWikifierResponse(text, res->body, cfg);
}

}  // namespace claimgraph
