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

#ifndef CLAIMGRAPH_ENTITY_LINKING_H_
#define CLAIMGRAPH_ENTITY_LINKING_H_

#include <chrono>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "claimgraph/types.h"

namespace claimgraph {

inline constexpr double kDefaultLinkThreshold = 0.80;

struct LinkerConfig {
  double threshold = kDefaultLinkThreshold;
  std::string language = "el";
};

// Validates threshold in [0,1]; throws InvalidArgument.
void ValidateLinkerConfig(const LinkerConfig &cfg);

class EntityLinker {
 public:
  virtual ~EntityLinker() = default;

  // Mentions with score >= cfg.threshold, sorted by start offset. Must be
  // callable concurrently.
  virtual std::vector<EntityMention> Annotate(std::string_view text,
                                              const LinkerConfig &cfg) const = 0;
};

// Alias index over case- and accent-folded token sequences.
class Gazetteer {
 public:
  // Adds one alias. Later targets for the same alias rank behind earlier
  // ones.
  void Add(std::string_view alias, EntityRef entity);

  // All targets for an already-folded, single-space-joined token key.
  const std::vector<EntityRef> *Lookup(const std::string &key) const;

  // Folds and tokenizes an alias the same way text is tokenized.
  static std::string Key(std::string_view alias);

  size_t size() const { return index_.size(); }
  size_t max_tokens() const { return max_tokens_; }

 private:
  std::unordered_map<std::string, std::vector<EntityRef>> index_;
  size_t max_tokens_ = 0;
};

// Reads `alias<TAB>entity_id<TAB>label[<TAB>type,type...]` lines. Blank
// lines and lines starting with '#' are ignored. Throws MalformedGazetteer
// or IoFailure.
Gazetteer LoadGazetteer(const std::string &path);
Gazetteer ParseGazetteer(std::string_view contents);

// Deterministic reference linker. Scores are fixed at 1.0.
class GazetteerLinker : public EntityLinker {
 public:
  explicit GazetteerLinker(std::shared_ptr<const Gazetteer> gazetteer)
      : gazetteer_(std::move(gazetteer)) {}

  std::vector<EntityMention> Annotate(std::string_view text,
                                      const LinkerConfig &cfg) const override;

 private:
  std::shared_ptr<const Gazetteer> gazetteer_;
};

struct WikifierEndpoint {
  std::string url = "http://www.wikifier.org/annotate-article";
  std::string user_key;
  std::chrono::milliseconds timeout{10000};
  int max_in_flight = 4;
};

// Converts a wikification response body into mentions over `text`. Each
// annotation's score is its pageRank divided by the largest pageRank in the
// response; one mention is produced per support span.
std::vector<EntityMention> ParseWikifierResponse(std::string_view text,
                                                 std::string_view body,
                                                 const LinkerConfig &cfg);

// Client for a JSI-Wikifier-compatible service. Transport failures and
// timeouts raise LinkerUnavailable; unparseable bodies MalformedResponse.
class WikifierLinker : public EntityLinker {
 public:
  explicit WikifierLinker(WikifierEndpoint endpoint);
  ~WikifierLinker() override;

  std::vector<EntityMention> Annotate(std::string_view text,
                                      const LinkerConfig &cfg) const override;

 private:
  WikifierEndpoint endpoint_;
  std::string host_;  // scheme://host:port
  std::string path_;
  mutable std::counting_semaphore<> in_flight_;
};

}  // namespace claimgraph

#endif  // CLAIMGRAPH_ENTITY_LINKING_H_
