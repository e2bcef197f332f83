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

// Client for an out-of-process model server speaking JSON over HTTP:
//
//   GET  /info   -> {"dim": D, "model": str, "labels": [..]?}
//   POST /embed  {"texts": [..]}              -> {"vectors": [[..], ..]}
//   POST /nli    {"pairs": [[premise, hyp]]}  -> {"probs": [[c, e, n], ..]}
//
// "labels", when present, names the order of each probs row; the client
// reorders rows into (contradiction, entailment, neutral). HTTP 503 and
// transport failures raise ProviderUnavailable.

#ifndef CLAIMGRAPH_REMOTE_SCORING_H_
#define CLAIMGRAPH_REMOTE_SCORING_H_

#include <array>
#include <chrono>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>

#include "claimgraph/scoring.h"

namespace claimgraph {

// Row norms may deviate from 1 by this much before a response is rejected.
inline constexpr double kUnitNormTolerance = 1e-3;
inline constexpr double kProbabilitySumTolerance = 1e-6;

struct RemoteScorerConfig {
  std::string url;  // http://host:port
  std::chrono::milliseconds timeout{30000};
  int max_in_flight = 4;
  size_t max_batch = 64;
};

struct RemoteInfo {
  size_t dim = 0;
  std::string model;
  // Index of contradiction, entailment, neutral within a probs row.
  std::array<size_t, 3> class_index = {0, 1, 2};
};

// Validators for the wire schema; throw MalformedResponse.
RemoteInfo ParseInfoResponse(std::string_view body);
std::vector<Embedding> ParseEmbedResponse(std::string_view body, size_t dim,
                                          size_t expected_rows);
std::vector<NliVerdict> ParseNliResponse(std::string_view body,
                                         const RemoteInfo &info,
                                         size_t expected_rows);

class RemoteScorer : public EmbeddingProvider, public NliScorer {
 public:
  explicit RemoteScorer(RemoteScorerConfig config);

  // Cached after the first successful call.
  RemoteInfo Info() const;
  // True when GET /info succeeds.
  bool Reachable() const;

  size_t Dim() const override;
  std::vector<Embedding> Embed(
      std::span<const std::string> texts) const override;
  NliVerdict Classify(std::string_view premise,
                      std::string_view hypothesis) const override;
  std::vector<NliVerdict> ClassifyBatch(
      const std::vector<std::pair<std::string, std::string>> &pairs) const;

 private:
  std::string Get(const std::string &path) const;
  std::string Post(const std::string &path, const std::string &body) const;

  RemoteScorerConfig config_;
  std::string base_;
  mutable std::counting_semaphore<> in_flight_;
  mutable std::mutex info_mutex_;
  mutable std::optional<RemoteInfo> info_;
};

}  // namespace claimgraph

#endif  // CLAIMGRAPH_REMOTE_SCORING_H_
