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

// Long-running HTTP front end.
//
//   POST /claims   {"claim": str}          -> claim evaluation
//   POST /ingest   ingestion-format lines  -> ingest stats (409 while busy)
//   GET  /stats                            -> graph stats
//   GET  /healthz                          -> 200 once the store is loaded
//                                             and providers are reachable

#ifndef CLAIMGRAPH_SERVICE_H_
#define CLAIMGRAPH_SERVICE_H_

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "claimgraph/corpus.h"
#include "claimgraph/entity_linking.h"
#include "claimgraph/graph_store.h"
#include "claimgraph/pipeline.h"
#include "claimgraph/scoring.h"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace claimgraph {

// One JSON object per line on stderr.
void LogEvent(std::string_view event, nlohmann::ordered_json fields = {});

struct ProviderSet {
  std::shared_ptr<const EntityLinker> linker;
  std::shared_ptr<const StsScorer> sts;
  std::shared_ptr<const NliScorer> nli;

  Scorers view() const { return {*linker, *sts, *nli}; }
};

// Scorers used when no model server is configured.
ProviderSet ReferenceScorers(std::shared_ptr<const EntityLinker> linker);

// Owns an embedding provider and scores through it.
class OwningEmbeddingStsScorer : public StsScorer {
 public:
  explicit OwningEmbeddingStsScorer(
      std::shared_ptr<const EmbeddingProvider> provider)
      : provider_(std::move(provider)), scorer_(*provider_) {}

  std::vector<StsScore> Score(
      std::string_view claim,
      std::span<const std::string> texts) const override {
    return scorer_.Score(claim, texts);
  }

 private:
  std::shared_ptr<const EmbeddingProvider> provider_;
  EmbeddingStsScorer scorer_;
};

struct Providers {
  ProviderSet primary;
  // Used in place of `primary` when it is unhealthy and providers are not
  // strict. Responses served this way carry "degraded_providers": true.
  std::optional<ProviderSet> fallback;
  // Null means always healthy.
  std::function<bool()> healthy;
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string store_path;  // empty: in-memory only
  LinkerConfig linker;
  EvaluationLimits limits;
  SegmentationConfig segmentation;
  bool strict_providers = false;
};

// Validates limits and linker config; throws InvalidArgument.
void ValidateServiceConfig(const ServiceConfig &config);

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON
};

class Service {
 public:
  Service(ServiceConfig config, Providers providers);
  ~Service();

  // Loads config.store_path when it exists; otherwise starts empty.
  void LoadStore();
  bool store_loaded() const { return loaded_.load(); }
  GraphStore &store() { return store_; }

  HttpResponse Handle(std::string_view method, std::string_view path,
                      std::string_view body);

  // Binds and serves until Stop(). Returns false if binding failed.
  bool Listen();
  // Binds to an ephemeral port on config.host and returns it, or -1.
  int BindEphemeral();
  void ListenAfterBind();
  void Stop();

 private:
  HttpResponse HandleClaims(std::string_view body);
  HttpResponse HandleIngest(std::string_view body);
  HttpResponse HandleStats();
  HttpResponse HandleHealth();
  void InstallRoutes();

  ServiceConfig config_;
  Providers providers_;
  GraphStore store_;
  std::atomic<bool> loaded_{false};
  std::mutex write_mutex_;  // held by the single writer; 409 when taken
  // Claims hold it shared for a whole evaluation so they see one state.
  std::shared_mutex state_mutex_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace claimgraph

#endif  // CLAIMGRAPH_SERVICE_H_
