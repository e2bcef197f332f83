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

#include "claimgraph/service.h"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "claimgraph/error.h"
#include "claimgraph/text.h"
#include "httplib.h"

namespace claimgraph {
namespace {

using ojson = nlohmann::ordered_json;

HttpResponse JsonResponse(int status, const ojson &body) {
  return {status, body.dump()};
}

HttpResponse ErrorResponse(int status, std::string_view message) {
  return JsonResponse(status, {{"error", message}});
}

ojson StatsJson(const GraphStats &stats) {
  return {{"articles", stats.articles},
          {"sections", stats.sections},
          {"entities", stats.entities},
          {"mention_edges", stats.mention_edges}};
}

}  // namespace

void LogEvent(std::string_view event, nlohmann::ordered_json fields) {
  ojson line;
  const auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::system_clock::now().time_since_epoch());
  line["ts_ms"] = now.count();
  line["event"] = event;
  if (fields.is_object()) {
    for (auto &[key, value] : fields.items()) line[key] = value;
  }
  static std::mutex log_mutex;
  std::lock_guard lock(log_mutex);
  std::cerr << line.dump() << "\n";
}

ProviderSet ReferenceScorers(std::shared_ptr<const EntityLinker> linker) {
  ProviderSet set;
  set.linker = std::move(linker);
  set.sts = std::make_shared<OwningEmbeddingStsScorer>(
      std::make_shared<HashedBagEmbedder>());
  set.nli = std::make_shared<ReferenceNli>();
  return set;
}

void ValidateServiceConfig(const ServiceConfig &config) {
  ValidateLinkerConfig(config.linker);
  if (config.limits.top_k == 0 || config.limits.nli_top_k == 0 ||
      config.limits.evidence.cap == 0) {
    throw Error(ErrorCode::kInvalidArgument, "limits must be positive");
  }
  if (config.port < 0 || config.port > 65535) {
    throw Error(ErrorCode::kInvalidArgument, "port out of range");
  }
}

Service::Service(ServiceConfig config, Providers providers)
    : config_(std::move(config)), providers_(std::move(providers)) {
  ValidateServiceConfig(config_);
  if (!providers_.primary.linker || !providers_.primary.sts ||
      !providers_.primary.nli) {
    throw Error(ErrorCode::kInvalidArgument, "primary providers are required");
  }
}

Service::~Service() { Stop(); }

void Service::LoadStore() {
  if (!config_.store_path.empty() &&
      std::filesystem::exists(config_.store_path)) {
    const GraphStats stats = store_.LoadSnapshot(config_.store_path);
    LogEvent("store_loaded", {{"path", config_.store_path},
                              {"stats", StatsJson(stats)}});
  }
  loaded_ = true;
}

HttpResponse Service::Handle(std::string_view method, std::string_view path,
                             std::string_view body) {
  try {
    if (method == "POST" && path == "/claims") return HandleClaims(body);
    if (method == "POST" && path == "/ingest") return HandleIngest(body);
    if (method == "GET" && path == "/stats") return HandleStats();
    if (method == "GET" && path == "/healthz") return HandleHealth();
    return ErrorResponse(404, "no route for " + std::string(method) + " " +
                                  std::string(path));
  } catch (const Error &e) {
    LogEvent("request_failed", {{"path", path}, {"error", e.what()}});
    const int status =
        e.code() == ErrorCode::kInvalidArgument ||
                e.code() == ErrorCode::kMalformedRecord
            ? 400
            : 500;
    return ErrorResponse(status, e.what());
  } catch (const std::exception &e) {
    LogEvent("request_failed", {{"path", path}, {"error", e.what()}});
    return ErrorResponse(500, e.what());
  }
}

HttpResponse Service::HandleClaims(std::string_view body) {
  if (!loaded_) return ErrorResponse(503, "store not loaded");
  nlohmann::json request;
  try {
    request = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error &e) {
    return ErrorResponse(400, e.what());
  }
  if (!request.is_object() || !request.contains("claim") ||
      !request["claim"].is_string()) {
    return ErrorResponse(400, "body must be {\"claim\": string}");
  }
  const std::string claim = request["claim"].get<std::string>();
  if (Trim(claim).empty()) return ErrorResponse(400, "claim is empty");

  std::shared_lock state_lock(state_mutex_);
  bool degraded = false;
  const ProviderSet *set = &providers_.primary;
  if (providers_.healthy && !providers_.healthy()) {
    if (config_.strict_providers || !providers_.fallback) {
      return ErrorResponse(503, "scoring providers unavailable");
    }
    set = &*providers_.fallback;
    degraded = true;
  }
  ClaimEvaluation evaluation =
      EvaluateClaim(claim, store_, set->view(), config_.linker, config_.limits);
  if (evaluation.status == ClaimStatus::kProviderUnavailable && !degraded) {
    if (config_.strict_providers || !providers_.fallback) {
      return ErrorResponse(503, evaluation.detail);
    }
    evaluation = EvaluateClaim(claim, store_, providers_.fallback->view(),
                               config_.linker, config_.limits);
    degraded = true;
  }
  ojson out = ToJson(evaluation);
  out["degraded_providers"] = degraded;
  LogEvent("claim", {{"status", ClaimStatusName(evaluation.status)},
                     {"candidates", evaluation.total_candidates},
                     {"degraded_providers", degraded}});
  return JsonResponse(200, out);
}

HttpResponse Service::HandleIngest(std::string_view body) {
  if (!loaded_) return ErrorResponse(503, "store not loaded");
  std::unique_lock lock(write_mutex_, std::try_to_lock);
  if (!lock.owns_lock()) return ErrorResponse(409, "a write is in progress");
  std::unique_lock state_lock(state_mutex_);

  std::istringstream in{std::string(body)};
  const IngestStats stats = IngestStream(in, store_, config_.segmentation);
  std::vector<SectionId> fresh;
  for (ArticleId id : stats.touched) {
    for (SectionId sid : store_.SectionsOf(id)) fresh.push_back(sid);
  }
  ojson out = {{"articles", stats.articles},
               {"sections", stats.sections},
               {"replaced", stats.replaced},
               {"unchanged", stats.unchanged},
               {"skipped", stats.skipped}};
  ojson errors = ojson::array();
  for (const IngestError &e : stats.errors) {
    errors.push_back({{"line", e.line}, {"message", e.message}});
  }
  out["errors"] = std::move(errors);
  try {
    const AnnotateStats annotated = AnnotateSections(
        store_, *providers_.primary.linker, config_.linker, fresh);
    out["annotated_sections"] = annotated.sections;
    out["mentions"] = annotated.mentions;
  } catch (const Error &e) {
    if (e.code() != ErrorCode::kLinkerUnavailable &&
        e.code() != ErrorCode::kMalformedResponse) {
      throw;
    }
    out["annotation_error"] = e.what();
  }
  if (!config_.store_path.empty()) store_.SaveSnapshot(config_.store_path);
  LogEvent("ingest", out);
  return JsonResponse(200, out);
}

HttpResponse Service::HandleStats() {
  if (!loaded_) return ErrorResponse(503, "store not loaded");
  return JsonResponse(200, StatsJson(store_.Stats()));
}

HttpResponse Service::HandleHealth() {
  if (!loaded_) return ErrorResponse(503, "store not loaded");
  if (providers_.healthy && !providers_.healthy()) {
    return ErrorResponse(503, "scoring providers unavailable");
  }
  return JsonResponse(200, {{"status", "ok"}});
}

void Service::InstallRoutes() {
  if (server_) return;
  server_ = std::make_unique<httplib::Server>();
  auto bind = [this](const httplib::Request &req, httplib::Response &res) {
    const HttpResponse out = Handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  server_->Post("/claims", bind);
  server_->Post("/ingest", bind);
  server_->Get("/stats", bind);
  server_->Get("/healthz", bind);
}

bool Service::Listen() {
  InstallRoutes();
  LogEvent("listening", {{"host", config_.host}, {"port", config_.port}});
  return server_->listen(config_.host, config_.port);
}

int Service::BindEphemeral() {
  InstallRoutes();
  return server_->bind_to_any_port(config_.host);
}

void Service::ListenAfterBind() { server_->listen_after_bind(); }

void Service::Stop() {
  if (server_) server_->stop();
}

}  // namespace claimgraph
