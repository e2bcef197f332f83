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

#include <condition_variable>
#include <future>

#include "claimgraph/error.h"
#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "testing.h"

namespace claimgraph {
namespace {

using nlohmann::json;

template <typename T>
std::shared_ptr<const T> Borrow(const T &t) {
  return std::shared_ptr<const T>(&t, [](const T *) {});
}

Providers ScenarioProviders(const testing::Scenario &sc) {
  Providers p;
  p.primary.linker = Borrow<EntityLinker>(sc.linker);
  p.primary.sts = Borrow<StsScorer>(sc.sts);
  p.primary.nli = Borrow<NliScorer>(sc.nli);
  return p;
}

std::string IngestBody(const std::vector<ArticleRecord> &records) {
  std::string out;
  for (const auto &r : records) {
    out += json{{"url", r.url}, {"title", r.title}, {"body", r.body}}.dump() + "\n";
  }
  return out;
}

std::string ClaimBody(std::string_view claim) {
  return json{{"claim", claim}}.dump();
}

// Linker that parks inside Annotate until released.
class GateLinker : public EntityLinker {
 public:
  std::vector<EntityMention> Annotate(std::string_view,
                                      const LinkerConfig &) const override {
    std::unique_lock lock(mu_);
    entered_ = true;
    cv_.notify_all();
    cv_.wait(lock, [this] { return released_; });
    return {};
  }
  void WaitEntered() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [this] { return entered_; });
  }
  void Release() {
    std::lock_guard lock(mu_);
    released_ = true;
    cv_.notify_all();
  }

 private:
  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  mutable bool entered_ = false;
  bool released_ = false;
};

TEST_SUITE("service") {

TEST_CASE("health before and after load") {
  testing::Scenario sc;
  Service service(ServiceConfig{}, ScenarioProviders(sc));
  CHECK(service.Handle("GET", "/healthz", "").status == 503);
  CHECK(service.Handle("POST", "/claims", ClaimBody("x")).status == 503);
  service.LoadStore();
  CHECK(service.Handle("GET", "/healthz", "").status == 200);
  CHECK(service.Handle("GET", "/nope", "").status == 404);
}

TEST_CASE("claims endpoint") {
  testing::Scenario sc;
  Service service(ServiceConfig{}, ScenarioProviders(sc));
  service.LoadStore();
  CHECK(service.Handle("POST", "/claims", ClaimBody("")).status == 400);
  CHECK(service.Handle("POST", "/claims", ClaimBody("   ")).status == 400);
  CHECK(service.Handle("POST", "/claims", "{oops").status == 400);
  CHECK(service.Handle("POST", "/claims", R"({"text":"x"})").status == 400);

  const auto ingested = service.Handle(
      "POST", "/ingest",
      IngestBody({testing::Article("s1/aid", "", testing::kRow1a),
                  testing::Article("s1/police", "", testing::kRow1b)}));
  REQUIRE(ingested.status == 200);
  const json stats = json::parse(ingested.body);
  CHECK(stats["articles"] == 2);
  CHECK(stats["mentions"] == 6);

  const auto r = service.Handle("POST", "/claims", ClaimBody(testing::kClaim1a));
  REQUIRE(r.status == 200);
  const json body = json::parse(r.body);
  CHECK(body["status"] == "ok");
  CHECK(body["sts"] == 0.8505);
  CHECK(body["verdict"]["e"] == 0.958);
  CHECK(body["verdict"]["c"] == 0.014);
  CHECK(body["verdict"]["n"] == 0.028);
  CHECK(body["degraded_providers"] == false);
  // Identical inputs give identical bodies.
  CHECK(service.Handle("POST", "/claims", ClaimBody(testing::kClaim1a)).body == r.body);

  const json s = json::parse(service.Handle("GET", "/stats", "").body);
  CHECK(s["articles"] == 2);
  CHECK(s["entities"] == 3);
}

TEST_CASE("ingest persists to the store path") {
  testing::Scenario sc;
  ServiceConfig config;
  config.store_path = testing::TempPath("svc.ffg");
  {
    Service service(config, ScenarioProviders(sc));
    service.LoadStore();
    const auto r = service.Handle(
        "POST", "/ingest", IngestBody({testing::Article("s2/new", "", testing::kRow2New)}));
    CHECK(r.status == 200);
  }
  Service reloaded(config, ScenarioProviders(sc));
  reloaded.LoadStore();
  CHECK(reloaded.store().Stats().articles == 1);
  CHECK(reloaded.store().Stats().mention_edges == 2);
  std::filesystem::remove(config.store_path);
}

TEST_CASE("concurrent ingest gets 409") {
  testing::Scenario sc;
  GateLinker gate;
  Providers p = ScenarioProviders(sc);
  p.primary.linker = Borrow<EntityLinker>(gate);
  Service service(ServiceConfig{}, p);
  service.LoadStore();
  auto first = std::async(std::launch::async, [&] {
    return service.Handle("POST", "/ingest",
                          IngestBody({testing::Article("a", "", "Some text here.")}));
  });
  gate.WaitEntered();
  const auto second = service.Handle(
      "POST", "/ingest", IngestBody({testing::Article("b", "", "Other text here.")}));
  CHECK(second.status == 409);
  gate.Release();
  CHECK(first.get().status == 200);
  CHECK(service.Handle("POST", "/ingest",
                       IngestBody({testing::Article("b", "", "Other text here.")}))
            .status == 200);
}

TEST_CASE("unhealthy providers degrade or fail") {
  testing::Scenario sc;
  sc.LoadScenario2();
  Providers p = ScenarioProviders(sc);
  p.healthy = [] { return false; };
  p.fallback = ReferenceScorers(Borrow<EntityLinker>(sc.linker));

  Service lenient(ServiceConfig{}, p);
  lenient.LoadStore();
  const auto r = lenient.Handle("POST", "/claims", ClaimBody(testing::kClaim2));
  REQUIRE(r.status == 200);
  CHECK(json::parse(r.body)["degraded_providers"] == true);
  CHECK(lenient.Handle("GET", "/healthz", "").status == 503);

  ServiceConfig strict_config;
  strict_config.strict_providers = true;
  Service strict(strict_config, p);
  strict.LoadStore();
  CHECK(strict.Handle("POST", "/claims", ClaimBody(testing::kClaim2)).status == 503);
}

TEST_CASE("config validation") {
  testing::Scenario sc;
  ServiceConfig bad;
  bad.limits.top_k = 0;
  CHECK_THROWS_AS(Service(bad, ScenarioProviders(sc)), Error);
  CHECK_THROWS_AS(Service(ServiceConfig{}, Providers{}), Error);
}

TEST_CASE("serves over http") {
  testing::Scenario sc;
  Service service(ServiceConfig{}, ScenarioProviders(sc));
  service.LoadStore();
  const int port = service.BindEphemeral();
  REQUIRE(port > 0);
  std::thread t([&] { service.ListenAfterBind(); });
  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/healthz");
  for (int i = 0; i < 50 && !health; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    health = client.Get("/healthz");
  }
  REQUIRE(health);
  CHECK(health->status == 200);
  const auto res = client.Post("/claims", ClaimBody(""), "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);
  service.Stop();
  t.join();
}

}  // TEST_SUITE

}  // namespace
}  // namespace claimgraph
