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

#include <fstream>
#include <sstream>
#include <thread>

#include "claimgraph/error.h"
#include "doctest.h"
#include "testing.h"

namespace claimgraph {
namespace {

std::string ReadAll(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GazetteerLinker Linker(std::string_view table) {
  return GazetteerLinker(std::make_shared<Gazetteer>(ParseGazetteer(table)));
}

using testing::LocalServer;

constexpr char kGreekText[] = "Η Αυστρία και η Δανία θέλουν στήριξη από την ΕΕ.";

TEST_SUITE("entity_linking") {

TEST_CASE("gazetteer exact alias match") {
  const auto linker = Linker("Denmark\tQ35\tDenmark\n");
  const std::string text = "Denmark and Austria";
  const auto m = linker.Annotate(text, LinkerConfig{});
  REQUIRE(m.size() == 1);
  CHECK(m[0].entity.entity_id == "Q35");
  CHECK(m[0].score == 1.0);
  CHECK(m[0].start == 0);
  CHECK(m[0].end == 7);
  CHECK(m[0].surface == "Denmark");
}

TEST_CASE("gazetteer folds case and accents") {
  const auto linker = Linker("Δανία\tQ35\tDenmark\tcountry,state\n");
  const std::string text = "Η ΔΑΝΊΑ αποφάσισε";
  const auto m = linker.Annotate(text, LinkerConfig{});
  REQUIRE(m.size() == 1);
  CHECK(m[0].entity.entity_id == "Q35");
  CHECK(m[0].entity.types == std::vector<std::string>{"country", "state"});
  CHECK(m[0].surface == "ΔΑΝΊΑ");
}

TEST_CASE("gazetteer matches whole tokens, longest first") {
  const auto linker = Linker(
      "# comment\n\n"
      "Union\tQ1\tUnion\n"
      "European Union\tQ458\tEuropean Union\n"
      "US\tQ30\tUnited States\n");
  const auto m = linker.Annotate("The European  Union, the European-Union and "
                                 "USA but US.",
                                 LinkerConfig{});
  REQUIRE(m.size() == 3);
  CHECK(m[0].entity.entity_id == "Q458");
  CHECK(m[0].surface == "European  Union");
  CHECK(m[1].entity.entity_id == "Q458");
  CHECK(m[1].surface == "European-Union");
  CHECK(m[2].entity.entity_id == "Q30");
  CHECK(Linker("European Union\tQ458\tEU\n")
            .Annotate("European, Union", LinkerConfig{})
            .empty());
}

TEST_CASE("gazetteer duplicate alias keeps the first target") {
  const auto linker = Linker("Georgia\tQ230\tGeorgia\nGeorgia\tQ1428\tGeorgia (US)\n");
  const auto m = linker.Annotate("Georgia", LinkerConfig{});
  REQUIRE(m.size() == 1);
  CHECK(m[0].entity.entity_id == "Q230");
}

TEST_CASE("gazetteer file loading") {
  const std::string path = testing::TempPath("g.tsv");
  testing::WriteFile(path, "Denmark\tQ35\tDenmark\nAustria\tQ40\tAustria\n");
  const Gazetteer g = LoadGazetteer(path);
  CHECK(g.size() == 2);
  CHECK(g.Lookup(Gazetteer::Key("DENMARK")) != nullptr);
  CHECK(g.Lookup(Gazetteer::Key("Austria"))->front().entity_id == "Q40");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(LoadGazetteer(path), Error);
  try {
    ParseGazetteer("only-one-column\n");
    FAIL("expected MalformedGazetteer");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kMalformedGazetteer);
  }
}

TEST_CASE("linker config validation") {
  LinkerConfig bad;
  bad.threshold = 1.5;
  CHECK_THROWS_AS(ValidateLinkerConfig(bad), Error);
  bad.threshold = -0.1;
  CHECK_THROWS_AS(ValidateLinkerConfig(bad), Error);
}

TEST_CASE("wikifier fixture parses to the hand-read mentions") {
  const std::string body = ReadAll(testing::DataPath("wikifier_response.json"));
  const std::string text = kGreekText;
  const auto m = ParseWikifierResponse(text, body, LinkerConfig{});
  // Read off the fixture: ranks 0.020, 0.018, 0.010 and an unlinked 0.019.
  // Scores relative to 0.020 are 1.0, 0.9, 0.5; the 0.5 one is cut at 0.80
  // and the annotation without an item id is dropped.
  REQUIRE(m.size() == 2);
  CHECK(m[0].entity.entity_id == "Q40");
  CHECK(m[0].entity.label == "Austria");
  CHECK(m[0].surface == "Αυστρία");
  CHECK(m[0].start == 3);
  CHECK(m[0].end == 17);
  CHECK(m[0].score == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(m[0].entity.types ==
        std::vector<std::string>{"country", "sovereign state"});
  CHECK(m[1].entity.entity_id == "Q35");
  CHECK(m[1].surface == "Δανία");
  CHECK(m[1].start == 28);
  CHECK(m[1].end == 38);
  CHECK(m[1].score == 1.0);

  LinkerConfig low;
  low.threshold = 0.4;
  CHECK(ParseWikifierResponse(text, body, low).size() == 3);
}

TEST_CASE("wikifier threshold is monotone") {
  const std::string body = ReadAll(testing::DataPath("wikifier_response.json"));
  size_t previous = SIZE_MAX;
  for (double t = 0.0; t <= 1.0; t += 0.05) {
    LinkerConfig cfg;
    cfg.threshold = t;
    const size_t n = ParseWikifierResponse(kGreekText, body, cfg).size();
    CHECK(n <= previous);
    previous = n;
  }
}

TEST_CASE("wikifier empty and malformed responses") {
  CHECK(ParseWikifierResponse("x", R"({"annotations":[]})", LinkerConfig{}).empty());
  CHECK(ParseWikifierResponse("x", R"({})", LinkerConfig{}).empty());
  CHECK_THROWS_AS(ParseWikifierResponse("x", "[", LinkerConfig{}), Error);
  CHECK_THROWS_AS(
      ParseWikifierResponse(
          "x",
          R"({"annotations":[{"pageRank":1,"wikiDataItemId":"Q1","support":[{"chFrom":0,"chTo":5}]}]})",
          LinkerConfig{}),
      Error);
}

TEST_CASE("wikifier client against a local server") {
  const std::string body = ReadAll(testing::DataPath("wikifier_response.json"));
  std::string seen_threshold;
  LocalServer server([&](httplib::Server &s) {
    s.Post("/annotate-article", [&](const httplib::Request &req,
                                     httplib::Response &res) {
      seen_threshold = req.get_param_value("applyPageRankSqThreshold");
      res.set_content(body, "application/json");
    });
    s.Post("/slow", [](const httplib::Request &, httplib::Response &res) {
      std::this_thread::sleep_for(std::chrono::milliseconds(1500));
      res.set_content("{}", "application/json");
    });
    s.Post("/down", [](const httplib::Request &, httplib::Response &res) {
      res.status = 500;
    });
  });

  WikifierEndpoint ok;
  ok.url = server.url("/annotate-article");
  const auto m = WikifierLinker(ok).Annotate(kGreekText, LinkerConfig{});
  CHECK(m.size() == 2);
  CHECK(seen_threshold == "false");

  auto expect_unavailable = [](const WikifierEndpoint &endpoint) {
    try {
      WikifierLinker(endpoint).Annotate(kGreekText, LinkerConfig{});
      FAIL("expected LinkerUnavailable");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::kLinkerUnavailable);
    }
  };
  WikifierEndpoint slow;
  slow.url = server.url("/slow");
  slow.timeout = std::chrono::milliseconds(200);
  expect_unavailable(slow);
  WikifierEndpoint down;
  down.url = server.url("/down");
  expect_unavailable(down);
}

}  // TEST_SUITE

}  // namespace
}  // namespace claimgraph
