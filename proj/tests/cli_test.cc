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


#include "claimgraph/cli.h"

#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "testing.h"

namespace claimgraph {
namespace {

using nlohmann::json;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

TEST_SUITE("cli") {

TEST_CASE("usage errors exit 2") {
  CHECK(Cli({"frobnicate"}).code == kExitUsage);
  CHECK(Cli({}).code == kExitUsage);
  CHECK(Cli({"claim"}).code == kExitUsage);
  CHECK(Cli({"--format", "xml", "stats"}).code == kExitUsage);
  CHECK(Cli({"--help"}).code == kExitOk);
}

TEST_CASE("claim on an empty store reports no evidence") {
  const std::string store = testing::TempPath("empty.ffg");
  const Run r = Cli({"--store", store, "--gazetteer", testing::DataPath("gazetteer.tsv"),
                     "--format", "json", "claim", "--text", "Greece and Cyprus agree."});
  CHECK(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["status"] == "no_evidence");
  CHECK(j["verdict"].is_null());
}

TEST_CASE("ingest then stats agree") {
  const std::string store = testing::TempPath("cli.ffg");
  const Run ingest = Cli({"--store", store, "--format", "json", "ingest", "--input",
                          testing::DataPath("corpus.jsonl")});
  REQUIRE(ingest.code == kExitOk);
  const json is = json::parse(ingest.out);
  const Run stats = Cli({"--store", store, "--format", "json", "stats"});
  REQUIRE(stats.code == kExitOk);
  const json s = json::parse(stats.out);
  CHECK(is["articles"] == s["articles"]);
  CHECK(is["sections"] == s["sections"]);
  CHECK(s["articles"] == 20);

  const Run annotate = Cli({"--store", store, "--gazetteer",
                            testing::DataPath("gazetteer.tsv"), "annotate"});
  CHECK(annotate.code == kExitOk);
  const Run claim = Cli({"--store", store, "--gazetteer", testing::DataPath("gazetteer.tsv"),
                         "claim", "--text", "Greece and Cyprus signed an energy agreement."});
  CHECK(claim.code == kExitOk);
  CHECK(claim.out.find("verdict: entailment") != std::string::npos);

  const std::string exported = testing::TempPath("export.ffg");
  CHECK(Cli({"--store", store, "export", "--output", exported}).code == kExitOk);
  const Run again = Cli({"--store", exported, "--format", "json", "stats"});
  CHECK(json::parse(again.out)["mention_edges"] ==
        json::parse(Cli({"--store", store, "--format", "json", "stats"}).out)["mention_edges"]);
  std::filesystem::remove(store);
  std::filesystem::remove(exported);
}

TEST_CASE("domain errors exit 1") {
  const std::string store = testing::TempPath("corrupt.ffg");
  testing::WriteFile(store, "not a snapshot");
  const Run r = Cli({"--store", store, "stats"});
  CHECK(r.code == kExitDomainError);
  CHECK(r.err.find("CorruptSnapshot") != std::string::npos);
  std::filesystem::remove(store);
  CHECK(Cli({"--store", store, "ingest", "--input", "/nonexistent.jsonl"}).code ==
        kExitDomainError);
}

TEST_CASE("unreachable scorer degrades unless strict") {
  const std::string store = testing::TempPath("remote.ffg");
  Cli({"--store", store, "ingest", "--input", testing::DataPath("corpus.jsonl")});
  Cli({"--store", store, "--gazetteer", testing::DataPath("gazetteer.tsv"), "annotate"});
  const std::vector<std::string> base = {
      "--store", store, "--gazetteer", testing::DataPath("gazetteer.tsv"),
      "--nli-provider", "remote", "--scorer-url", "http://127.0.0.1:1",
      "--scorer-timeout-ms", "300", "--format", "json"};
  auto args = base;
  args.insert(args.end(), {"claim", "--text", "Greece and Cyprus signed an energy agreement."});
  const Run lenient = Cli(args);
  CHECK(lenient.code == kExitOk);
  CHECK(json::parse(lenient.out)["degraded_providers"] == true);
  CHECK(lenient.err.find("warning") != std::string::npos);

  args.insert(args.begin(), "--strict-providers");
  CHECK(Cli(args).code == kExitDomainError);
  std::filesystem::remove(store);
}

TEST_CASE("eval writes a report") {
  const std::string store = testing::TempPath("eval.ffg");
  const std::string report = testing::TempPath("report.jsonl");
  const std::string gaz = testing::DataPath("gazetteer.tsv");
  Cli({"--store", store, "ingest", "--input", testing::DataPath("corpus.jsonl")});
  Cli({"--store", store, "--gazetteer", gaz, "annotate"});
  const Run r = Cli({"--store", store, "--gazetteer", gaz, "--format", "json", "eval",
                     "--dataset", testing::DataPath("claims.jsonl"), "--report", report,
                     "--jobs", "3"});
  REQUIRE(r.code == kExitOk);
  CHECK(json::parse(r.out)["accuracy"] == 1.0);
  CHECK(std::filesystem::file_size(report) > 0);
  std::filesystem::remove(store);
  std::filesystem::remove(report);
}

}  // TEST_SUITE

}  // namespace
}  // namespace claimgraph
