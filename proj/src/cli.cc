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

#include <algorithm>
#include <csignal>
#include <filesystem>
#include <memory>

#include "CLI11.hpp"
#include "claimgraph/corpus.h"
#include "claimgraph/entity_linking.h"
#include "claimgraph/error.h"
#include "claimgraph/eval_harness.h"
#include "claimgraph/graph_store.h"
#include "claimgraph/pipeline.h"
#include "claimgraph/remote_scoring.h"
#include "claimgraph/scoring.h"
#include "claimgraph/service.h"

namespace claimgraph {
namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  std::string store = "claimgraph.ffg";
  std::string format = "text";
  std::string linker = "gazetteer";
  std::string gazetteer;
  double threshold = kDefaultLinkThreshold;
  std::string language = "el";
  std::string wikifier_url = WikifierEndpoint{}.url;
  std::string wikifier_key;
  int linker_timeout_ms = 10000;
  std::string sts_provider = "reference";
  std::string nli_provider = "reference";
  std::string scorer_url = "http://127.0.0.1:8090";
  int scorer_timeout_ms = 30000;
  bool strict_providers = false;

  // ingest
  std::string input;
  size_t min_section_chars = SegmentationConfig{}.min_section_chars;
  // claim / eval
  std::string text;
  size_t top_k = 10;
  size_t nli_top_k = 1;
  size_t max_candidates = kDefaultPathCap;
  int max_hops = 0;
  std::string dataset;
  std::string report;
  double support_min_e = -1.0;
  double refute_min_c = -1.0;
  int jobs = 1;
  // serve / export
  std::string listen = "127.0.0.1:8080";
  std::string output;
};

struct Runtime {
  Providers providers;
  std::shared_ptr<RemoteScorer> remote;
};

Runtime BuildRuntime(const Options &o, std::ostream &err) {
  std::shared_ptr<const EntityLinker> linker;
  if (o.linker == "wikifier") {
    WikifierEndpoint endpoint;
    endpoint.url = o.wikifier_url;
    endpoint.user_key = o.wikifier_key;
    endpoint.timeout = std::chrono::milliseconds(o.linker_timeout_ms);
    linker = std::make_shared<WikifierLinker>(endpoint);
  } else {
    auto gazetteer = std::make_shared<Gazetteer>();
    if (!o.gazetteer.empty()) {
      *gazetteer = LoadGazetteer(o.gazetteer);
    } else {
      err << "warning: no --gazetteer given; no entities will be linked\n";
    }
    linker = std::make_shared<GazetteerLinker>(gazetteer);
  }

  Runtime rt;
  ProviderSet reference = ReferenceScorers(linker);
  if (o.sts_provider == "reference" && o.nli_provider == "reference") {
    rt.providers.primary = reference;
    return rt;
  }
  RemoteScorerConfig cfg;
  cfg.url = o.scorer_url;
  cfg.timeout = std::chrono::milliseconds(o.scorer_timeout_ms);
  rt.remote = std::make_shared<RemoteScorer>(cfg);
  ProviderSet primary = reference;
  if (o.sts_provider == "remote") {
    primary.sts = std::make_shared<OwningEmbeddingStsScorer>(rt.remote);
  }
  if (o.nli_provider == "remote") primary.nli = rt.remote;
  rt.providers.primary = primary;
  rt.providers.fallback = reference;
  auto remote = rt.remote;
  rt.providers.healthy = [remote] { return remote->Reachable(); };
  return rt;
}

// Picks the provider set a batch command should use; nullptr when strict
// providers are down.
const ProviderSet *SelectProviders(const Options &o, const Runtime &rt,
                                   bool *degraded, std::ostream &err) {
  *degraded = false;
  if (!rt.providers.healthy || rt.providers.healthy()) {
    return &rt.providers.primary;
  }
  if (o.strict_providers) return nullptr;
  err << "warning: scorer at " << o.scorer_url
      << " unreachable; using reference providers\n";
  *degraded = true;
  return &*rt.providers.fallback;
}

void LoadIfPresent(GraphStore &store, const std::string &path) {
  if (std::filesystem::exists(path)) store.LoadSnapshot(path);
}

ojson StatsJson(const GraphStats &s) {
  return {{"articles", s.articles},
          {"sections", s.sections},
          {"entities", s.entities},
          {"mention_edges", s.mention_edges}};
}

void PrintStats(const Options &o, const GraphStats &s, std::ostream &out) {
  if (o.format == "json") {
    out << StatsJson(s).dump() << "\n";
    return;
  }
  out << "articles: " << s.articles << "\n"
      << "sections: " << s.sections << "\n"
      << "entities: " << s.entities << "\n"
      << "mention_edges: " << s.mention_edges << "\n";
}

EvaluationLimits Limits(const Options &o) {
  EvaluationLimits limits;
  limits.top_k = o.top_k;
  limits.nli_top_k = o.nli_top_k;
  limits.evidence.cap = o.max_candidates;
  limits.evidence.max_hops = o.max_hops;
  return limits;
}

LinkerConfig LinkerCfg(const Options &o) {
  LinkerConfig cfg;
  cfg.threshold = o.threshold;
  cfg.language = o.language;
  ValidateLinkerConfig(cfg);
  return cfg;
}

int CmdIngest(const Options &o, std::ostream &out, std::ostream &err) {
  GraphStore store;
  LoadIfPresent(store, o.store);
  SegmentationConfig seg;
  seg.min_section_chars = o.min_section_chars;
  const IngestStats stats = IngestFile(o.input, store, seg);
  store.SaveSnapshot(o.store);
  for (const IngestError &e : stats.errors) {
    err << o.input << ":" << e.line << ": skipped: " << e.message << "\n";
  }
  if (o.format == "json") {
    out << ojson{{"articles", stats.articles},
                 {"sections", stats.sections},
                 {"replaced", stats.replaced},
                 {"unchanged", stats.unchanged},
                 {"skipped", stats.skipped}}
               .dump()
        << "\n";
  } else {
    out << "articles: " << stats.articles << "\n"
        << "sections: " << stats.sections << "\n"
        << "replaced: " << stats.replaced << "\n"
        << "unchanged: " << stats.unchanged << "\n"
        << "skipped: " << stats.skipped << "\n";
  }
  return kExitOk;
}

int CmdAnnotate(const Options &o, std::ostream &out, std::ostream &err) {
  GraphStore store;
  LoadIfPresent(store, o.store);
  const Runtime rt = BuildRuntime(o, err);
  const GraphStats before = store.Stats();
  const AnnotateStats stats = AnnotateSections(
      store, *rt.providers.primary.linker, LinkerCfg(o), store.AllSections());
  store.SaveSnapshot(o.store);
  const GraphStats after = store.Stats();
  if (o.format == "json") {
    out << ojson{{"sections", stats.sections},
                 {"mentions", stats.mentions},
                 {"new_edges", after.mention_edges - before.mention_edges},
                 {"entities", after.entities}}
               .dump()
        << "\n";
  } else {
    out << "sections: " << stats.sections << "\n"
        << "mentions: " << stats.mentions << "\n"
        << "new_edges: " << after.mention_edges - before.mention_edges << "\n"
        << "entities: " << after.entities << "\n";
  }
  return kExitOk;
}

int CmdStats(const Options &o, std::ostream &out) {
  GraphStore store;
  LoadIfPresent(store, o.store);
  PrintStats(o, store.Stats(), out);
  return kExitOk;
}

int CmdExport(const Options &o, std::ostream &out) {
  GraphStore store;
  LoadIfPresent(store, o.store);
  store.SaveSnapshot(o.output);
  PrintStats(o, store.Stats(), out);
  return kExitOk;
}

int CmdClaim(const Options &o, std::ostream &out, std::ostream &err) {
  GraphStore store;
  LoadIfPresent(store, o.store);
  const Runtime rt = BuildRuntime(o, err);
  bool degraded = false;
  const ProviderSet *set = SelectProviders(o, rt, &degraded, err);
  if (set == nullptr) {
    throw Error(ErrorCode::kProviderUnavailable, o.scorer_url);
  }
  const ClaimEvaluation evaluation =
      EvaluateClaim(o.text, store, set->view(), LinkerCfg(o), Limits(o));
  if (o.format == "json") {
    ojson j = ToJson(evaluation);
    j["degraded_providers"] = degraded;
    out << j.dump(2) << "\n";
  } else {
    out << Explain(evaluation);
  }
  return kExitOk;
}

int CmdEval(const Options &o, std::ostream &out, std::ostream &err) {
  GraphStore store;
  LoadIfPresent(store, o.store);
  const Runtime rt = BuildRuntime(o, err);
  bool degraded = false;
  const ProviderSet *set = SelectProviders(o, rt, &degraded, err);
  if (set == nullptr) {
    throw Error(ErrorCode::kProviderUnavailable, o.scorer_url);
  }
  EvalOptions options;
  options.linker = LinkerCfg(o);
  options.limits = Limits(o);
  options.jobs = o.jobs;
  if (o.support_min_e >= 0.0) options.thresholds.support_min_e = o.support_min_e;
  if (o.refute_min_c >= 0.0) options.thresholds.refute_min_c = o.refute_min_c;
  const EvalReport report = RunEval(o.dataset, store, set->view(), options);
  if (!o.report.empty()) WriteReport(report, o.report);
  if (o.format == "json") {
    out << MetricsToJson(report.metrics).dump(2) << "\n";
  } else {
    out << FormatSummary(report.metrics);
  }
  return kExitOk;
}

Service *g_service = nullptr;

void StopOnSignal(int) {
  if (g_service != nullptr) g_service->Stop();
}

int CmdServe(const Options &o, std::ostream &err) {
  ServiceConfig config;
  const size_t colon = o.listen.rfind(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "--listen expects host:port");
  }
  config.host = o.listen.substr(0, colon);
  try {
    config.port = std::stoi(o.listen.substr(colon + 1));
  } catch (const std::exception &) {
    throw Error(ErrorCode::kInvalidArgument, "bad port in --listen");
  }
  config.store_path = o.store;
  config.linker = LinkerCfg(o);
  config.limits = Limits(o);
  config.segmentation.min_section_chars = o.min_section_chars;
  config.strict_providers = o.strict_providers;
  Runtime rt = BuildRuntime(o, err);
  Service service(config, std::move(rt.providers));
  service.LoadStore();
  g_service = &service;
  std::signal(SIGINT, StopOnSignal);
  std::signal(SIGTERM, StopOnSignal);
  const bool ok = service.Listen();
  g_service = nullptr;
  if (!ok) {
    throw Error(ErrorCode::kIoFailure, "cannot listen on " + o.listen);
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  Options o;
  CLI::App app{"Entity-graph claim validation engine", "claimgraph"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--store", o.store, "Graph snapshot file")
      ->envname("CLAIMGRAPH_STORE");
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--linker", o.linker, "Entity linker backend")
      ->check(CLI::IsMember({"gazetteer", "wikifier"}));
  app.add_option("--gazetteer", o.gazetteer, "alias<TAB>id<TAB>label file")
      ->envname("CLAIMGRAPH_GAZETTEER");
  app.add_option("--threshold", o.threshold, "Link confidence cutoff")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--language", o.language, "Language tag sent to the linker");
  app.add_option("--wikifier-url", o.wikifier_url, "Wikification endpoint")
      ->envname("CLAIMGRAPH_WIKIFIER_URL");
  app.add_option("--wikifier-key", o.wikifier_key, "Wikifier user key")
      ->envname("CLAIMGRAPH_WIKIFIER_KEY");
  app.add_option("--linker-timeout-ms", o.linker_timeout_ms);
  app.add_option("--sts-provider", o.sts_provider)
      ->check(CLI::IsMember({"reference", "remote"}));
  app.add_option("--nli-provider", o.nli_provider)
      ->check(CLI::IsMember({"reference", "remote"}));
  app.add_option("--scorer-url", o.scorer_url, "Model server base url")
      ->envname("CLAIMGRAPH_SCORER_URL");
  app.add_option("--scorer-timeout-ms", o.scorer_timeout_ms);
  app.add_flag("--strict-providers", o.strict_providers,
               "Fail instead of falling back to reference scorers");

  auto *ingest = app.add_subcommand("ingest", "Ingest an article file");
  ingest->add_option("--input", o.input)->required();
  ingest->add_option("--min-section-chars", o.min_section_chars)
      ->check(CLI::PositiveNumber);

  app.add_subcommand("annotate", "Link entities in every stored section");
  app.add_subcommand("stats", "Print graph counts");

  auto add_limits = [&](CLI::App *cmd) {
    cmd->add_option("--top-k", o.top_k)->check(CLI::PositiveNumber);
    cmd->add_option("--nli-top-k", o.nli_top_k)->check(CLI::PositiveNumber);
    cmd->add_option("--max-candidates", o.max_candidates)
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-hops", o.max_hops, "Default 2(n-1)");
  };
  auto *claim = app.add_subcommand("claim", "Evaluate one claim");
  claim->add_option("--text", o.text)->required();
  add_limits(claim);

  auto *eval = app.add_subcommand("eval", "Evaluate a labeled claim dataset");
  eval->add_option("--dataset", o.dataset)->required();
  eval->add_option("--report", o.report);
  eval->add_option("--support-min-e", o.support_min_e)
      ->check(CLI::Range(0.0, 1.0));
  eval->add_option("--refute-min-c", o.refute_min_c)
      ->check(CLI::Range(0.0, 1.0));
  eval->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
  add_limits(eval);

  auto *serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--listen", o.listen);
  serve->add_option("--min-section-chars", o.min_section_chars)
      ->check(CLI::PositiveNumber);
  add_limits(serve);

  auto *exp = app.add_subcommand("export", "Write the graph snapshot");
  exp->add_option("--output", o.output)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    if (ingest->parsed()) return CmdIngest(o, out, err);
    if (app.got_subcommand("annotate")) return CmdAnnotate(o, out, err);
    if (app.got_subcommand("stats")) return CmdStats(o, out);
    if (claim->parsed()) return CmdClaim(o, out, err);
    if (eval->parsed()) return CmdEval(o, out, err);
    if (serve->parsed()) return CmdServe(o, err);
    if (exp->parsed()) return CmdExport(o, out);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace claimgraph
