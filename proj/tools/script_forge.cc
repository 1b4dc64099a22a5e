// Copyright 2026 The Script Forge Authors.
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

// script-forge: batch commands over script documents plus the API server.
//
// Exit status: 0 success, 1 validation or domain failure (error JSON on
// stderr), 2 usage error.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "httplib.h"
#include "scriptforge/document.h"
#include "scriptforge/entity_linker.h"
#include "scriptforge/error.h"
#include "scriptforge/evaluation.h"
#include "scriptforge/providers.h"
#include "scriptforge/recommender.h"
#include "scriptforge/service.h"
#include "scriptforge/type_suggester.h"

#ifndef SCRIPTFORGE_DEFAULT_ONTOLOGY
#define SCRIPTFORGE_DEFAULT_ONTOLOGY "ontology/project.yaml"
#endif
#ifndef SCRIPTFORGE_DEFAULT_KB
#define SCRIPTFORGE_DEFAULT_KB "fixtures/kb/wikidata_subset.tsv"
#endif
#ifndef SCRIPTFORGE_DEFAULT_TRANSCRIPTS
#define SCRIPTFORGE_DEFAULT_TRANSCRIPTS "fixtures/transcripts"
#endif

namespace sf = scriptforge;
using nlohmann::json;

namespace {

struct Globals {
  std::string provider = "stub";
  std::string provider_url = "http://127.0.0.1:8601";
  std::string ontology = SCRIPTFORGE_DEFAULT_ONTOLOGY;
  std::string kb = SCRIPTFORGE_DEFAULT_KB;
  std::string transcripts = SCRIPTFORGE_DEFAULT_TRANSCRIPTS;
  std::optional<uint64_t> seed;
  bool json_out = false;
};

struct Providers {
  std::unique_ptr<sf::EmbeddingProvider> embedder;
  std::unique_ptr<sf::GenerationProvider> generator;
};

Providers MakeProviders(const Globals &g) {
  Providers p;
  if (g.provider == "remote") {
    p.embedder = std::make_unique<sf::RemoteEmbeddingProvider>(g.provider_url);
    p.generator = std::make_unique<sf::RemoteGenerationProvider>(g.provider_url);
  } else {
    p.embedder = std::make_unique<sf::StubEmbeddingProvider>();
    auto scripted = std::make_unique<sf::ScriptedGenerationProvider>();
    if (std::filesystem::is_directory(g.transcripts)) {
      *scripted = sf::ScriptedGenerationProvider::FromDirectory(g.transcripts);
    } else if (std::filesystem::exists(g.transcripts)) {
      *scripted = sf::ScriptedGenerationProvider::FromFile(g.transcripts);
    }
    p.generator = std::move(scripted);
  }
  return p;
}

void Print(const json &j) { std::cout << j.dump(2) << "\n"; }

json ViolationsJson(const std::vector<sf::Violation> &violations) {
  json out = json::array();
  for (const sf::Violation &v : violations) {
    out.push_back({{"code", v.code}, {"message", v.message}, {"details", v.details}});
  }
  return out;
}

bool EndsWith(const std::string &s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int Validate(const Globals &g, const std::vector<std::string> &files) {
  const sf::Ontology ontology = sf::Ontology::FromFile(g.ontology);
  bool all_ok = true;
  json results = json::array();
  for (const std::string &file : files) {
    const sf::ScriptDocument doc = sf::LoadDocument(file);
    const auto violations = sf::ValidateScript(doc.script.data(), ontology);
    all_ok = all_ok && violations.empty();
    results.push_back({{"file", file},
                       {"script", doc.script.id()},
                       {"valid", violations.empty()},
                       {"violations", ViolationsJson(violations)}});
    if (!g.json_out) {
      std::cout << file << ": " << (violations.empty() ? "ok" : "INVALID") << "\n";
      for (const sf::Violation &v : violations) {
        std::cout << "  " << v.code << ": " << v.message << "\n";
      }
    }
  }
  if (g.json_out) Print({{"results", results}});
  return all_ok ? 0 : 1;
}

int Report(const Globals &g, const std::vector<std::string> &files) {
  std::vector<sf::ScriptReport> reports;
  sf::LogBundle pooled;
  sf::LogBundle from_logs;
  bool have_logs = false;
  for (const std::string &file : files) {
    if (EndsWith(file, ".jsonl")) {
      sf::LogBundle b = sf::ReadLogFile(file);
      have_logs = true;
      from_logs.type_records.insert(from_logs.type_records.end(), b.type_records.begin(),
                                    b.type_records.end());
      from_logs.suggestions.insert(from_logs.suggestions.end(), b.suggestions.begin(),
                                   b.suggestions.end());
      from_logs.option_sets.insert(from_logs.option_sets.end(), b.option_sets.begin(),
                                   b.option_sets.end());
      continue;
    }
    const sf::ScriptDocument doc = sf::LoadDocument(file);
    reports.push_back(sf::BuildScriptReport(doc.script, doc.log));
    for (const auto &r : sf::ToRankedRecords(doc.log.type_records)) {
      pooled.type_records.push_back(r);
    }
    pooled.suggestions.insert(pooled.suggestions.end(), doc.log.suggestions.begin(),
                              doc.log.suggestions.end());
    pooled.option_sets.insert(pooled.option_sets.end(), doc.log.option_sets.begin(),
                              doc.log.option_sets.end());
  }
  if (g.json_out) {
    json out = json::object();
    json scripts = json::array();
    for (const sf::ScriptReport &r : reports) scripts.push_back(r.ToJson());
    out["scripts"] = std::move(scripts);
    if (!reports.empty()) out["pooled"] = sf::BundleMetrics(pooled);
    if (have_logs) out["logs"] = sf::BundleMetrics(from_logs);
    Print(out);
    return 0;
  }
  if (!reports.empty()) {
    std::cout << sf::RenderReportTable(reports);
    const json m = sf::BundleMetrics(pooled);
    if (m.contains("top1")) {
      std::cout << "\nAll scripts: top-1/3/5 = " << sf::DisplayPercent(m["top1"]) << "-"
                << sf::DisplayPercent(m["top3"]) << "-" << sf::DisplayPercent(m["top5"])
                << " over " << m["type_records"].get<size_t>() << " events, MRR@3 = "
                << std::fixed << std::setprecision(2) << m["mrr_at_3"].get<double>()
                << "\n";
      std::cout.unsetf(std::ios::floatfield);
    }
  }
  if (have_logs) {
    const json m = sf::BundleMetrics(from_logs);
    if (!reports.empty()) std::cout << "\n";
    std::cout << "Logs:\n" << m.dump(2) << "\n";
  }
  return 0;
}

int SuggestTypes(const Globals &g, const std::string &file, size_t k) {
  const sf::Ontology ontology = sf::Ontology::FromFile(g.ontology);
  const sf::ScriptDocument doc = sf::LoadDocument(file);
  Providers p = MakeProviders(g);
  sf::TypeSuggester suggester;
  json out = json::array();
  for (const sf::Event &e : doc.script.events()) {
    out.push_back({{"event", e.id.value},
                   {"label", doc.script.Label(e.id)},
                   {"text", e.text},
                   {"suggestions",
                    sf::TypeSuggestionsToJson(suggester.Suggest(e.text, ontology, *p.embedder, k))}});
  }
  if (g.json_out) {
    Print({{"script", doc.script.id()}, {"events", out}});
  } else {
    for (const json &e : out) {
      std::cout << e["label"].get<std::string>() << "  " << e["text"].get<std::string>()
                << "\n";
      for (const json &s : e["suggestions"]) {
        std::cout << "    " << s["rank"] << ". " << s["type_id"].get<std::string>() << "  "
                  << s["score"].get<double>() << "\n";
      }
    }
  }
  return 0;
}

int Link(const Globals &g, const std::string &file) {
  const sf::ScriptDocument doc = sf::LoadDocument(file);
  const sf::KBIndex kb = sf::KBIndex::FromFile(g.kb);
  Providers p = MakeProviders(g);
  json out = json::array();
  for (const sf::ReferenceVariable &v : doc.script.variables()) {
    json cands = json::array();
    for (const sf::LinkCandidate &c : sf::LinkCandidates(kb, v.label, *p.embedder)) {
      cands.push_back({{"qid", c.entry.qid},
                       {"label", c.entry.label},
                       {"description", c.entry.description},
                       {"retrieval_score", c.retrieval_score},
                       {"rerank_score", c.rerank_score},
                       {"rank", c.rank}});
    }
    out.push_back({{"variable", v.id.value}, {"label", v.label}, {"candidates", cands}});
  }
  if (g.json_out) {
    Print({{"script", doc.script.id()}, {"variables", out}});
  } else {
    for (const json &v : out) {
      std::cout << v["label"].get<std::string>() << "\n";
      for (const json &c : v["candidates"]) {
        std::cout << "    " << c["rank"] << ". " << c["qid"].get<std::string>() << "  "
                  << c["label"].get<std::string>() << "  " << c["rerank_score"].get<double>()
                  << "\n";
      }
      std::cout << "    -  none of the above\n";
    }
  }
  return 0;
}

int Recommend(const Globals &g, const std::string &file, const std::string &mode) {
  const sf::ScriptDocument doc = sf::LoadDocument(file);
  Providers p = MakeProviders(g);
  sf::RecommenderConfig config;
  config.seed = g.seed;
  const sf::Recommendation rec =
      mode == "next" ? sf::MixedInitiativeNext(doc.script, *p.generator, config)
                     : sf::RecommendMissing(doc.script, doc.log.PriorSuggestionTexts(),
                                            *p.generator, config);
  if (g.json_out) {
    Print({{"script", doc.script.id()},
           {"mode", mode},
           {"prompt", rec.prompt.rendered},
           {"kept", rec.kept},
           {"report", rec.report.ToJson()}});
  } else {
    for (size_t i = 0; i < rec.kept.size(); ++i) {
      std::cout << (i + 1) << ". " << rec.kept[i] << "\n";
    }
    std::cout << "(" << rec.kept.size() << " kept of "
              << rec.report.dispositions.size() << " candidates, parse loss "
              << rec.report.parse_loss << ")\n";
  }
  return 0;
}

int ExportGraph(const std::string &file) {
  const sf::ScriptDocument doc = sf::LoadDocument(file);
  Print(sf::GraphToJson(sf::ExportGraph(doc.script)));
  return 0;
}

int ExportLogs(const std::vector<std::string> &files) {
  for (const std::string &file : files) {
    const sf::ScriptDocument doc = sf::LoadDocument(file);
    std::cout << sf::WriteLogLines(doc.script.id(), doc.log);
  }
  return 0;
}

httplib::Server *g_server = nullptr;

void StopServer(int) {
  if (g_server != nullptr) g_server->stop();
}

int Serve(const Globals &g, const std::string &host, int port, const std::string &workspace,
          bool with_provider_routes) {
  const sf::Ontology ontology = sf::Ontology::FromFile(g.ontology);
  const sf::KBIndex kb = sf::KBIndex::FromFile(g.kb);
  Providers p = MakeProviders(g);
  sf::ServiceOptions options;
  options.workspace = workspace;
  options.recommender.seed = g.seed;
  sf::CurationService service(ontology, kb, *p.embedder, *p.generator, options);
  httplib::Server server;
  sf::MountApiRoutes(server, service);
  if (with_provider_routes) sf::MountProviderRoutes(server, *p.embedder, *p.generator);
  g_server = &server;
  std::signal(SIGINT, StopServer);
  std::signal(SIGTERM, StopServer);
  std::cerr << "script-forge listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    throw sf::Error(sf::ErrorCode::kIoError,
                    "cannot listen on " + host + ":" + std::to_string(port));
  }
  return 0;
}

int StubProvider(const Globals &g, const std::string &host, int port) {
  Globals stub = g;
  stub.provider = "stub";
  Providers p = MakeProviders(stub);
  httplib::Server server;
  sf::MountProviderRoutes(server, *p.embedder, *p.generator);
  g_server = &server;
  std::signal(SIGINT, StopServer);
  std::signal(SIGTERM, StopServer);
  std::cerr << "stub provider listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    throw sf::Error(sf::ErrorCode::kIoError,
                    "cannot listen on " + host + ":" + std::to_string(port));
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"script-forge: interactive script curation engine"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--provider", g.provider, "Provider backend")
      ->check(CLI::IsMember({"stub", "remote"}));
  app.add_option("--provider-url", g.provider_url, "Base URL of a remote provider");
  app.add_option("--ontology", g.ontology, "Ontology file");
  app.add_option("--kb", g.kb, "Knowledge base TSV");
  app.add_option("--transcripts", g.transcripts,
                 "Transcript file or directory for the stub generator");
  std::optional<uint64_t> seed;
  app.add_option("--seed", seed, "Generation seed passed to the provider");
  app.add_flag("--json", g.json_out, "Machine-readable output");

  std::vector<std::string> files;
  std::string file;
  size_t k = 3;
  std::string mode = "post";
  std::string host = "127.0.0.1";
  int port = 8600;
  std::string workspace = "workspace";
  bool with_provider_routes = false;

  CLI::App *validate = app.add_subcommand("validate", "Check script invariants");
  validate->add_option("scripts", files, "Script documents")->required();
  CLI::App *report = app.add_subcommand("report", "Summary table over scripts and/or logs");
  report->add_option("inputs", files, "Script documents (.json) or logs (.jsonl)")
      ->required();
  CLI::App *suggest = app.add_subcommand("suggest-types", "Rank event types per event");
  suggest->add_option("script", file, "Script document")->required();
  suggest->add_option("-k", k, "Suggestions per event")->check(CLI::PositiveNumber);
  CLI::App *link = app.add_subcommand("link", "Knowledge-base candidates per variable");
  link->add_option("script", file, "Script document")->required();
  CLI::App *recommend = app.add_subcommand("recommend", "Suggest missing or next events");
  recommend->add_option("script", file, "Script document")->required();
  recommend->add_option("--mode", mode, "post (missing events) or next (next step)")
      ->check(CLI::IsMember({"post", "next"}));
  CLI::App *graph = app.add_subcommand("export-graph", "Graph view of a script");
  graph->add_option("script", file, "Script document")->required();
  CLI::App *logs = app.add_subcommand("export-logs", "Curation logs as JSON lines");
  logs->add_option("scripts", files, "Script documents")->required();
  CLI::App *serve = app.add_subcommand("serve", "Run the curation HTTP API");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port");
  serve->add_option("--workspace", workspace, "Directory holding script documents");
  serve->add_flag("--with-provider-routes", with_provider_routes,
                  "Also serve /embed, /generate and /info from the configured providers");
  CLI::App *stub = app.add_subcommand("stub-provider", "Serve the stub provider protocol");
  stub->add_option("--host", host, "Bind address");
  stub->add_option("--port", port, "Port")->default_val(8601);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  g.seed = seed;

  try {
    if (*validate) return Validate(g, files);
    if (*report) return Report(g, files);
    if (*suggest) return SuggestTypes(g, file, k);
    if (*link) return Link(g, file);
    if (*recommend) return Recommend(g, file, mode);
    if (*graph) return ExportGraph(file);
    if (*logs) return ExportLogs(files);
    if (*serve) return Serve(g, host, port, workspace, with_provider_routes);
    if (*stub) return StubProvider(g, host, port);
  } catch (const sf::Error &e) {
    std::cerr << e.ToJson().dump() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}, {"details", json::object()}}
                     .dump()
              << "\n";
    return 1;
  }
  return 2;
}
