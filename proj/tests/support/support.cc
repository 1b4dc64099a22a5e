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


#include "support/support.h"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include "httplib.h"

namespace sftest {

namespace fs = std::filesystem;

std::string FixturePath(std::string_view relative) {
  return (fs::path(SCRIPTFORGE_FIXTURE_DIR) / fs::path(relative)).string();
}

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

nlohmann::json ReadJson(const std::string &path) {
  return nlohmann::json::parse(ReadFile(path));
}

std::string GoldenText(std::string_view name) {
  return ReadFile(FixturePath("golden/" + std::string(name)));
}

nlohmann::json Golden(std::string_view name) {
  return nlohmann::json::parse(GoldenText(name));
}

const scriptforge::Ontology &ProjectOntology() {
  static const scriptforge::Ontology ontology =
      scriptforge::Ontology::FromFile(SCRIPTFORGE_ONTOLOGY);
  return ontology;
}

const scriptforge::KBIndex &FixtureKb() {
  static const scriptforge::KBIndex kb =
      scriptforge::KBIndex::FromFile(FixturePath("kb/wikidata_subset.tsv"));
  return kb;
}

std::vector<std::string> FixtureScriptPaths() {
  std::vector<std::string> paths;
  for (const auto &entry : fs::directory_iterator(FixturePath("scripts"))) {
    if (entry.path().extension() == ".json") paths.push_back(entry.path().string());
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

namespace {

size_t BruteMatched(std::string_view a, std::string_view b) {
  // Longest block, earliest in a then earliest in b, by exhaustive search.
  size_t best = 0, bi = 0, bj = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      size_t k = 0;
      while (i + k < a.size() && j + k < b.size() && a[i + k] == b[j + k]) ++k;
      if (k > best) {
        best = k;
        bi = i;
        bj = j;
      }
    }
  }
  if (best == 0) return 0;
  return best + BruteMatched(a.substr(0, bi), b.substr(0, bj)) +
         BruteMatched(a.substr(bi + best), b.substr(bj + best));
}

}  // namespace

double ReferenceGestalt(std::string_view a, std::string_view b) {
  const size_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(BruteMatched(a, b)) / static_cast<double>(total);
}

std::vector<scriptforge::Edge> ReferenceReduction(
    size_t n, const std::vector<scriptforge::Edge> &edges) {
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (auto [u, v] : edges) reach[u][v] = true;
  for (size_t k = 0; k < n; ++k) {
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::vector<scriptforge::Edge> out;
  for (size_t u = 0; u < n; ++u) {
    for (size_t v = 0; v < n; ++v) {
      if (!reach[u][v]) continue;
      bool implied = false;
      for (size_t w = 0; w < n && !implied; ++w) {
        implied = w != u && w != v && reach[u][w] && reach[w][v];
      }
      if (!implied) out.emplace_back(u, v);
    }
  }
  return out;
}

TempDir::TempDir() {
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    fs::path candidate = fs::temp_directory_path() /
                         ("scriptforge-test-" + std::to_string(rd()));
    if (fs::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create a temp dir");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string ShellQuote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  return out + "'";
}

CommandResult RunCli(const std::string &args) {
  TempDir tmp;
  const std::string out_path = (tmp.path() / "out").string();
  const std::string err_path = (tmp.path() / "err").string();
  const std::string command = ShellQuote(SCRIPTFORGE_CLI) + " " + args + " >" +
                              ShellQuote(out_path) + " 2>" + ShellQuote(err_path);
  const int status = std::system(command.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = ReadFile(out_path);
  result.err = ReadFile(err_path);
  return result;
}

ServerThread::ServerThread(std::unique_ptr<httplib::Server> server)
    : server_(std::move(server)) {
  port_ = server_->bind_to_any_port("127.0.0.1");
  if (port_ <= 0) throw std::runtime_error("cannot bind a test port");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

ServerThread::~ServerThread() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

scriptforge::Clock SteppingClock() {
  auto next = std::make_shared<int64_t>(1700000000);
  return [next] {
    const int64_t now = *next;
    *next += 60;
    return now;
  };
}

nlohmann::json RunWalkthrough(scriptforge::CurationService &service) {
  using scriptforge::EventId;
  using scriptforge::VariableId;
  const scriptforge::ScriptDocument created = service.CreateScript(
      "buying a car", "The process of purchasing a car from a dealership.");
  const std::string id = created.script.id();
  uint64_t v = created.script.version();
  for (const char *step : {"Identify your needs", "Decide on your budget",
                           "Identify car models you can afford"}) {
    v = service.AddEvent(id, v, step).version;
  }
  v = service.SetEventType(id, v, EventId{1}, "Cognitive.IdentifyCategorize").version;
  v = service.SetEventType(id, v, EventId{2}, "Cognitive.Research").version;
  v = service.SetEventType(id, v, EventId{3}, "Cognitive.IdentifyCategorize").version;
  v = service.AddBefore(id, v, EventId{1}, EventId{2}).version;
  v = service.Anchor(id, v, {EventId{3}}, EventId{2},
                     scriptforge::AnchorDirection::kAfter).version;
  v = service.AddVariable(id, v, "buyer", "PER", EventId{1}, "Identifier").version;
  v = service.BindVariable(id, v, VariableId{1}, EventId{2}, "Researcher").version;
  v = service.BindVariable(id, v, VariableId{1}, EventId{3}, "Identifier").version;
  auto set = service.RequestLinkCandidates(id, v, VariableId{1});
  v = service.DecideLink(id, set.version, VariableId{1},
                         set.result["set_version"].get<uint64_t>(), "Q1308177")
          .version;
  auto rec = service.RequestRecommendations(id, v);
  v = rec.version;
  v = service.DecideSuggestion(id, v, 1, scriptforge::SuggestionDecision::kAccepted,
                               std::nullopt)
          .version;
  v = service.DecideSuggestion(id, v, 2, scriptforge::SuggestionDecision::kEdited,
                               "Take a test drive with a mechanic")
          .version;
  v = service.DecideSuggestion(id, v, 3, scriptforge::SuggestionDecision::kRejected,
                               std::nullopt)
          .version;
  service.Anchor(id, v, {EventId{4}, EventId{5}}, EventId{3},
                 scriptforge::AnchorDirection::kAfter);
  return rec.result["report"];
}

}  // namespace sftest
