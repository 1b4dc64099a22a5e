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


// Helpers shared by the unit tests and the acceptance runner: fixture paths,
// brute-force reference implementations, temp dirs, subprocesses, and an
// in-process HTTP server.

#ifndef SCRIPTFORGE_TESTS_SUPPORT_H_
#define SCRIPTFORGE_TESTS_SUPPORT_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "scriptforge/entity_linker.h"
#include "scriptforge/ontology.h"
#include "scriptforge/order_graph.h"
#include "scriptforge/service.h"

namespace httplib {
class Server;
}

namespace sftest {

std::string FixturePath(std::string_view relative);
std::string ReadFile(const std::string &path);
nlohmann::json ReadJson(const std::string &path);
std::string GoldenText(std::string_view name);
nlohmann::json Golden(std::string_view name);

// Loaded once per process.
const scriptforge::Ontology &ProjectOntology();
const scriptforge::KBIndex &FixtureKb();

// The five curated fixture scripts, sorted by file name.
std::vector<std::string> FixtureScriptPaths();

// Reference gestalt: enumerates every block by brute force. Independent of
// the library's matcher.
double ReferenceGestalt(std::string_view a, std::string_view b);

// Reference reduction: keeps u->v iff no path u->w->v exists.
std::vector<scriptforge::Edge> ReferenceReduction(
    size_t n, const std::vector<scriptforge::Edge> &edges);

// Clock for service tests: 1700000000, then +60 per call.
scriptforge::Clock SteppingClock();

// The buying-a-car curation session frozen in golden/walkthrough_*.json.
// Returns the filter report of the recommendation request.
nlohmann::json RunWalkthrough(scriptforge::CurationService &service);

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the built CLI with `args` (already shell-quoted where needed).
CommandResult RunCli(const std::string &args);

std::string ShellQuote(std::string_view s);

// Binds to 127.0.0.1 on a free port and serves on a background thread.
class ServerThread {
 public:
  explicit ServerThread(std::unique_ptr<httplib::Server> server);
  ~ServerThread();
  ServerThread(const ServerThread &) = delete;
  ServerThread &operator=(const ServerThread &) = delete;

  int port() const { return port_; }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  httplib::Server &server() { return *server_; }

 private:
  std::unique_ptr<httplib::Server> server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace sftest

#endif  // SCRIPTFORGE_TESTS_SUPPORT_H_
