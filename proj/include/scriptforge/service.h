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

// The curation service core shared by the HTTP API and the CLI.
//
// Scripts live in memory and, when a workspace directory is configured, one
// file per script (<id>.json). Every mutation names the version the caller
// last saw; a mismatch raises VersionConflict. Mutations to one script are
// serialized and each successful one advances the version by exactly one.
// Different scripts proceed in parallel.

#ifndef SCRIPTFORGE_SERVICE_H_
#define SCRIPTFORGE_SERVICE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "scriptforge/document.h"
#include "scriptforge/embedding.h"
#include "scriptforge/entity_linker.h"
#include "scriptforge/error.h"
#include "scriptforge/evaluation.h"
#include "scriptforge/ontology.h"
#include "scriptforge/recommender.h"
#include "scriptforge/type_suggester.h"

namespace httplib {
class Server;
}

namespace scriptforge {

using Clock = std::function<int64_t()>;

// Wall-clock seconds since the epoch.
int64_t SystemSeconds();

struct ServiceOptions {
  std::string workspace;  // empty keeps everything in memory
  RecommenderConfig recommender;
  size_t displayed_types = TypeSuggester::kDefaultK;
  // Depth of the prediction list stored with each type choice, so top-5
  // accuracy can be computed later.
  size_t recorded_types = 5;
};

struct ScriptSummary {
  std::string id;
  std::string name;
  uint64_t version = 0;
  size_t events = 0;
};

// What a mutation returns: the new version and an operation-specific payload.
struct MutationResult {
  uint64_t version = 0;
  nlohmann::json result = nlohmann::json::object();
};

enum class OptionAction { kAccept, kEdit, kTypeOwn };

class CurationService {
 public:
  // Loads every document already in the workspace.
  CurationService(const Ontology &ontology, const KBIndex &kb,
                  EmbeddingProvider &embedder, GenerationProvider &generator,
                  ServiceOptions options = {}, Clock clock = SystemSeconds);

  CurationService(const CurationService &) = delete;
  CurationService &operator=(const CurationService &) = delete;

  ScriptDocument CreateScript(const std::string &name,
                              const std::string &description,
                              std::optional<std::string> self_reported_time = {});
  std::vector<ScriptSummary> ListScripts() const;
  // UnknownScript when absent.
  ScriptDocument GetScript(const std::string &id) const;

  MutationResult AddEvent(const std::string &id, uint64_t version,
                          const std::string &text);
  MutationResult RemoveEvent(const std::string &id, uint64_t version, EventId event);

  // Read-only: top displayed_types suggestions for an event.
  std::vector<TypeSuggestion> TypeSuggestions(const std::string &id, EventId event);
  // Assigns (or with nullopt clears) the type and logs the choice against
  // the ranked suggestions.
  MutationResult SetEventType(const std::string &id, uint64_t version, EventId event,
                              const std::optional<std::string> &type_id);

  MutationResult AddBefore(const std::string &id, uint64_t version, EventId before,
                           EventId after);
  MutationResult RemoveBefore(const std::string &id, uint64_t version,
                              EventId before, EventId after);
  MutationResult Anchor(const std::string &id, uint64_t version,
                        const std::vector<EventId> &selected, EventId pivot,
                        AnchorDirection direction);

  MutationResult AddVariable(const std::string &id, uint64_t version,
                             const std::string &label, const std::string &entity_type,
                             EventId event, const std::string &role);
  MutationResult BindVariable(const std::string &id, uint64_t version,
                              VariableId variable, EventId event,
                              const std::string &role);
  MutationResult UnbindVariable(const std::string &id, uint64_t version,
                                VariableId variable, EventId event,
                                const std::string &role);

  // Retrieves, reranks and publishes a fresh candidate set.
  MutationResult RequestLinkCandidates(const std::string &id, uint64_t version,
                                       VariableId variable);
  MutationResult DecideLink(const std::string &id, uint64_t version,
                            VariableId variable, uint64_t set_version,
                            const std::optional<std::string> &qid);

  MutationResult RequestRecommendations(const std::string &id, uint64_t version);
  MutationResult DecideSuggestion(const std::string &id, uint64_t version,
                                  uint32_t suggestion, SuggestionDecision decision,
                                  const std::optional<std::string> &edited_text);

  MutationResult RequestNextStep(const std::string &id, uint64_t version);
  MutationResult DecideOptionSet(const std::string &id, uint64_t version,
                                 uint32_t set, OptionAction action,
                                 std::optional<size_t> option,
                                 const std::optional<std::string> &text);

  nlohmann::json Graph(const std::string &id) const;
  ScriptReport Report(const std::string &id) const;

  const Ontology &ontology() const { return ontology_; }

 private:
  struct Entry {
    mutable std::mutex mu;
    ScriptDocument doc;
  };

  Entry &Find(const std::string &id) const;
  // Runs `apply` on a copy of the document under the script's lock and
  // commits it when it succeeds and passes validation.
  MutationResult Mutate(const std::string &id, uint64_t version,
                        const std::function<nlohmann::json(ScriptDocument &)> &apply);
  void Persist(const ScriptDocument &doc) const;
  void Load();

  const Ontology &ontology_;
  const KBIndex &kb_;
  EmbeddingProvider &embedder_;
  GenerationProvider &generator_;
  ServiceOptions options_;
  Clock clock_;
  TypeSuggester suggester_;

  mutable std::shared_mutex registry_mu_;
  std::map<std::string, std::unique_ptr<Entry>> scripts_;
  uint64_t next_script_number_ = 1;
};

// HTTP status for an error code.
int HttpStatus(ErrorCode code);

// Mounts the curation API (see docs/formats.md, "HTTP API").
void MountApiRoutes(httplib::Server &server, CurationService &service);

}  // namespace scriptforge

#endif  // SCRIPTFORGE_SERVICE_H_
