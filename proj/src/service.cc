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

#include "scriptforge/service.h"

#include <algorithm>
#include <chrono>
#include <filesystem>

#include "scriptforge/text.h"

namespace scriptforge {

using nlohmann::json;

namespace {

constexpr std::string_view kScriptPrefix = "script-";

// Numeric suffix of "script-<n>", 0 for anything else.
uint64_t ScriptNumber(const std::string &id) {
  if (id.rfind(kScriptPrefix, 0) != 0) return 0;
  const std::string digits = id.substr(kScriptPrefix.size());
  if (digits.empty() || digits.size() > 18 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return 0;
  }
  return std::stoull(digits);
}

json EventRef(const Script &script, EventId id) {
  return {{"id", id.value}, {"label", script.Label(id)}};
}

}  // namespace

int64_t SystemSeconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

CurationService::CurationService(const Ontology &ontology, const KBIndex &kb,
                                 EmbeddingProvider &embedder,
                                 GenerationProvider &generator,
                                 ServiceOptions options, Clock clock)
    : ontology_(ontology),
      kb_(kb),
      embedder_(embedder),
      generator_(generator),
      options_(std::move(options)),
      clock_(std::move(clock)) {
  if (options_.displayed_types == 0 || options_.recorded_types == 0) {
    throw Error(ErrorCode::kInvalidArgument, "suggestion depths must be >= 1");
  }
  if (!options_.workspace.empty()) Load();
}

void CurationService::Load() {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(options_.workspace, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create workspace " + options_.workspace + ": " + ec.message());
  }
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(options_.workspace)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const fs::path &file : files) {
    auto entry = std::make_unique<Entry>();
    entry->doc = LoadDocument(file.string());
    const std::string id = entry->doc.script.id();
    next_script_number_ = std::max(next_script_number_, ScriptNumber(id) + 1);
    scripts_.emplace(id, std::move(entry));
  }
}

void CurationService::Persist(const ScriptDocument &doc) const {
  if (options_.workspace.empty()) {
    // Same guard as a save, without touching disk.
    const std::vector<Violation> violations =
        ValidateScript(doc.script.data(), ontology_);
    if (!violations.empty()) {
      throw Error(ErrorCode::kValidationFailed, violations.front().message,
                  {{"code", violations.front().code},
                   {"details", violations.front().details}});
    }
    return;
  }
  const std::filesystem::path path =
      std::filesystem::path(options_.workspace) / (doc.script.id() + ".json");
  SaveDocument(doc, ontology_, path.string());
}

CurationService::Entry &CurationService::Find(const std::string &id) const {
  std::shared_lock lock(registry_mu_);
  auto it = scripts_.find(id);
  if (it == scripts_.end()) {
    throw Error(ErrorCode::kUnknownScript, "no script '" + id + "'", {{"script", id}});
  }
  return *it->second;
}

MutationResult CurationService::Mutate(
    const std::string &id, uint64_t version,
    const std::function<json(ScriptDocument &)> &apply) {
  Entry &entry = Find(id);
  std::lock_guard lock(entry.mu);
  const uint64_t current = entry.doc.script.version();
  if (version != current) {
    throw Error(ErrorCode::kVersionConflict,
                "script '" + id + "' is at version " + std::to_string(current) +
                    ", request was made against " + std::to_string(version),
                {{"expected", version}, {"current", current}});
  }
  ScriptDocument next = entry.doc;
  json result = apply(next);
  Persist(next);
  entry.doc = std::move(next);
  return {entry.doc.script.version(), std::move(result)};
}

ScriptDocument CurationService::CreateScript(const std::string &name,
                                             const std::string &description,
                                             std::optional<std::string> self_reported_time) {
  const std::string clean_name = CollapseWhitespace(name);
  if (clean_name.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "script name must be non-empty");
  }
  std::unique_lock lock(registry_mu_);
  std::string id;
  do {
    id = std::string(kScriptPrefix) + std::to_string(next_script_number_++);
  } while (scripts_.contains(id));
  auto entry = std::make_unique<Entry>();
  entry->doc.script = Script(id, clean_name, CollapseWhitespace(description));
  entry->doc.log.self_reported_time = std::move(self_reported_time);
  Persist(entry->doc);
  ScriptDocument out = entry->doc;
  scripts_.emplace(id, std::move(entry));
  return out;
}

std::vector<ScriptSummary> CurationService::ListScripts() const {
  std::shared_lock lock(registry_mu_);
  std::vector<ScriptSummary> out;
  for (const auto &[id, entry] : scripts_) {
    std::lock_guard entry_lock(entry->mu);
    const Script &s = entry->doc.script;
    out.push_back({id, s.name(), s.version(), s.events().size()});
  }
  return out;
}

ScriptDocument CurationService::GetScript(const std::string &id) const {
  Entry &entry = Find(id);
  std::lock_guard lock(entry.mu);
  return entry.doc;
}

MutationResult CurationService::AddEvent(const std::string &id, uint64_t version,
                                         const std::string &text) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    const EventId e = doc.script.AddEvent(text, Provenance::kCurator, clock_());
    return json{{"event", EventRef(doc.script, e)}};
  });
}

MutationResult CurationService::RemoveEvent(const std::string &id, uint64_t version,
                                            EventId event) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    doc.script.RemoveEvent(event);
    std::erase_if(doc.log.type_records,
                  [event](const SuggestionRecord &r) { return r.event == event; });
    return json{{"removed", event.value}};
  });
}

std::vector<TypeSuggestion> CurationService::TypeSuggestions(const std::string &id,
                                                             EventId event) {
  std::string text;
  {
    Entry &entry = Find(id);
    std::lock_guard lock(entry.mu);
    const Event *e = entry.doc.script.FindEvent(event);
    if (e == nullptr) {
      throw Error(ErrorCode::kUnknownEvent,
                  "unknown event #" + std::to_string(event.value),
                  {{"event", event.value}});
    }
    text = e->text;
  }
  return suggester_.Suggest(text, ontology_, embedder_, options_.displayed_types);
}

MutationResult CurationService::SetEventType(const std::string &id, uint64_t version,
                                             EventId event,
                                             const std::optional<std::string> &type_id) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    if (!type_id) {
      doc.script.AssignEventType(ontology_, event, std::nullopt);
      std::erase_if(doc.log.type_records,
                    [event](const SuggestionRecord &r) { return r.event == event; });
      return json{{"event", EventRef(doc.script, event)}, {"type", nullptr}};
    }
    const Event *e = doc.script.FindEvent(event);
    if (e == nullptr) {
      throw Error(ErrorCode::kUnknownEvent,
                  "unknown event #" + std::to_string(event.value),
                  {{"event", event.value}});
    }
    std::vector<TypeSuggestion> ranked =
        suggester_.Suggest(e->text, ontology_, embedder_, options_.recorded_types);
    RecordTypeChoice(doc.script, doc.log, ontology_, event, ranked, *type_id);
    const SuggestionRecord &record = doc.log.type_records.back();
    return json{{"event", EventRef(doc.script, event)},
                {"type", *type_id},
                {"reciprocal_rank", record.ReciprocalRank()}};
  });
}

MutationResult CurationService::AddBefore(const std::string &id, uint64_t version,
                                          EventId before, EventId after) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    doc.script.AddBefore(before, after);
    return json{{"before", EventRef(doc.script, before)},
                {"after", EventRef(doc.script, after)}};
  });
}

MutationResult CurationService::RemoveBefore(const std::string &id, uint64_t version,
                                             EventId before, EventId after) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    doc.script.RemoveBefore(before, after);
    return json{{"before", before.value}, {"after", after.value}};
  });
}

MutationResult CurationService::Anchor(const std::string &id, uint64_t version,
                                       const std::vector<EventId> &selected,
                                       EventId pivot, AnchorDirection direction) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    const size_t before = doc.script.order().size();
    doc.script.Anchor(selected, pivot, direction);
    return json{{"added", doc.script.order().size() - before}};
  });
}

MutationResult CurationService::AddVariable(const std::string &id, uint64_t version,
                                            const std::string &label,
                                            const std::string &entity_type,
                                            EventId event, const std::string &role) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    const VariableId v = doc.script.AddVariable(ontology_, label, entity_type, event, role);
    return json{{"variable", v.value}};
  });
}

MutationResult CurationService::BindVariable(const std::string &id, uint64_t version,
                                             VariableId variable, EventId event,
                                             const std::string &role) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    doc.script.BindVariable(ontology_, variable, event, role);
    return json{{"variable", variable.value}, {"event", event.value}, {"role", role}};
  });
}

MutationResult CurationService::UnbindVariable(const std::string &id, uint64_t version,
                                               VariableId variable, EventId event,
                                               const std::string &role) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    doc.script.UnbindVariable(variable, event, role);
    return json{{"variable", variable.value},
                {"deleted", doc.script.FindVariable(variable) == nullptr}};
  });
}

MutationResult CurationService::RequestLinkCandidates(const std::string &id,
                                                      uint64_t version,
                                                      VariableId variable) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    const ReferenceVariable *v = doc.script.FindVariable(variable);
    if (v == nullptr) {
      throw Error(ErrorCode::kUnknownVariable,
                  "unknown variable #" + std::to_string(variable.value),
                  {{"variable", variable.value}});
    }
    std::vector<LinkCandidate> candidates = LinkCandidates(kb_, v->label, embedder_);
    const CandidateSet &set =
        PublishCandidateSet(doc.script, doc.log, variable, std::move(candidates));
    return CandidateSetToJson(set);
  });
}

MutationResult CurationService::DecideLink(const std::string &id, uint64_t version,
                                           VariableId variable, uint64_t set_version,
                                           const std::optional<std::string> &qid) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    return LinkDecisionToJson(
        RecordLinkDecision(doc.script, doc.log, variable, set_version, qid));
  });
}

MutationResult CurationService::RequestRecommendations(const std::string &id,
                                                       uint64_t version) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    Recommendation rec = RecommendMissing(doc.script, doc.log.PriorSuggestionTexts(),
                                          generator_, options_.recommender);
    const std::vector<uint32_t> ids = RecordSuggestionBatch(doc.script, doc.log, rec.kept);
    json suggestions = json::array();
    for (size_t i = 0; i < ids.size(); ++i) {
      suggestions.push_back({{"id", ids[i]}, {"text", rec.kept[i]}});
    }
    return json{{"batch", doc.log.next_batch_id - 1},
                {"suggestions", std::move(suggestions)},
                {"report", rec.report.ToJson()}};
  });
}

MutationResult CurationService::DecideSuggestion(
    const std::string &id, uint64_t version, uint32_t suggestion,
    SuggestionDecision decision, const std::optional<std::string> &edited_text) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    const int64_t now = clock_();
    json out{{"suggestion", suggestion},
             {"decision", SuggestionDecisionName(decision)}};
    switch (decision) {
      case SuggestionDecision::kAccepted:
        out["event"] =
            EventRef(doc.script, AcceptSuggestion(doc.script, doc.log, suggestion, now));
        break;
      case SuggestionDecision::kEdited:
        if (!edited_text) {
          throw Error(ErrorCode::kInvalidArgument, "an edit needs edited_text");
        }
        out["event"] = EventRef(
            doc.script, EditSuggestion(doc.script, doc.log, suggestion, *edited_text, now));
        break;
      case SuggestionDecision::kRejected:
        RejectSuggestion(doc.script, doc.log, suggestion);
        break;
      case SuggestionDecision::kPending:
        throw Error(ErrorCode::kInvalidArgument,
                    "decision must be accepted, edited or rejected");
    }
    return out;
  });
}

MutationResult CurationService::RequestNextStep(const std::string &id, uint64_t version) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    Recommendation rec = MixedInitiativeNext(doc.script, generator_, options_.recommender);
    const uint32_t set =
        RecordOptionSet(doc.script, doc.log, rec.prompt.next_number(), rec.kept);
    return json{{"set", set},
                {"step_number", rec.prompt.next_number()},
                {"options", rec.kept},
                {"report", rec.report.ToJson()}};
  });
}

MutationResult CurationService::DecideOptionSet(const std::string &id, uint64_t version,
                                                uint32_t set, OptionAction action,
                                                std::optional<size_t> option,
                                                const std::optional<std::string> &text) {
  return Mutate(id, version, [&](ScriptDocument &doc) {
    const int64_t now = clock_();
    EventId event;
    switch (action) {
      case OptionAction::kAccept:
        if (!option) throw Error(ErrorCode::kInvalidArgument, "accept needs an option");
        event = AcceptOption(doc.script, doc.log, set, *option, now);
        break;
      case OptionAction::kEdit:
        if (!option || !text) {
          throw Error(ErrorCode::kInvalidArgument, "edit needs an option and text");
        }
        event = EditOption(doc.script, doc.log, set, *option, *text, now);
        break;
      case OptionAction::kTypeOwn:
        if (!text) throw Error(ErrorCode::kInvalidArgument, "own step needs text");
        event = TypeOwnStep(doc.script, doc.log, set, *text, now);
        break;
    }
    return json{{"set", set}, {"event", EventRef(doc.script, event)}};
  });
}

json CurationService::Graph(const std::string &id) const {
  Entry &entry = Find(id);
  std::lock_guard lock(entry.mu);
  json j = GraphToJson(ExportGraph(entry.doc.script));
  j["version"] = entry.doc.script.version();
  return j;
}

ScriptReport CurationService::Report(const std::string &id) const {
  Entry &entry = Find(id);
  std::lock_guard lock(entry.mu);
  return BuildScriptReport(entry.doc.script, entry.doc.log);
}

}  // namespace scriptforge
