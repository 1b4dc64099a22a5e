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

// The persisted script document: the script plus its curation log, as JSON
// with sorted keys and two-space indentation. Absent optional fields are
// omitted. Unknown top-level keys survive a load/save cycle untouched.

#ifndef SCRIPTFORGE_DOCUMENT_H_
#define SCRIPTFORGE_DOCUMENT_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "scriptforge/curation_log.h"
#include "scriptforge/ontology.h"
#include "scriptforge/script.h"

namespace scriptforge {

inline constexpr int kSchemaVersion = 1;

struct ScriptDocument {
  int schema_version = kSchemaVersion;
  Script script;
  CurationLog log;
  nlohmann::json extra = nlohmann::json::object();  // unknown top-level keys

  bool operator==(const ScriptDocument &) const = default;
};

nlohmann::json ScriptToJson(const ScriptData &script);
nlohmann::json LogToJson(const CurationLog &log);
nlohmann::json DocumentToJson(const ScriptDocument &doc);

nlohmann::json TypeSuggestionsToJson(const std::vector<TypeSuggestion> &s);
nlohmann::json CandidateSetToJson(const CandidateSet &set);
nlohmann::json LinkDecisionToJson(const LinkDecision &d);
nlohmann::json SuggestionToJson(const EventSuggestion &s);
nlohmann::json OptionSetToJson(const OptionSet &s);

// Structural decoding only: the result may still break script invariants
// (a cycle, a bad role), which ValidateScript reports. Throws
// SchemaVersionMismatch for a newer schema and CorruptDocument with a JSON
// path for anything malformed.
ScriptDocument DocumentFromJson(const nlohmann::json &j);
ScriptDocument ParseDocument(std::string_view text);

// Byte-stable text form, newline-terminated.
std::string SerializeDocument(const ScriptDocument &doc);

ScriptDocument LoadDocument(const std::string &path);
// Refuses (ValidationFailed, with the violations as details) to write a
// document whose script breaks an invariant.
void SaveDocument(const ScriptDocument &doc, const Ontology &ontology,
                  const std::string &path);

}  // namespace scriptforge

#endif  // SCRIPTFORGE_DOCUMENT_H_
