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

#include "scriptforge/document.h"

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "scriptforge/error.h"

namespace scriptforge {

using nlohmann::json;

namespace {

const char *const kKnownKeys[] = {"schema_version", "script", "log"};

// ---- encoding

json EventToJson(const Event &e) {
  json j{{"id", e.id.value},
         {"text", e.text},
         {"provenance", ProvenanceName(e.provenance)},
         {"created_at", e.created_at}};
  if (e.event_type) j["event_type"] = *e.event_type;
  return j;
}

json VariableToJson(const ReferenceVariable &v) {
  json parts = json::array();
  for (const Participation &p : v.participations) {
    parts.push_back({{"event", p.event.value}, {"role", p.role}});
  }
  json j{{"id", v.id.value},
         {"label", v.label},
         {"entity_type", v.entity_type},
         {"participations", std::move(parts)}};
  if (v.kb_link) j["kb_link"] = *v.kb_link;
  return j;
}

json TypeRecordToJson(const SuggestionRecord &r) {
  return {{"event", r.event.value},
          {"event_text", r.event_text},
          {"suggestions", TypeSuggestionsToJson(r.suggestions)},
          {"chosen_type", r.chosen_type}};
}

json CandidateToJson(const LinkCandidate &c) {
  return {{"qid", c.entry.qid},
          {"label", c.entry.label},
          {"aliases", c.entry.aliases},
          {"description", c.entry.description},
          {"is_class", c.entry.is_class},
          {"retrieval_score", c.retrieval_score},
          {"rerank_score", c.rerank_score},
          {"rank", c.rank}};
}

// ---- decoding

[[noreturn]] void Corrupt(const std::string &path, const std::string &why) {
  throw Error(ErrorCode::kCorruptDocument, path + ": " + why, {{"path", path}});
}

const json &Field(const json &obj, const char *key, const std::string &path) {
  if (!obj.is_object()) Corrupt(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Corrupt(path + "." + key, "missing");
  return *it;
}

bool Present(const json &obj, const char *key) {
  auto it = obj.find(key);
  return it != obj.end() && !it->is_null();
}

std::string Str(const json &j, const std::string &path) {
  if (!j.is_string()) Corrupt(path, "expected a string");
  return j.get<std::string>();
}

uint64_t U64(const json &j, const std::string &path) {
  if (!j.is_number_unsigned()) Corrupt(path, "expected a non-negative integer");
  return j.get<uint64_t>();
}

uint32_t U32(const json &j, const std::string &path) {
  const uint64_t v = U64(j, path);
  if (v > std::numeric_limits<uint32_t>::max()) Corrupt(path, "out of range");
  return static_cast<uint32_t>(v);
}

int64_t I64(const json &j, const std::string &path) {
  if (!j.is_number_integer()) Corrupt(path, "expected an integer");
  return j.get<int64_t>();
}

double Num(const json &j, const std::string &path) {
  if (!j.is_number()) Corrupt(path, "expected a number");
  return j.get<double>();
}

bool Bool(const json &j, const std::string &path) {
  if (!j.is_boolean()) Corrupt(path, "expected a boolean");
  return j.get<bool>();
}

const json &Array(const json &j, const std::string &path) {
  if (!j.is_array()) Corrupt(path, "expected an array");
  return j;
}

std::string Sub(const std::string &path, const char *key) { return path + "." + key; }
std::string Sub(const std::string &path, size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string StrField(const json &o, const char *key, const std::string &path) {
  return Str(Field(o, key, path), Sub(path, key));
}

std::vector<std::string> StrArray(const json &j, const std::string &path) {
  std::vector<std::string> out;
  for (size_t i = 0; i < Array(j, path).size(); ++i) out.push_back(Str(j[i], Sub(path, i)));
  return out;
}

std::optional<std::string> OptStr(const json &o, const char *key,
                                  const std::string &path) {
  if (!Present(o, key)) return std::nullopt;
  return Str(o.at(key), Sub(path, key));
}

std::optional<EventId> OptEvent(const json &o, const char *key,
                                const std::string &path) {
  if (!Present(o, key)) return std::nullopt;
  return EventId{U32(o.at(key), Sub(path, key))};
}

SuggestionDecision DecisionField(const json &o, const char *key,
                                 const std::string &path) {
  const std::string name = StrField(o, key, path);
  auto d = ParseSuggestionDecision(name);
  if (!d) Corrupt(Sub(path, key), "unknown decision '" + name + "'");
  return *d;
}

ScriptData ScriptFromJson(const json &j, const std::string &path) {
  ScriptData s;
  s.id = StrField(j, "id", path);
  s.name = StrField(j, "name", path);
  s.description = StrField(j, "description", path);
  s.version = U64(Field(j, "version", path), Sub(path, "version"));
  s.next_event_id = U32(Field(j, "next_event_id", path), Sub(path, "next_event_id"));
  s.next_variable_id =
      U32(Field(j, "next_variable_id", path), Sub(path, "next_variable_id"));

  const std::string epath = Sub(path, "events");
  const json &events = Array(Field(j, "events", path), epath);
  for (size_t i = 0; i < events.size(); ++i) {
    const std::string p = Sub(epath, i);
    Event e;
    e.id = EventId{U32(Field(events[i], "id", p), Sub(p, "id"))};
    e.text = StrField(events[i], "text", p);
    e.event_type = OptStr(events[i], "event_type", p);
    const std::string prov = StrField(events[i], "provenance", p);
    auto parsed = ParseProvenance(prov);
    if (!parsed) Corrupt(Sub(p, "provenance"), "unknown provenance '" + prov + "'");
    e.provenance = *parsed;
    e.created_at = I64(Field(events[i], "created_at", p), Sub(p, "created_at"));
    s.events.push_back(std::move(e));
  }

  const std::string vpath = Sub(path, "variables");
  const json &vars = Array(Field(j, "variables", path), vpath);
  for (size_t i = 0; i < vars.size(); ++i) {
    const std::string p = Sub(vpath, i);
    ReferenceVariable v;
    v.id = VariableId{U32(Field(vars[i], "id", p), Sub(p, "id"))};
    v.label = StrField(vars[i], "label", p);
    v.entity_type = StrField(vars[i], "entity_type", p);
    v.kb_link = OptStr(vars[i], "kb_link", p);
    const std::string ppath = Sub(p, "participations");
    const json &parts = Array(Field(vars[i], "participations", p), ppath);
    for (size_t k = 0; k < parts.size(); ++k) {
      const std::string pp = Sub(ppath, k);
      v.participations.push_back(
          {EventId{U32(Field(parts[k], "event", pp), Sub(pp, "event"))},
           StrField(parts[k], "role", pp)});
    }
    s.variables.push_back(std::move(v));
  }

  const std::string opath = Sub(path, "order");
  const json &order = Array(Field(j, "order", path), opath);
  for (size_t i = 0; i < order.size(); ++i) {
    const std::string p = Sub(opath, i);
    s.order.push_back({EventId{U32(Field(order[i], "before", p), Sub(p, "before"))},
                       EventId{U32(Field(order[i], "after", p), Sub(p, "after"))}});
  }
  return s;
}

std::vector<TypeSuggestion> TypeSuggestionsFromJson(const json &j,
                                                    const std::string &path) {
  std::vector<TypeSuggestion> out;
  for (size_t i = 0; i < Array(j, path).size(); ++i) {
    const std::string p = Sub(path, i);
    out.push_back({StrField(j[i], "type_id", p),
                   Num(Field(j[i], "score", p), Sub(p, "score")),
                   static_cast<int>(I64(Field(j[i], "rank", p), Sub(p, "rank")))});
  }
  return out;
}

CandidateSet CandidateSetFromJson(const json &j, const std::string &path) {
  CandidateSet set;
  set.variable = VariableId{U32(Field(j, "variable", path), Sub(path, "variable"))};
  set.label = StrField(j, "label", path);
  set.set_version = U64(Field(j, "set_version", path), Sub(path, "set_version"));
  const std::string cpath = Sub(path, "candidates");
  const json &cands = Array(Field(j, "candidates", path), cpath);
  for (size_t i = 0; i < cands.size(); ++i) {
    const std::string p = Sub(cpath, i);
    LinkCandidate c;
    c.entry.qid = StrField(cands[i], "qid", p);
    c.entry.label = StrField(cands[i], "label", p);
    c.entry.aliases = StrArray(Field(cands[i], "aliases", p), Sub(p, "aliases"));
    c.entry.description = StrField(cands[i], "description", p);
    c.entry.is_class = Bool(Field(cands[i], "is_class", p), Sub(p, "is_class"));
    c.retrieval_score =
        Num(Field(cands[i], "retrieval_score", p), Sub(p, "retrieval_score"));
    c.rerank_score = Num(Field(cands[i], "rerank_score", p), Sub(p, "rerank_score"));
    c.rank = static_cast<int>(I64(Field(cands[i], "rank", p), Sub(p, "rank")));
    set.candidates.push_back(std::move(c));
  }
  return set;
}

CurationLog LogFromJson(const json &j, const std::string &path) {
  CurationLog log;
  const std::string tpath = Sub(path, "type_records");
  const json &records = Array(Field(j, "type_records", path), tpath);
  for (size_t i = 0; i < records.size(); ++i) {
    const std::string p = Sub(tpath, i);
    SuggestionRecord r;
    r.event = EventId{U32(Field(records[i], "event", p), Sub(p, "event"))};
    r.event_text = StrField(records[i], "event_text", p);
    r.suggestions = TypeSuggestionsFromJson(Field(records[i], "suggestions", p),
                                            Sub(p, "suggestions"));
    r.chosen_type = StrField(records[i], "chosen_type", p);
    log.type_records.push_back(std::move(r));
  }

  const std::string spath = Sub(path, "suggestions");
  const json &suggestions = Array(Field(j, "suggestions", path), spath);
  for (size_t i = 0; i < suggestions.size(); ++i) {
    const std::string p = Sub(spath, i);
    const json &o = suggestions[i];
    EventSuggestion s;
    s.id = U32(Field(o, "id", p), Sub(p, "id"));
    s.batch = U32(Field(o, "batch", p), Sub(p, "batch"));
    s.text = StrField(o, "text", p);
    const std::string source = StrField(o, "source", p);
    auto parsed = ParseSuggestionSource(source);
    if (!parsed) Corrupt(Sub(p, "source"), "unknown source '" + source + "'");
    s.source = *parsed;
    s.decision = DecisionField(o, "decision", p);
    s.edited_text = OptStr(o, "edited_text", p);
    s.event = OptEvent(o, "event", p);
    log.suggestions.push_back(std::move(s));
  }

  const std::string opath = Sub(path, "option_sets");
  const json &sets = Array(Field(j, "option_sets", path), opath);
  for (size_t i = 0; i < sets.size(); ++i) {
    const std::string p = Sub(opath, i);
    const json &o = sets[i];
    OptionSet set;
    set.id = U32(Field(o, "id", p), Sub(p, "id"));
    set.step_number = static_cast<int>(I64(Field(o, "step_number", p), Sub(p, "step_number")));
    set.options = StrArray(Field(o, "options", p), Sub(p, "options"));
    set.outcome = DecisionField(o, "outcome", p);
    if (Present(o, "chosen")) set.chosen = U64(o.at("chosen"), Sub(p, "chosen"));
    set.final_text = OptStr(o, "final_text", p);
    set.event = OptEvent(o, "event", p);
    log.option_sets.push_back(std::move(set));
  }

  const std::string cpath = Sub(path, "candidate_sets");
  const json &csets = Array(Field(j, "candidate_sets", path), cpath);
  for (size_t i = 0; i < csets.size(); ++i) {
    log.candidate_sets.push_back(CandidateSetFromJson(csets[i], Sub(cpath, i)));
  }

  const std::string dpath = Sub(path, "link_decisions");
  const json &decisions = Array(Field(j, "link_decisions", path), dpath);
  for (size_t i = 0; i < decisions.size(); ++i) {
    const std::string p = Sub(dpath, i);
    const json &o = decisions[i];
    LinkDecision d;
    d.variable = VariableId{U32(Field(o, "variable", p), Sub(p, "variable"))};
    d.label = StrField(o, "label", p);
    d.set_version = U64(Field(o, "set_version", p), Sub(p, "set_version"));
    d.offered = StrArray(Field(o, "offered", p), Sub(p, "offered"));
    d.chosen = OptStr(o, "chosen", p);
    log.link_decisions.push_back(std::move(d));
  }

  log.self_reported_time = OptStr(j, "self_reported_time", path);
  log.next_suggestion_id =
      U32(Field(j, "next_suggestion_id", path), Sub(path, "next_suggestion_id"));
  log.next_batch_id = U32(Field(j, "next_batch_id", path), Sub(path, "next_batch_id"));
  log.next_set_id = U32(Field(j, "next_set_id", path), Sub(path, "next_set_id"));
  log.next_candidate_set_version =
      U64(Field(j, "next_candidate_set_version", path),
          Sub(path, "next_candidate_set_version"));
  return log;
}

}  // namespace

json ScriptToJson(const ScriptData &s) {
  json events = json::array();
  for (const Event &e : s.events) events.push_back(EventToJson(e));
  json vars = json::array();
  for (const ReferenceVariable &v : s.variables) vars.push_back(VariableToJson(v));
  json order = json::array();
  for (const OrderRelation &r : s.order) {
    order.push_back({{"before", r.before.value}, {"after", r.after.value}});
  }
  return {{"id", s.id},
          {"name", s.name},
          {"description", s.description},
          {"version", s.version},
          {"next_event_id", s.next_event_id},
          {"next_variable_id", s.next_variable_id},
          {"events", std::move(events)},
          {"variables", std::move(vars)},
          {"order", std::move(order)}};
}

json TypeSuggestionsToJson(const std::vector<TypeSuggestion> &s) {
  json out = json::array();
  for (const TypeSuggestion &t : s) {
    out.push_back({{"type_id", t.type_id}, {"score", t.score}, {"rank", t.rank}});
  }
  return out;
}

json CandidateSetToJson(const CandidateSet &set) {
  json cands = json::array();
  for (const LinkCandidate &c : set.candidates) cands.push_back(CandidateToJson(c));
  return {{"variable", set.variable.value},
          {"label", set.label},
          {"set_version", set.set_version},
          {"candidates", std::move(cands)}};
}

json LinkDecisionToJson(const LinkDecision &d) {
  json j{{"variable", d.variable.value},
         {"label", d.label},
         {"set_version", d.set_version},
         {"offered", d.offered}};
  if (d.chosen) j["chosen"] = *d.chosen;
  return j;
}

json SuggestionToJson(const EventSuggestion &s) {
  json j{{"id", s.id},
         {"batch", s.batch},
         {"text", s.text},
         {"source", SuggestionSourceName(s.source)},
         {"decision", SuggestionDecisionName(s.decision)}};
  if (s.edited_text) j["edited_text"] = *s.edited_text;
  if (s.event) j["event"] = s.event->value;
  return j;
}

json OptionSetToJson(const OptionSet &s) {
  json j{{"id", s.id},
         {"step_number", s.step_number},
         {"options", s.options},
         {"outcome", SuggestionDecisionName(s.outcome)}};
  if (s.chosen) j["chosen"] = *s.chosen;
  if (s.final_text) j["final_text"] = *s.final_text;
  if (s.event) j["event"] = s.event->value;
  return j;
}

json LogToJson(const CurationLog &log) {
  json records = json::array();
  for (const SuggestionRecord &r : log.type_records) records.push_back(TypeRecordToJson(r));
  json suggestions = json::array();
  for (const EventSuggestion &s : log.suggestions) suggestions.push_back(SuggestionToJson(s));
  json sets = json::array();
  for (const OptionSet &s : log.option_sets) sets.push_back(OptionSetToJson(s));
  json csets = json::array();
  for (const CandidateSet &c : log.candidate_sets) csets.push_back(CandidateSetToJson(c));
  json decisions = json::array();
  for (const LinkDecision &d : log.link_decisions) {
    decisions.push_back(LinkDecisionToJson(d));
  }
  json j{{"type_records", std::move(records)},
         {"suggestions", std::move(suggestions)},
         {"option_sets", std::move(sets)},
         {"candidate_sets", std::move(csets)},
         {"link_decisions", std::move(decisions)},
         {"next_suggestion_id", log.next_suggestion_id},
         {"next_batch_id", log.next_batch_id},
         {"next_set_id", log.next_set_id},
         {"next_candidate_set_version", log.next_candidate_set_version}};
  if (log.self_reported_time) j["self_reported_time"] = *log.self_reported_time;
  return j;
}

json DocumentToJson(const ScriptDocument &doc) {
  json j = doc.extra.is_object() ? doc.extra : json::object();
  j["schema_version"] = doc.schema_version;
  j["script"] = ScriptToJson(doc.script.data());
  j["log"] = LogToJson(doc.log);
  return j;
}

ScriptDocument DocumentFromJson(const json &j) {
  if (!j.is_object()) Corrupt("$", "expected an object");
  const json &version = Field(j, "schema_version", "$");
  if (!version.is_number_integer()) Corrupt("$.schema_version", "expected an integer");
  const int64_t v = version.get<int64_t>();
  if (v > kSchemaVersion) {
    throw Error(ErrorCode::kSchemaVersionMismatch,
                "document schema_version " + std::to_string(v) +
                    " is newer than supported version " +
                    std::to_string(kSchemaVersion),
                {{"found", v}, {"supported", kSchemaVersion}});
  }
  if (v < 1) Corrupt("$.schema_version", "must be >= 1");
  ScriptDocument doc;
  doc.schema_version = static_cast<int>(v);
  doc.script = Script(ScriptFromJson(Field(j, "script", "$"), "$.script"));
  doc.log = LogFromJson(Field(j, "log", "$"), "$.log");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char *k : kKnownKeys) known = known || it.key() == k;
    if (!known) doc.extra[it.key()] = it.value();
  }
  return doc;
}

ScriptDocument ParseDocument(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::kCorruptDocument,
                std::string("not valid JSON: ") + e.what(),
                {{"path", "$"}, {"byte", e.byte}});
  }
  return DocumentFromJson(j);
}

std::string SerializeDocument(const ScriptDocument &doc) {
  // nlohmann's default object type is an ordered std::map, so keys come out
  // sorted; numbers use the shortest round-trip form.
  return DocumentToJson(doc).dump(2) + "\n";
}

ScriptDocument LoadDocument(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path, {{"path", path}});
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseDocument(buffer.str());
}

void SaveDocument(const ScriptDocument &doc, const Ontology &ontology,
                  const std::string &path) {
  const std::vector<Violation> violations =
      ValidateScript(doc.script.data(), ontology);
  if (!violations.empty()) {
    json details = json::array();
    for (const Violation &v : violations) {
      details.push_back({{"code", v.code}, {"message", v.message}, {"details", v.details}});
    }
    throw Error(ErrorCode::kValidationFailed,
                "refusing to save script '" + doc.script.id() + "': " +
                    violations.front().message,
                {{"violations", std::move(details)}});
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp, {{"path", tmp}});
    out << SerializeDocument(doc);
    if (!out) throw Error(ErrorCode::kIoError, "short write to " + tmp, {{"path", tmp}});
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError, "cannot replace " + path + ": " + ec.message(),
                {{"path", path}});
  }
}

}  // namespace scriptforge
