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

// A script is a named complex event: curator-entered sub-events connected by
// a strict partial temporal order and by shared arguments (reference
// variables). Every mutation either succeeds and bumps the version, or throws
// and leaves the script untouched.

#ifndef SCRIPTFORGE_SCRIPT_H_
#define SCRIPTFORGE_SCRIPT_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "scriptforge/ontology.h"

namespace scriptforge {

struct EventId {
  uint32_t value = 0;
  auto operator<=>(const EventId &) const = default;
};

struct VariableId {
  uint32_t value = 0;
  auto operator<=>(const VariableId &) const = default;
};

enum class Provenance { kCurator, kMachineAccepted, kMachineEdited };

std::string_view ProvenanceName(Provenance p);
std::optional<Provenance> ParseProvenance(std::string_view name);

enum class AnchorDirection { kBefore, kAfter };

struct Event {
  EventId id;
  std::string text;
  std::optional<std::string> event_type;
  Provenance provenance = Provenance::kCurator;
  int64_t created_at = 0;  // seconds since epoch

  bool operator==(const Event &) const = default;
};

struct Participation {
  EventId event;
  std::string role;
  auto operator<=>(const Participation &) const = default;
};

struct ReferenceVariable {
  VariableId id;
  std::string label;
  std::string entity_type;
  std::optional<std::string> kb_link;
  std::vector<Participation> participations;  // sorted, unique

  bool operator==(const ReferenceVariable &) const = default;
};

struct OrderRelation {
  EventId before;
  EventId after;
  bool operator==(const OrderRelation &) const = default;
};

// Plain data behind a Script. Loading a document produces ScriptData without
// checks; ValidateScript reports what is wrong with it.
struct ScriptData {
  std::string id;
  std::string name;
  std::string description;
  std::vector<Event> events;  // creation order
  std::vector<ReferenceVariable> variables;
  std::vector<OrderRelation> order;  // as entered by the curator
  uint64_t version = 0;
  uint32_t next_event_id = 1;
  uint32_t next_variable_id = 1;

  bool operator==(const ScriptData &) const = default;
};

class Script {
 public:
  Script() = default;
  Script(std::string id, std::string name, std::string description);
  explicit Script(ScriptData data) : data_(std::move(data)) {}

  const ScriptData &data() const { return data_; }
  const std::string &id() const { return data_.id; }
  const std::string &name() const { return data_.name; }
  const std::string &description() const { return data_.description; }
  const std::vector<Event> &events() const { return data_.events; }
  const std::vector<ReferenceVariable> &variables() const {
    return data_.variables;
  }
  const std::vector<OrderRelation> &order() const { return data_.order; }
  uint64_t version() const { return data_.version; }

  const Event *FindEvent(EventId id) const;
  const ReferenceVariable *FindVariable(VariableId id) const;

  // "E<k>" where k is the 1-based creation position among current events.
  std::string Label(EventId id) const;

  // Mutations. Each bumps the version by exactly one on success.

  EventId AddEvent(std::string_view text, Provenance provenance,
                   int64_t created_at);
  // Cascades to order relations and participations; variables left without
  // participations are deleted.
  void RemoveEvent(EventId id);
  // nullopt clears the type. Rejected if existing participations would become
  // invalid under the new type.
  void AssignEventType(const Ontology &ontology, EventId id,
                       std::optional<std::string> type_id);

  void AddBefore(EventId before, EventId after);
  void RemoveBefore(EventId before, EventId after);
  // Adds selected -> pivot (kBefore) or pivot -> selected (kAfter) for each
  // selected event, skipping edges already present. All or nothing.
  void Anchor(std::span<const EventId> selected, EventId pivot,
              AnchorDirection direction);

  VariableId AddVariable(const Ontology &ontology, std::string_view label,
                         std::string_view entity_type, EventId event,
                         std::string_view role);
  void BindVariable(const Ontology &ontology, VariableId variable, EventId event,
                    std::string_view role);
  // Deletes the variable when its last participation goes.
  void UnbindVariable(VariableId variable, EventId event, std::string_view role);
  void SetKbLink(VariableId variable, std::optional<std::string> qid);

  // For changes to data attached to the script (suggestion logs, link
  // decisions) that must still advance the version.
  void BumpVersion() { ++data_.version; }

  // Queries over the order.

  // Event id pairs (a, b), a < b, with no path either way.
  std::vector<std::pair<EventId, EventId>> UnorderedPairs() const;
  // Events in a linear extension of the order. Throws CycleError.
  std::vector<EventId> TopologicalOrder() const;
  // Transitive reduction of the order, sorted by (before, after) ids.
  std::vector<OrderRelation> ReducedOrder() const;
  // Closure of the order as a sorted list of (before, after).
  std::vector<OrderRelation> Closure() const;

  bool operator==(const Script &other) const { return data_ == other.data_; }

 private:
  size_t EventIndex(EventId id) const;  // throws UnknownEvent
  size_t VariableIndex(VariableId id) const;  // throws UnknownVariable
  void CheckRole(const Ontology &ontology, const Event &event,
                 std::string_view entity_type, std::string_view role) const;
  // Throws CycleError if adding before -> after to `order` closes a cycle.
  void CheckAcyclicWith(const std::vector<OrderRelation> &order, EventId before,
                        EventId after) const;

  ScriptData data_;
};

// One broken invariant found by ValidateScript.
struct Violation {
  std::string code;  // ErrorCode name
  std::string message;
  nlohmann::json details = nlohmann::json::object();
};

// Checks every script invariant against the ontology: non-empty event text,
// unique ids, known event/entity types, dangling references, duplicate or
// self relations, acyclicity, role constraints and role exclusivity.
std::vector<Violation> ValidateScript(const ScriptData &script,
                                      const Ontology &ontology);

// Display graph: nodes are events, edges the transitive reduction of the
// order, and every variable participation is annotated on its event.
struct GraphNode {
  EventId id;
  std::string label;
  std::string text;
  std::optional<std::string> event_type;
  Provenance provenance = Provenance::kCurator;
  struct Argument {
    VariableId variable;
    std::string label;
    std::string entity_type;
    std::string role;
    std::optional<std::string> kb_link;
  };
  std::vector<Argument> arguments;
};

struct GraphDocument {
  std::string script_id;
  std::string name;
  std::vector<GraphNode> nodes;
  std::vector<OrderRelation> edges;
  std::vector<std::pair<EventId, EventId>> unordered;
};

GraphDocument ExportGraph(const Script &script);
nlohmann::json GraphToJson(const GraphDocument &graph);

}  // namespace scriptforge

#endif  // SCRIPTFORGE_SCRIPT_H_
