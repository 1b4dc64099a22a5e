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

#include "scriptforge/script.h"

#include <algorithm>
#include <map>
#include <set>

#include "scriptforge/error.h"
#include "scriptforge/order_graph.h"
#include "scriptforge/text.h"

namespace scriptforge {

namespace {

std::string IdText(EventId id) { return "#" + std::to_string(id.value); }

// Dense indexing of events by creation position.
struct IndexedOrder {
  std::map<EventId, size_t> index;
  std::vector<EventId> ids;
  std::vector<Edge> edges;  // only edges whose endpoints both exist

  IndexedOrder(const std::vector<Event> &events,
               const std::vector<OrderRelation> &order) {
    for (const Event &e : events) {
      index.emplace(e.id, ids.size());
      ids.push_back(e.id);
    }
    for (const OrderRelation &r : order) {
      auto b = index.find(r.before);
      auto a = index.find(r.after);
      if (b != index.end() && a != index.end()) {
        edges.emplace_back(b->second, a->second);
      }
    }
  }

  OrderGraph Graph() const { return OrderGraph(ids.size(), edges); }
};

nlohmann::json CyclePathJson(const std::vector<std::string> &labels) {
  return {{"path", labels}};
}

}  // namespace

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kCurator: return "curator";
    case Provenance::kMachineAccepted: return "machine_accepted";
    case Provenance::kMachineEdited: return "machine_edited";
  }
  return "curator";
}

std::optional<Provenance> ParseProvenance(std::string_view name) {
  if (name == "curator") return Provenance::kCurator;
  if (name == "machine_accepted") return Provenance::kMachineAccepted;
  if (name == "machine_edited") return Provenance::kMachineEdited;
  return std::nullopt;
}

Script::Script(std::string id, std::string name, std::string description) {
  data_.id = std::move(id);
  data_.name = std::move(name);
  data_.description = std::move(description);
}

const Event *Script::FindEvent(EventId id) const {
  for (const Event &e : data_.events) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const ReferenceVariable *Script::FindVariable(VariableId id) const {
  for (const ReferenceVariable &v : data_.variables) {
    if (v.id == id) return &v;
  }
  return nullptr;
}

size_t Script::EventIndex(EventId id) const {
  for (size_t i = 0; i < data_.events.size(); ++i) {
    if (data_.events[i].id == id) return i;
  }
  throw Error(ErrorCode::kUnknownEvent, "unknown event " + IdText(id),
              {{"event", id.value}});
}

size_t Script::VariableIndex(VariableId id) const {
  for (size_t i = 0; i < data_.variables.size(); ++i) {
    if (data_.variables[i].id == id) return i;
  }
  throw Error(ErrorCode::kUnknownVariable,
              "unknown variable #" + std::to_string(id.value),
              {{"variable", id.value}});
}

std::string Script::Label(EventId id) const {
  return "E" + std::to_string(EventIndex(id) + 1);
}

EventId Script::AddEvent(std::string_view text, Provenance provenance,
                         int64_t created_at) {
  std::string trimmed = Trim(text);
  if (trimmed.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "event text must be non-empty");
  }
  const EventId id{data_.next_event_id};
  data_.events.push_back({id, std::move(trimmed), std::nullopt, provenance,
                          created_at});
  ++data_.next_event_id;
  ++data_.version;
  return id;
}

void Script::RemoveEvent(EventId id) {
  const size_t index = EventIndex(id);
  data_.events.erase(data_.events.begin() + static_cast<ptrdiff_t>(index));
  std::erase_if(data_.order, [id](const OrderRelation &r) {
    return r.before == id || r.after == id;
  });
  for (ReferenceVariable &v : data_.variables) {
    std::erase_if(v.participations,
                  [id](const Participation &p) { return p.event == id; });
  }
  std::erase_if(data_.variables, [](const ReferenceVariable &v) {
    return v.participations.empty();
  });
  ++data_.version;
}

void Script::AssignEventType(const Ontology &ontology, EventId id,
                             std::optional<std::string> type_id) {
  const size_t index = EventIndex(id);
  if (type_id && !ontology.HasEventType(*type_id)) {
    throw Error(ErrorCode::kUnknownType, "unknown event type '" + *type_id + "'",
                {{"type", *type_id}});
  }
  Event candidate = data_.events[index];
  candidate.event_type = type_id;
  for (const ReferenceVariable &v : data_.variables) {
    for (const Participation &p : v.participations) {
      if (p.event == id) CheckRole(ontology, candidate, v.entity_type, p.role);
    }
  }
  data_.events[index] = std::move(candidate);
  ++data_.version;
}

void Script::CheckAcyclicWith(const std::vector<OrderRelation> &order,
                              EventId before, EventId after) const {
  IndexedOrder indexed(data_.events, order);
  const size_t b = indexed.index.at(before);
  const size_t a = indexed.index.at(after);
  auto path = indexed.Graph().FindPath(a, b);
  if (!path) return;
  std::vector<std::string> labels;
  std::string rendered;
  for (size_t node : *path) labels.push_back(Label(indexed.ids[node]));
  labels.push_back(Label(after));
  for (size_t i = 0; i < labels.size(); ++i) {
    rendered += (i ? "->" : "") + labels[i];
  }
  throw Error(ErrorCode::kCycleError,
              "adding " + Label(before) + "->" + Label(after) +
                  " creates cycle " + rendered,
              CyclePathJson(labels));
}

void Script::AddBefore(EventId before, EventId after) {
  EventIndex(before);
  EventIndex(after);
  if (before == after) {
    throw Error(ErrorCode::kSelfRelation,
                "an event cannot precede itself (" + Label(before) + ")");
  }
  const OrderRelation relation{before, after};
  if (std::find(data_.order.begin(), data_.order.end(), relation) !=
      data_.order.end()) {
    throw Error(ErrorCode::kDuplicateRelation,
                "relation " + Label(before) + "->" + Label(after) +
                    " already present",
                {{"before", Label(before)}, {"after", Label(after)}});
  }
  CheckAcyclicWith(data_.order, before, after);
  data_.order.push_back(relation);
  ++data_.version;
}

void Script::RemoveBefore(EventId before, EventId after) {
  auto it = std::find(data_.order.begin(), data_.order.end(),
                      OrderRelation{before, after});
  if (it == data_.order.end()) {
    throw Error(ErrorCode::kNotFound, "no relation " + IdText(before) + "->" +
                                          IdText(after));
  }
  data_.order.erase(it);
  ++data_.version;
}

void Script::Anchor(std::span<const EventId> selected, EventId pivot,
                    AnchorDirection direction) {
  if (selected.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "anchor needs at least one event");
  }
  EventIndex(pivot);
  for (EventId id : selected) EventIndex(id);
  for (EventId id : selected) {
    if (id == pivot) {
      throw Error(ErrorCode::kSelfAnchor,
                  "pivot " + Label(pivot) + " is among the selected events");
    }
  }
  std::vector<OrderRelation> tentative = data_.order;
  bool changed = false;
  for (EventId id : selected) {
    const OrderRelation relation = direction == AnchorDirection::kBefore
                                       ? OrderRelation{id, pivot}
                                       : OrderRelation{pivot, id};
    if (std::find(tentative.begin(), tentative.end(), relation) !=
        tentative.end()) {
      continue;
    }
    CheckAcyclicWith(tentative, relation.before, relation.after);
    tentative.push_back(relation);
    changed = true;
  }
  if (!changed) return;
  data_.order = std::move(tentative);
  ++data_.version;
}

void Script::CheckRole(const Ontology &ontology, const Event &event,
                       std::string_view entity_type,
                       std::string_view role) const {
  const std::string label = Label(event.id);
  if (!event.event_type) {
    throw Error(ErrorCode::kRoleConstraintViolation,
                label + " has no event type, so role '" + std::string(role) +
                    "' cannot be checked",
                {{"event", label}, {"role", std::string(role)}});
  }
  RoleCheck check = ontology.ValidateRole(*event.event_type, role, entity_type);
  if (!check.ok) {
    throw Error(ErrorCode::kRoleConstraintViolation, check.reason,
                {{"event", label},
                 {"type", *event.event_type},
                 {"role", std::string(role)},
                 {"entity_type", std::string(entity_type)},
                 {"allowed", check.allowed}});
  }
}

VariableId Script::AddVariable(const Ontology &ontology, std::string_view label,
                               std::string_view entity_type, EventId event,
                               std::string_view role) {
  std::string trimmed = Trim(label);
  if (trimmed.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "variable label must be non-empty");
  }
  if (!ontology.HasEntityType(entity_type)) {
    throw Error(ErrorCode::kUnknownType,
                "unknown entity type '" + std::string(entity_type) + "'",
                {{"entity_type", std::string(entity_type)}});
  }
  ReferenceVariable variable;
  variable.id = VariableId{data_.next_variable_id};
  variable.label = std::move(trimmed);
  variable.entity_type = std::string(entity_type);
  data_.variables.push_back(std::move(variable));
  try {
    BindVariable(ontology, data_.variables.back().id, event, role);
  } catch (...) {
    data_.variables.pop_back();
    throw;
  }
  ++data_.next_variable_id;
  // BindVariable already advanced the version once for this operation.
  return data_.variables.back().id;
}

void Script::BindVariable(const Ontology &ontology, VariableId variable,
                          EventId event, std::string_view role) {
  const size_t vi = VariableIndex(variable);
  const Event &target = data_.events[EventIndex(event)];
  CheckRole(ontology, target, data_.variables[vi].entity_type, role);
  const Participation participation{event, std::string(role)};
  for (const ReferenceVariable &v : data_.variables) {
    if (std::binary_search(v.participations.begin(), v.participations.end(),
                           participation)) {
      throw Error(ErrorCode::kRoleAlreadyFilled,
                  "role '" + std::string(role) + "' of " + Label(event) +
                      " is already filled by '" + v.label + "'",
                  {{"event", Label(event)},
                   {"role", std::string(role)},
                   {"variable", v.id.value}});
    }
  }
  auto &parts = data_.variables[vi].participations;
  parts.insert(std::upper_bound(parts.begin(), parts.end(), participation),
               participation);
  ++data_.version;
}

void Script::UnbindVariable(VariableId variable, EventId event,
                            std::string_view role) {
  const size_t vi = VariableIndex(variable);
  auto &parts = data_.variables[vi].participations;
  auto it = std::find(parts.begin(), parts.end(),
                      Participation{event, std::string(role)});
  if (it == parts.end()) {
    throw Error(ErrorCode::kNotFound, "variable is not bound to " +
                                          IdText(event) + "/" +
                                          std::string(role));
  }
  parts.erase(it);
  if (parts.empty()) {
    data_.variables.erase(data_.variables.begin() + static_cast<ptrdiff_t>(vi));
  }
  ++data_.version;
}

void Script::SetKbLink(VariableId variable, std::optional<std::string> qid) {
  data_.variables[VariableIndex(variable)].kb_link = std::move(qid);
  ++data_.version;
}

std::vector<std::pair<EventId, EventId>> Script::UnorderedPairs() const {
  IndexedOrder indexed(data_.events, data_.order);
  // Dense indices follow creation order, not id order; compare by id.
  std::vector<std::pair<EventId, EventId>> out;
  for (auto [a, b] : indexed.Graph().UnorderedPairs()) {
    EventId x = indexed.ids[a], y = indexed.ids[b];
    if (y < x) std::swap(x, y);
    out.emplace_back(x, y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EventId> Script::TopologicalOrder() const {
  IndexedOrder indexed(data_.events, data_.order);
  const OrderGraph graph = indexed.Graph();
  auto order = graph.TopologicalOrder();
  if (!order) {
    std::vector<std::string> labels;
    for (size_t node : *graph.FindCycle()) {
      labels.push_back(Label(indexed.ids[node]));
    }
    throw Error(ErrorCode::kCycleError, "order contains a cycle",
                CyclePathJson(labels));
  }
  std::vector<EventId> ids;
  for (size_t node : *order) ids.push_back(indexed.ids[node]);
  return ids;
}

std::vector<OrderRelation> Script::ReducedOrder() const {
  TopologicalOrder();  // rejects cyclic orders
  IndexedOrder indexed(data_.events, data_.order);
  std::vector<OrderRelation> out;
  for (auto [u, v] : indexed.Graph().TransitiveReduction()) {
    out.push_back({indexed.ids[u], indexed.ids[v]});
  }
  std::sort(out.begin(), out.end(), [](const auto &l, const auto &r) {
    return std::tie(l.before, l.after) < std::tie(r.before, r.after);
  });
  return out;
}

std::vector<OrderRelation> Script::Closure() const {
  IndexedOrder indexed(data_.events, data_.order);
  const auto reach = indexed.Graph().Closure();
  std::vector<OrderRelation> out;
  for (size_t u = 0; u < reach.size(); ++u) {
    for (size_t v = 0; v < reach.size(); ++v) {
      if (reach[u][v]) out.push_back({indexed.ids[u], indexed.ids[v]});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto &l, const auto &r) {
    return std::tie(l.before, l.after) < std::tie(r.before, r.after);
  });
  return out;
}

std::vector<Violation> ValidateScript(const ScriptData &script,
                                      const Ontology &ontology) {
  std::vector<Violation> out;
  auto add = [&out](ErrorCode code, std::string message,
                    nlohmann::json details = nlohmann::json::object()) {
    out.push_back({std::string(ErrorCodeName(code)), std::move(message),
                   std::move(details)});
  };

  std::map<EventId, const Event *> events;
  for (const Event &e : script.events) {
    if (!events.emplace(e.id, &e).second) {
      add(ErrorCode::kDuplicateId, "duplicate event id " + IdText(e.id),
          {{"event", e.id.value}});
    }
    if (Trim(e.text).empty()) {
      add(ErrorCode::kInvalidArgument, "event " + IdText(e.id) + " has empty text",
          {{"event", e.id.value}});
    }
    if (e.event_type && !ontology.HasEventType(*e.event_type)) {
      add(ErrorCode::kUnknownType,
          "event " + IdText(e.id) + " has unknown type '" + *e.event_type + "'",
          {{"event", e.id.value}, {"type", *e.event_type}});
    }
    if (e.id.value >= script.next_event_id) {
      add(ErrorCode::kCorruptDocument,
          "event id " + IdText(e.id) + " is not below next_event_id");
    }
  }

  std::set<std::pair<EventId, EventId>> seen_relations;
  for (const OrderRelation &r : script.order) {
    const bool known = events.contains(r.before) && events.contains(r.after);
    if (!known) {
      add(ErrorCode::kUnknownEvent,
          "order relation " + IdText(r.before) + "->" + IdText(r.after) +
              " references a missing event",
          {{"before", r.before.value}, {"after", r.after.value}});
    }
    if (r.before == r.after) {
      add(ErrorCode::kSelfRelation, "self relation on " + IdText(r.before));
    }
    if (!seen_relations.emplace(r.before, r.after).second) {
      add(ErrorCode::kDuplicateRelation,
          "duplicate relation " + IdText(r.before) + "->" + IdText(r.after));
    }
  }

  IndexedOrder indexed(script.events, script.order);
  auto label = [&indexed](EventId id) {
    return "E" + std::to_string(indexed.index.at(id) + 1);
  };
  if (auto cycle = indexed.Graph().FindCycle()) {
    std::vector<std::string> labels;
    std::string rendered;
    for (size_t node : *cycle) {
      labels.push_back(label(indexed.ids[node]));
      rendered += (rendered.empty() ? "" : "->") + labels.back();
    }
    add(ErrorCode::kCycleError, "order contains cycle " + rendered,
        CyclePathJson(labels));
  }

  std::set<VariableId> variable_ids;
  std::map<Participation, VariableId> fillers;
  for (const ReferenceVariable &v : script.variables) {
    const std::string vname = "variable '" + v.label + "'";
    if (!variable_ids.insert(v.id).second) {
      add(ErrorCode::kDuplicateId, "duplicate id for " + vname,
          {{"variable", v.id.value}});
    }
    if (v.id.value >= script.next_variable_id) {
      add(ErrorCode::kCorruptDocument,
          vname + " id is not below next_variable_id");
    }
    if (!ontology.HasEntityType(v.entity_type)) {
      add(ErrorCode::kUnknownType,
          vname + " has unknown entity type '" + v.entity_type + "'",
          {{"variable", v.id.value}, {"entity_type", v.entity_type}});
    }
    if (v.participations.empty()) {
      add(ErrorCode::kInvalidArgument, vname + " has no participations",
          {{"variable", v.id.value}});
    }
    if (!std::is_sorted(v.participations.begin(), v.participations.end()) ||
        std::adjacent_find(v.participations.begin(), v.participations.end()) !=
            v.participations.end()) {
      add(ErrorCode::kCorruptDocument,
          vname + " participations are not sorted and unique");
    }
    for (const Participation &p : v.participations) {
      auto it = events.find(p.event);
      if (it == events.end()) {
        add(ErrorCode::kUnknownEvent,
            vname + " participates in missing event " + IdText(p.event),
            {{"variable", v.id.value}, {"event", p.event.value}});
        continue;
      }
      auto [slot, inserted] = fillers.emplace(p, v.id);
      if (!inserted && slot->second != v.id) {
        add(ErrorCode::kRoleAlreadyFilled,
            "role '" + p.role + "' of " + label(p.event) +
                " is filled by more than one variable",
            {{"event", label(p.event)}, {"role", p.role}});
      }
      const Event &event = *it->second;
      if (!event.event_type || !ontology.HasEventType(*event.event_type)) {
        add(ErrorCode::kRoleConstraintViolation,
            vname + " fills role '" + p.role + "' of untyped event " +
                label(p.event),
            {{"event", label(p.event)}, {"role", p.role}});
        continue;
      }
      RoleCheck check =
          ontology.ValidateRole(*event.event_type, p.role, v.entity_type);
      if (!check.ok) {
        add(ErrorCode::kRoleConstraintViolation,
            vname + " in " + label(p.event) + ": " + check.reason,
            {{"event", label(p.event)},
             {"type", *event.event_type},
             {"role", p.role},
             {"entity_type", v.entity_type},
             {"allowed", check.allowed}});
      }
    }
  }
  return out;
}

GraphDocument ExportGraph(const Script &script) {
  GraphDocument graph;
  graph.script_id = script.id();
  graph.name = script.name();
  std::map<EventId, size_t> node_index;
  for (const Event &e : script.events()) {
    node_index.emplace(e.id, graph.nodes.size());
    GraphNode node;
    node.id = e.id;
    node.label = "E" + std::to_string(graph.nodes.size() + 1);
    node.text = e.text;
    node.event_type = e.event_type;
    node.provenance = e.provenance;
    graph.nodes.push_back(std::move(node));
  }
  for (const ReferenceVariable &v : script.variables()) {
    for (const Participation &p : v.participations) {
      auto it = node_index.find(p.event);
      if (it == node_index.end()) continue;
      graph.nodes[it->second].arguments.push_back(
          {v.id, v.label, v.entity_type, p.role, v.kb_link});
    }
  }
  graph.edges = script.ReducedOrder();
  graph.unordered = script.UnorderedPairs();
  return graph;
}

nlohmann::json GraphToJson(const GraphDocument &graph) {
  std::map<EventId, std::string> labels;
  nlohmann::json nodes = nlohmann::json::array();
  for (const GraphNode &n : graph.nodes) {
    labels[n.id] = n.label;
    nlohmann::json args = nlohmann::json::array();
    for (const GraphNode::Argument &a : n.arguments) {
      args.push_back({{"variable", a.variable.value},
                      {"label", a.label},
                      {"entity_type", a.entity_type},
                      {"role", a.role},
                      {"kb_link", a.kb_link ? nlohmann::json(*a.kb_link)
                                            : nlohmann::json(nullptr)}});
    }
    nodes.push_back(
        {{"id", n.id.value},
         {"label", n.label},
         {"text", n.text},
         {"event_type", n.event_type ? nlohmann::json(*n.event_type)
                                     : nlohmann::json(nullptr)},
         {"provenance", std::string(ProvenanceName(n.provenance))},
         {"arguments", std::move(args)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const OrderRelation &r : graph.edges) {
    edges.push_back({{"before", labels[r.before]}, {"after", labels[r.after]}});
  }
  nlohmann::json unordered = nlohmann::json::array();
  for (const auto &[a, b] : graph.unordered) {
    unordered.push_back({labels[a], labels[b]});
  }
  return {{"script", graph.script_id},
          {"name", graph.name},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)},
          {"unordered", std::move(unordered)}};
}

}  // namespace scriptforge
