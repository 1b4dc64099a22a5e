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

#include "scriptforge/ontology.h"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "scriptforge/error.h"
#include "scriptforge/text.h"

namespace scriptforge {

namespace {

[[noreturn]] void SchemaFail(const std::string &path, const std::string &what) {
  throw Error(ErrorCode::kSchemaError, path + ": " + what, {{"path", path}});
}

std::string Index(const std::string &path, size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const YAML::Node Required(const YAML::Node &node, const std::string &key,
                          const std::string &path) {
  if (!node.IsMap()) SchemaFail(path, "expected a mapping");
  YAML::Node child = node[key];
  if (!child) SchemaFail(path + "." + key, "missing required field");
  return child;
}

std::string ScalarAt(const YAML::Node &node, const std::string &path) {
  if (!node.IsScalar()) SchemaFail(path, "expected a string");
  return node.as<std::string>();
}

std::string RequiredString(const YAML::Node &node, const std::string &key,
                           const std::string &path) {
  return ScalarAt(Required(node, key, path), path + "." + key);
}

std::string OptionalString(const YAML::Node &node, const std::string &key,
                           const std::string &path) {
  YAML::Node child = node[key];
  if (!child || child.IsNull()) return {};
  return ScalarAt(child, path + "." + key);
}

const YAML::Node RequiredSequence(const YAML::Node &node, const std::string &key,
                                  const std::string &path) {
  YAML::Node child = Required(node, key, path);
  if (!child.IsSequence()) SchemaFail(path + "." + key, "expected a list");
  return child;
}

}  // namespace

const RoleSpec *OntologyEventType::FindRole(std::string_view role) const {
  for (const RoleSpec &r : roles) {
    if (r.name == role) return &r;
  }
  return nullptr;
}

std::string CandidateText(const OntologyEventType &type) {
  std::string definition = Trim(type.definition);
  std::string tmpl = Trim(type.template_text);
  if (tmpl.empty()) return definition;
  if (definition.empty()) return tmpl;
  return definition + " " + tmpl;
}

Ontology::Ontology(std::string version, std::vector<EntityType> entity_types,
                   std::vector<OntologyEventType> event_types)
    : version_(std::move(version)),
      entity_types_(std::move(entity_types)),
      event_types_(std::move(event_types)) {
  for (size_t i = 0; i < entity_types_.size(); ++i) {
    const std::string path = Index("entity_types", i);
    if (entity_types_[i].id.empty()) SchemaFail(path + ".id", "empty id");
    if (!entity_index_.emplace(entity_types_[i].id, i).second) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate entity type id '" + entity_types_[i].id + "'",
                  {{"path", path}, {"id", entity_types_[i].id}});
    }
  }
  if (event_types_.empty()) {
    SchemaFail("event_types", "ontology must contain at least one event type");
  }
  for (size_t i = 0; i < event_types_.size(); ++i) {
    const OntologyEventType &type = event_types_[i];
    const std::string path = Index("event_types", i);
    if (type.id.empty()) SchemaFail(path + ".id", "empty id");
    if (Trim(type.definition).empty()) {
      SchemaFail(path + ".definition", "definition must be non-empty");
    }
    if (type.roles.empty()) SchemaFail(path + ".roles", "roles must be non-empty");
    if (!event_index_.emplace(type.id, i).second) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate event type id '" + type.id + "'",
                  {{"path", path}, {"id", type.id}});
    }
    for (size_t r = 0; r < type.roles.size(); ++r) {
      const RoleSpec &role = type.roles[r];
      const std::string role_path = Index(path + ".roles", r);
      if (role.name.empty()) SchemaFail(role_path + ".name", "empty role name");
      for (size_t s = 0; s < r; ++s) {
        if (type.roles[s].name == role.name) {
          throw Error(ErrorCode::kDuplicateId,
                      "duplicate role '" + role.name + "' in " + type.id,
                      {{"path", role_path}, {"id", role.name}});
        }
      }
      if (role.allowed.empty()) {
        SchemaFail(role_path + ".allowed", "role must allow an entity type");
      }
      for (const std::string &entity : role.allowed) {
        if (!entity_index_.contains(entity)) {
          throw Error(ErrorCode::kDanglingEntityType,
                      "role " + type.id + "/" + role.name +
                          " references unknown entity type '" + entity + "'",
                      {{"path", role_path}, {"entity_type", entity}});
        }
      }
    }
  }
}

Ontology Ontology::FromYaml(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception &e) {
    SchemaFail("$", std::string("malformed YAML: ") + e.what());
  }
  if (!root.IsMap()) SchemaFail("$", "expected a mapping at document root");
  const std::string schema = RequiredString(root, "schema", "$");
  if (schema != kOntologySchema) {
    SchemaFail("$.schema", "unsupported schema tag '" + schema + "'");
  }
  std::string version = RequiredString(root, "version", "$");

  std::vector<EntityType> entity_types;
  const YAML::Node entities = RequiredSequence(root, "entity_types", "$");
  for (size_t i = 0; i < entities.size(); ++i) {
    const std::string path = Index("entity_types", i);
    entity_types.push_back({RequiredString(entities[i], "id", path),
                            OptionalString(entities[i], "name", path)});
  }

  std::vector<OntologyEventType> event_types;
  const YAML::Node events = RequiredSequence(root, "event_types", "$");
  for (size_t i = 0; i < events.size(); ++i) {
    const YAML::Node &node = events[i];
    const std::string path = Index("event_types", i);
    OntologyEventType type;
    type.id = RequiredString(node, "id", path);
    type.name = OptionalString(node, "name", path);
    type.definition = RequiredString(node, "definition", path);
    type.template_text = OptionalString(node, "template", path);
    const YAML::Node roles = RequiredSequence(node, "roles", path);
    for (size_t r = 0; r < roles.size(); ++r) {
      const std::string role_path = Index(path + ".roles", r);
      RoleSpec role;
      role.name = RequiredString(roles[r], "name", role_path);
      const YAML::Node allowed = RequiredSequence(roles[r], "allowed", role_path);
      for (size_t a = 0; a < allowed.size(); ++a) {
        role.allowed.push_back(ScalarAt(allowed[a], Index(role_path + ".allowed", a)));
      }
      type.roles.push_back(std::move(role));
    }
    event_types.push_back(std::move(type));
  }
  return Ontology(std::move(version), std::move(entity_types),
                  std::move(event_types));
}

Ontology Ontology::FromFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read ontology " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromYaml(buffer.str());
}

std::string Ontology::ToYaml() const {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "schema" << YAML::Value << std::string(kOntologySchema);
  out << YAML::Key << "version" << YAML::Value << version_;
  out << YAML::Key << "entity_types" << YAML::Value << YAML::BeginSeq;
  for (const EntityType &e : entity_types_) {
    out << YAML::BeginMap << YAML::Key << "id" << YAML::Value << e.id
        << YAML::Key << "name" << YAML::Value << e.name << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "event_types" << YAML::Value << YAML::BeginSeq;
  for (const OntologyEventType &t : event_types_) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << t.id;
    out << YAML::Key << "name" << YAML::Value << t.name;
    out << YAML::Key << "definition" << YAML::Value << t.definition;
    out << YAML::Key << "template" << YAML::Value << t.template_text;
    out << YAML::Key << "roles" << YAML::Value << YAML::BeginSeq;
    for (const RoleSpec &r : t.roles) {
      out << YAML::BeginMap << YAML::Key << "name" << YAML::Value << r.name
          << YAML::Key << "allowed" << YAML::Value << YAML::Flow << r.allowed
          << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

const OntologyEventType *Ontology::FindEventType(std::string_view id) const {
  auto it = event_index_.find(id);
  return it == event_index_.end() ? nullptr : &event_types_[it->second];
}

const EntityType *Ontology::FindEntityType(std::string_view id) const {
  auto it = entity_index_.find(id);
  return it == entity_index_.end() ? nullptr : &entity_types_[it->second];
}

RoleCheck Ontology::ValidateRole(std::string_view type_id,
                                 std::string_view role_name,
                                 std::string_view entity_type_id) const {
  const OntologyEventType *type = FindEventType(type_id);
  if (type == nullptr) {
    throw Error(ErrorCode::kUnknownType,
                "unknown event type '" + std::string(type_id) + "'",
                {{"type", std::string(type_id)}});
  }
  const RoleSpec *role = type->FindRole(role_name);
  if (role == nullptr) {
    return {false,
            "no such role '" + std::string(role_name) + "' for " + type->id,
            {}};
  }
  for (const std::string &allowed : role->allowed) {
    if (allowed == entity_type_id) return {true, {}, role->allowed};
  }
  return {false,
          "entity type '" + std::string(entity_type_id) + "' not allowed in " +
              type->id + "/" + role->name,
          role->allowed};
}

}  // namespace scriptforge
