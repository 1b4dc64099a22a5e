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

// Event/entity ontology: type inventories, prose definitions and templates
// used for type suggestion, and the role constraints that limit which entity
// types may fill which argument of an event type.
//
// The on-disk form is a YAML document; see docs/formats.md.

#ifndef SCRIPTFORGE_ONTOLOGY_H_
#define SCRIPTFORGE_ONTOLOGY_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scriptforge {

inline constexpr std::string_view kOntologySchema = "script-forge/ontology@1";

struct EntityType {
  std::string id;
  std::string name;

  bool operator==(const EntityType &) const = default;
};

struct RoleSpec {
  std::string name;
  std::vector<std::string> allowed;  // entity type ids

  bool operator==(const RoleSpec &) const = default;
};

struct OntologyEventType {
  std::string id;
  std::string name;
  std::string definition;
  std::string template_text;  // may be empty
  std::vector<RoleSpec> roles;

  const RoleSpec *FindRole(std::string_view role) const;

  bool operator==(const OntologyEventType &) const = default;
};

// Definition and template joined by one space, each trimmed. A missing
// template yields the definition alone.
std::string CandidateText(const OntologyEventType &type);

// Outcome of a role check. `ok` is false for an unknown role or a disallowed
// entity type; `reason` and `allowed` describe the violation.
struct RoleCheck {
  bool ok = false;
  std::string reason;
  std::vector<std::string> allowed;
};

class Ontology {
 public:
  Ontology() = default;

  // Validates and indexes. Throws SchemaError, DuplicateId or
  // DanglingEntityType.
  Ontology(std::string version, std::vector<EntityType> entity_types,
           std::vector<OntologyEventType> event_types);

  static Ontology FromYaml(std::string_view yaml_text);
  static Ontology FromFile(const std::string &path);
  std::string ToYaml() const;

  const std::string &version() const { return version_; }
  const std::vector<EntityType> &entity_types() const { return entity_types_; }
  const std::vector<OntologyEventType> &event_types() const {
    return event_types_;
  }

  const OntologyEventType *FindEventType(std::string_view id) const;
  const EntityType *FindEntityType(std::string_view id) const;
  bool HasEventType(std::string_view id) const {
    return FindEventType(id) != nullptr;
  }
  bool HasEntityType(std::string_view id) const {
    return FindEntityType(id) != nullptr;
  }

  // Throws UnknownType if `type_id` is not in the ontology.
  RoleCheck ValidateRole(std::string_view type_id, std::string_view role_name,
                         std::string_view entity_type_id) const;

  bool operator==(const Ontology &other) const {
    return version_ == other.version_ && entity_types_ == other.entity_types_ &&
           event_types_ == other.event_types_;
  }

 private:
  std::string version_;
  std::vector<EntityType> entity_types_;
  std::vector<OntologyEventType> event_types_;
  std::map<std::string, size_t, std::less<>> event_index_;
  std::map<std::string, size_t, std::less<>> entity_index_;
};

}  // namespace scriptforge

#endif  // SCRIPTFORGE_ONTOLOGY_H_
