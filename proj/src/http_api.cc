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

#include <charconv>

#include "httplib.h"
#include "scriptforge/service.h"

namespace scriptforge {

using nlohmann::json;

int HttpStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kVersionConflict:
    case ErrorCode::kStaleCandidate:
      return 409;
    case ErrorCode::kUnknownScript:
    case ErrorCode::kUnknownEvent:
    case ErrorCode::kUnknownVariable:
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kProviderUnavailable:
      return 503;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kSchemaError:
    case ErrorCode::kCorruptDocument:
      return 400;
    case ErrorCode::kIoError:
      return 500;
    default:
      return 422;
  }
}

namespace {

using Handler = std::function<json(const httplib::Request &, json &params, int &status)>;

[[noreturn]] void BadParam(const std::string &key, const std::string &why) {
  throw Error(ErrorCode::kInvalidArgument, "'" + key + "' " + why, {{"field", key}});
}

// Request body (a JSON object, possibly empty) with query parameters merged
// in underneath.
json Params(const httplib::Request &req) {
  json params = json::object();
  if (!req.body.empty()) {
    params = json::parse(req.body, nullptr, false);
    if (params.is_discarded() || !params.is_object()) {
      throw Error(ErrorCode::kInvalidArgument, "request body must be a JSON object");
    }
  }
  for (const auto &[key, value] : req.params) {
    if (!params.contains(key)) params[key] = value;
  }
  return params;
}

uint64_t ParseU64(const std::string &key, std::string_view text) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    BadParam(key, "must be a non-negative integer");
  }
  return v;
}

uint64_t U64(const json &p, const std::string &key) {
  auto it = p.find(key);
  if (it == p.end() || it->is_null()) BadParam(key, "is required");
  if (it->is_number_unsigned()) return it->get<uint64_t>();
  if (it->is_string()) return ParseU64(key, it->get<std::string>());
  BadParam(key, "must be a non-negative integer");
}

uint32_t U32(const json &p, const std::string &key) {
  const uint64_t v = U64(p, key);
  if (v > UINT32_MAX) BadParam(key, "is out of range");
  return static_cast<uint32_t>(v);
}

std::string Str(const json &p, const std::string &key) {
  auto it = p.find(key);
  if (it == p.end() || !it->is_string()) BadParam(key, "must be a string");
  return it->get<std::string>();
}

std::optional<std::string> OptStr(const json &p, const std::string &key) {
  auto it = p.find(key);
  if (it == p.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) BadParam(key, "must be a string or null");
  return it->get<std::string>();
}

uint32_t PathId(const httplib::Request &req, size_t i, const char *name) {
  return static_cast<uint32_t>(std::min<uint64_t>(
      ParseU64(name, req.matches[i].str()), UINT32_MAX));
}

json Mutation(const MutationResult &r) {
  json out = r.result;
  out["version"] = r.version;
  return out;
}

json Summary(const ScriptDocument &doc) {
  json j = DocumentToJson(doc);
  j["graph"] = GraphToJson(ExportGraph(doc.script));
  return j;
}

void Route(httplib::Server &server, const std::string &method,
           const std::string &pattern, Handler handler) {
  auto wrapped = [handler](const httplib::Request &req, httplib::Response &res) {
    json body;
    int status = 200;
    try {
      json params = Params(req);
      body = handler(req, params, status);
    } catch (const Error &e) {
      status = HttpStatus(e.code());
      body = e.ToJson();
    } catch (const json::exception &e) {
      status = 400;
      body = Error(ErrorCode::kInvalidArgument, e.what()).ToJson();
    } catch (const std::exception &e) {
      status = 500;
      body = {{"error", "Internal"}, {"message", e.what()}, {"details", json::object()}};
    }
    res.status = status;
    res.set_content(body.dump(), "application/json");
  };
  if (method == "GET") server.Get(pattern, wrapped);
  else if (method == "POST") server.Post(pattern, wrapped);
  else if (method == "PUT") server.Put(pattern, wrapped);
  else if (method == "DELETE") server.Delete(pattern, wrapped);
}

}  // namespace

void MountApiRoutes(httplib::Server &server, CurationService &service) {
  CurationService *s = &service;
  const std::string script = R"(/scripts/([^/]+))";

  Route(server, "GET", "/ontology", [s](const auto &, json &, int &) {
    json types = json::array();
    for (const OntologyEventType &t : s->ontology().event_types()) {
      json roles = json::array();
      for (const RoleSpec &r : t.roles) {
        roles.push_back({{"name", r.name}, {"allowed", r.allowed}});
      }
      types.push_back({{"id", t.id}, {"name", t.name}, {"roles", std::move(roles)}});
    }
    json entities = json::array();
    for (const EntityType &e : s->ontology().entity_types()) {
      entities.push_back({{"id", e.id}, {"name", e.name}});
    }
    return json{{"version", s->ontology().version()},
                {"event_types", std::move(types)},
                {"entity_types", std::move(entities)}};
  });

  Route(server, "POST", "/scripts", [s](const auto &, json &p, int &status) {
    ScriptDocument doc = s->CreateScript(Str(p, "name"), OptStr(p, "description").value_or(""),
                                         OptStr(p, "self_reported_time"));
    status = 201;
    return Summary(doc);
  });
  Route(server, "GET", "/scripts", [s](const auto &, json &, int &) {
    json out = json::array();
    for (const ScriptSummary &x : s->ListScripts()) {
      out.push_back({{"id", x.id}, {"name", x.name}, {"version", x.version},
                     {"events", x.events}});
    }
    return json{{"scripts", std::move(out)}};
  });
  Route(server, "GET", script, [s](const auto &req, json &, int &) {
    return Summary(s->GetScript(req.matches[1]));
  });

  Route(server, "POST", script + "/events", [s](const auto &req, json &p, int &status) {
    status = 201;
    return Mutation(s->AddEvent(req.matches[1], U64(p, "version"), Str(p, "text")));
  });
  Route(server, "DELETE", script + R"(/events/(\d+))", [s](const auto &req, json &p, int &) {
    return Mutation(s->RemoveEvent(req.matches[1], U64(p, "version"),
                                   EventId{PathId(req, 2, "event")}));
  });
  Route(server, "GET", script + R"(/events/(\d+)/type-suggestions)",
        [s](const auto &req, json &, int &) {
          const EventId e{PathId(req, 2, "event")};
          return json{{"event", e.value},
                      {"suggestions", TypeSuggestionsToJson(s->TypeSuggestions(req.matches[1], e))}};
        });
  Route(server, "PUT", script + R"(/events/(\d+)/type)", [s](const auto &req, json &p, int &) {
    return Mutation(s->SetEventType(req.matches[1], U64(p, "version"),
                                    EventId{PathId(req, 2, "event")}, OptStr(p, "type")));
  });

  Route(server, "POST", script + "/order", [s](const auto &req, json &p, int &) {
    return Mutation(s->AddBefore(req.matches[1], U64(p, "version"),
                                 EventId{U32(p, "before")}, EventId{U32(p, "after")}));
  });
  Route(server, "DELETE", script + "/order", [s](const auto &req, json &p, int &) {
    return Mutation(s->RemoveBefore(req.matches[1], U64(p, "version"),
                                    EventId{U32(p, "before")}, EventId{U32(p, "after")}));
  });
  Route(server, "POST", script + "/anchor", [s](const auto &req, json &p, int &) {
    std::vector<EventId> selected;
    const json &list = p.at("selected");
    if (!list.is_array()) BadParam("selected", "must be an array of event ids");
    for (const json &x : list) {
      if (!x.is_number_unsigned()) BadParam("selected", "must be an array of event ids");
      selected.push_back(EventId{x.get<uint32_t>()});
    }
    const std::string dir = OptStr(p, "direction").value_or("before");
    if (dir != "before" && dir != "after") BadParam("direction", "must be before or after");
    return Mutation(s->Anchor(req.matches[1], U64(p, "version"), selected,
                              EventId{U32(p, "pivot")},
                              dir == "before" ? AnchorDirection::kBefore
                                              : AnchorDirection::kAfter));
  });

  Route(server, "POST", script + "/variables", [s](const auto &req, json &p, int &status) {
    status = 201;
    return Mutation(s->AddVariable(req.matches[1], U64(p, "version"), Str(p, "label"),
                                   Str(p, "entity_type"), EventId{U32(p, "event")},
                                   Str(p, "role")));
  });
  Route(server, "POST", script + R"(/variables/(\d+)/bindings)",
        [s](const auto &req, json &p, int &) {
          return Mutation(s->BindVariable(req.matches[1], U64(p, "version"),
                                          VariableId{PathId(req, 2, "variable")},
                                          EventId{U32(p, "event")}, Str(p, "role")));
        });
  Route(server, "DELETE", script + R"(/variables/(\d+)/bindings)",
        [s](const auto &req, json &p, int &) {
          return Mutation(s->UnbindVariable(req.matches[1], U64(p, "version"),
                                            VariableId{PathId(req, 2, "variable")},
                                            EventId{U32(p, "event")}, Str(p, "role")));
        });
  Route(server, "POST", script + R"(/variables/(\d+)/link-candidates)",
        [s](const auto &req, json &p, int &) {
          return Mutation(s->RequestLinkCandidates(req.matches[1], U64(p, "version"),
                                                   VariableId{PathId(req, 2, "variable")}));
        });
  Route(server, "POST", script + R"(/variables/(\d+)/link)",
        [s](const auto &req, json &p, int &) {
          return Mutation(s->DecideLink(req.matches[1], U64(p, "version"),
                                        VariableId{PathId(req, 2, "variable")},
                                        U64(p, "set_version"), OptStr(p, "qid")));
        });

  Route(server, "POST", script + "/recommendations", [s](const auto &req, json &p, int &) {
    return Mutation(s->RequestRecommendations(req.matches[1], U64(p, "version")));
  });
  Route(server, "POST", script + R"(/recommendations/(\d+)/decision)",
        [s](const auto &req, json &p, int &) {
          const std::string name = Str(p, "decision");
          auto d = ParseSuggestionDecision(name);
          if (!d || *d == SuggestionDecision::kPending) {
            BadParam("decision", "must be accepted, edited or rejected");
          }
          return Mutation(s->DecideSuggestion(req.matches[1], U64(p, "version"),
                                              PathId(req, 2, "suggestion"), *d,
                                              OptStr(p, "edited_text")));
        });

  Route(server, "POST", script + "/next-step", [s](const auto &req, json &p, int &) {
    return Mutation(s->RequestNextStep(req.matches[1], U64(p, "version")));
  });
  Route(server, "POST", script + R"(/next-step/(\d+)/decision)",
        [s](const auto &req, json &p, int &) {
          const std::string action = Str(p, "action");
          OptionAction a;
          if (action == "accept") a = OptionAction::kAccept;
          else if (action == "edit") a = OptionAction::kEdit;
          else if (action == "own") a = OptionAction::kTypeOwn;
          else BadParam("action", "must be accept, edit or own");
          std::optional<size_t> option;
          if (p.contains("option") && !p["option"].is_null()) option = U64(p, "option");
          return Mutation(s->DecideOptionSet(req.matches[1], U64(p, "version"),
                                             PathId(req, 2, "set"), a, option,
                                             OptStr(p, "text")));
        });

  Route(server, "GET", script + "/graph", [s](const auto &req, json &, int &) {
    return s->Graph(req.matches[1]);
  });
  Route(server, "GET", script + "/report", [s](const auto &req, json &, int &) {
    return s->Report(req.matches[1]).ToJson();
  });
}

}  // namespace scriptforge
