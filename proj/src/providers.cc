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

#include "scriptforge/providers.h"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "httplib.h"
#include "scriptforge/error.h"

namespace scriptforge {

using nlohmann::json;

namespace {

[[noreturn]] void Unavailable(const std::string &what) {
  throw Error(ErrorCode::kProviderUnavailable, what);
}

json PostJson(const std::string &base_url, std::chrono::milliseconds timeout,
              const std::string &path, const json &body) {
  httplib::Client client(base_url);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  auto result = client.Post(path, body.dump(), "application/json");
  if (!result) {
    Unavailable("provider " + base_url + path + " unreachable: " +
                httplib::to_string(result.error()));
  }
  if (result->status < 200 || result->status >= 300) {
    Unavailable("provider " + base_url + path + " returned HTTP " +
                std::to_string(result->status) + ": " + result->body);
  }
  try {
    return json::parse(result->body);
  } catch (const json::exception &e) {
    Unavailable("provider " + base_url + path + " sent malformed JSON: " +
                e.what());
  }
}

void ReplyError(httplib::Response &res, int status, const std::string &code,
                const std::string &message) {
  res.status = status;
  res.set_content(json{{"error", code}, {"message", message}}.dump(),
                  "application/json");
}

}  // namespace

bool TranscriptEntry::Matches(const std::string &prompt) const {
  switch (match) {
    case Match::kExact: return prompt == pattern;
    case Match::kContains: return prompt.find(pattern) != std::string::npos;
    case Match::kSuffix: return prompt.ends_with(pattern);
    case Match::kAny: return true;
  }
  return false;
}

ScriptedGenerationProvider ScriptedGenerationProvider::FromJson(const json &doc) {
  auto corrupt = [](const std::string &what) -> Error {
    return Error(ErrorCode::kCorruptDocument, "transcript: " + what);
  };
  if (!doc.is_object() || doc.value("schema", "") != kTranscriptSchema) {
    throw corrupt("missing or unsupported schema tag");
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw corrupt("entries must be a list");
  }
  std::vector<TranscriptEntry> entries;
  for (size_t i = 0; i < doc["entries"].size(); ++i) {
    const json &e = doc["entries"][i];
    const std::string where = "entries[" + std::to_string(i) + "]";
    if (!e.is_object() || !e.contains("match") || !e["match"].is_object() ||
        e["match"].size() != 1) {
      throw corrupt(where + ".match must hold exactly one matcher");
    }
    TranscriptEntry entry;
    const auto &[kind, value] = *e["match"].items().begin();
    if (kind == "exact") {
      entry.match = TranscriptEntry::Match::kExact;
    } else if (kind == "contains") {
      entry.match = TranscriptEntry::Match::kContains;
    } else if (kind == "suffix") {
      entry.match = TranscriptEntry::Match::kSuffix;
    } else if (kind == "any") {
      entry.match = TranscriptEntry::Match::kAny;
    } else {
      throw corrupt(where + ".match has unknown matcher '" + kind + "'");
    }
    if (entry.match != TranscriptEntry::Match::kAny) {
      if (!value.is_string()) throw corrupt(where + ".match value must be text");
      entry.pattern = value.get<std::string>();
    }
    if (!e.contains("continuations") || !e["continuations"].is_array()) {
      throw corrupt(where + ".continuations must be a list");
    }
    for (const json &c : e["continuations"]) {
      if (!c.is_string()) throw corrupt(where + ".continuations must be text");
      entry.continuations.push_back(c.get<std::string>());
    }
    entries.push_back(std::move(entry));
  }
  return ScriptedGenerationProvider(std::move(entries));
}

ScriptedGenerationProvider ScriptedGenerationProvider::FromFile(
    const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read transcript " + path);
  try {
    return FromJson(json::parse(in));
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kCorruptDocument,
                "transcript " + path + ": " + e.what());
  }
}

ScriptedGenerationProvider ScriptedGenerationProvider::FromDirectory(
    const std::string &dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIoError, "transcript directory " + dir + " not found");
  }
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  ScriptedGenerationProvider combined;
  for (const fs::path &file : files) combined.Append(FromFile(file.string()));
  return combined;
}

void ScriptedGenerationProvider::Append(const ScriptedGenerationProvider &other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::vector<std::string> ScriptedGenerationProvider::Generate(
    const GenerationRequest &request) {
  if (request.samples <= 0) return {};
  for (const TranscriptEntry &entry : entries_) {
    if (!entry.Matches(request.prompt)) continue;
    const size_t n = std::min(entry.continuations.size(),
                              static_cast<size_t>(request.samples));
    return {entry.continuations.begin(),
            entry.continuations.begin() + static_cast<ptrdiff_t>(n)};
  }
  return {};
}

RemoteEmbeddingProvider::RemoteEmbeddingProvider(std::string base_url,
                                                 std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

std::vector<EmbeddingVector> RemoteEmbeddingProvider::Embed(
    std::span<const std::string> texts) {
  if (texts.empty()) return {};
  const json reply = PostJson(base_url_, timeout_, "/embed",
                              {{"texts", std::vector<std::string>(
                                             texts.begin(), texts.end())}});
  if (!reply.contains("vectors") || !reply["vectors"].is_array() ||
      !reply.contains("dim") || !reply["dim"].is_number_unsigned()) {
    Unavailable("embed reply lacks vectors/dim");
  }
  const size_t dim = reply["dim"].get<size_t>();
  if (reply["vectors"].size() != texts.size()) {
    Unavailable("embed reply has " + std::to_string(reply["vectors"].size()) +
                " vectors for " + std::to_string(texts.size()) + " texts");
  }
  std::vector<EmbeddingVector> out;
  for (const json &v : reply["vectors"]) {
    if (!v.is_array() || v.size() != dim) Unavailable("embed vector has wrong dim");
    try {
      out.emplace_back(v.get<std::vector<double>>());
    } catch (const std::exception &e) {
      Unavailable(std::string("embed vector rejected: ") + e.what());
    }
  }
  return out;
}

std::string RemoteEmbeddingProvider::Identity() const {
  return "remote:" + base_url_;
}

RemoteGenerationProvider::RemoteGenerationProvider(
    std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

std::vector<std::string> RemoteGenerationProvider::Generate(
    const GenerationRequest &request) {
  json body{{"prompt", request.prompt},
            {"samples", request.samples},
            {"max_length", request.max_length}};
  if (request.seed) body["seed"] = *request.seed;
  const json reply = PostJson(base_url_, timeout_, "/generate", body);
  if (!reply.contains("texts") || !reply["texts"].is_array()) {
    Unavailable("generate reply lacks texts");
  }
  std::vector<std::string> texts;
  for (const json &t : reply["texts"]) {
    if (!t.is_string()) Unavailable("generate reply has a non-text entry");
    texts.push_back(t.get<std::string>());
  }
  if (texts.size() > static_cast<size_t>(std::max(request.samples, 0))) {
    Unavailable("generate reply has more texts than samples requested");
  }
  return texts;
}

std::string RemoteGenerationProvider::Identity() const {
  return "remote:" + base_url_;
}

void MountProviderRoutes(httplib::Server &server, EmbeddingProvider &embedder,
                         GenerationProvider &generator, ProviderLimits limits) {
  server.Get("/info", [&embedder, &generator, limits](const httplib::Request &,
                                                       httplib::Response &res) {
    size_t dim = embedder.EmbedOne("probe").dim();
    res.set_content(json{{"embedding_model", embedder.Identity()},
                         {"generation_model", generator.Identity()},
                         {"dim", dim},
                         {"max_batch", limits.max_batch},
                         {"max_concurrency", limits.max_concurrency}}
                        .dump(),
                    "application/json");
  });

  server.Post("/embed", [&embedder, limits](const httplib::Request &req,
                                            httplib::Response &res) {
    std::vector<std::string> texts;
    try {
      const json body = json::parse(req.body);
      texts = body.at("texts").get<std::vector<std::string>>();
    } catch (const json::exception &e) {
      ReplyError(res, 400, "BadRequest", e.what());
      return;
    }
    if (texts.size() > limits.max_batch) {
      ReplyError(res, 413, "BatchTooLarge",
                 "batch of " + std::to_string(texts.size()) + " exceeds " +
                     std::to_string(limits.max_batch));
      return;
    }
    try {
      std::vector<EmbeddingVector> vectors = embedder.Embed(texts);
      json out = json::array();
      size_t dim = 0;
      for (const EmbeddingVector &v : vectors) {
        dim = v.dim();
        out.push_back(std::vector<double>(v.values().begin(), v.values().end()));
      }
      if (vectors.empty()) dim = embedder.EmbedOne("probe").dim();
      res.set_content(json{{"vectors", std::move(out)}, {"dim", dim}}.dump(),
                      "application/json");
    } catch (const Error &e) {
      ReplyError(res, 503, std::string(ErrorCodeName(e.code())), e.what());
    }
  });

  server.Post("/generate", [&generator](const httplib::Request &req,
                                        httplib::Response &res) {
    GenerationRequest request;
    try {
      const json body = json::parse(req.body);
      request.prompt = body.at("prompt").get<std::string>();
      request.samples = body.at("samples").get<int>();
      request.max_length = body.value("max_length", request.max_length);
      if (body.contains("seed") && !body["seed"].is_null()) {
        request.seed = body["seed"].get<uint64_t>();
      }
    } catch (const json::exception &e) {
      ReplyError(res, 400, "BadRequest", e.what());
      return;
    }
    if (request.prompt.empty()) {
      ReplyError(res, 400, "BadRequest", "prompt must be non-empty");
      return;
    }
    try {
      res.set_content(json{{"texts", generator.Generate(request)}}.dump(),
                      "application/json");
    } catch (const Error &e) {
      ReplyError(res, 503, std::string(ErrorCodeName(e.code())), e.what());
    }
  });
}

}  // namespace scriptforge
