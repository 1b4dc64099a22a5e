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

#ifndef SCRIPTFORGE_PROVIDERS_H_
#define SCRIPTFORGE_PROVIDERS_H_

#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"
#include "scriptforge/embedding.h"

namespace httplib {
class Server;
}

namespace scriptforge {

inline constexpr std::string_view kTranscriptSchema = "script-forge/transcript@1";

// One transcript entry: a prompt matcher and its canned continuations.
struct TranscriptEntry {
  enum class Match { kExact, kContains, kSuffix, kAny };
  Match match = Match::kAny;
  std::string pattern;
  std::vector<std::string> continuations;

  bool Matches(const std::string &prompt) const;
};

// Replays committed generation transcripts. The first entry whose matcher
// accepts the prompt answers with its first `samples` continuations; a prompt
// that matches nothing yields no continuations.
class ScriptedGenerationProvider : public GenerationProvider {
 public:
  ScriptedGenerationProvider() = default;
  explicit ScriptedGenerationProvider(std::vector<TranscriptEntry> entries)
      : entries_(std::move(entries)) {}

  static ScriptedGenerationProvider FromJson(const nlohmann::json &doc);
  static ScriptedGenerationProvider FromFile(const std::string &path);
  // Concatenates every *.json transcript in `dir`, in file name order.
  static ScriptedGenerationProvider FromDirectory(const std::string &dir);

  void Append(const ScriptedGenerationProvider &other);

  std::vector<std::string> Generate(const GenerationRequest &request) override;
  std::string Identity() const override { return "scripted-transcript"; }

  const std::vector<TranscriptEntry> &entries() const { return entries_; }

 private:
  std::vector<TranscriptEntry> entries_;
};

// Wire protocol client. See docs/formats.md, "Provider wire protocol".
//
//   POST /embed     {"texts": [...]}                      -> {"vectors": [[...]], "dim": n}
//   POST /generate  {"prompt", "samples", "max_length", "seed"?} -> {"texts": [...]}
//   GET  /info      -> {"embedding_model", "generation_model", "dim",
//                       "max_batch", "max_concurrency"}
//
// Any transport failure, non-2xx status or schema violation surfaces as
// ProviderUnavailable.
class RemoteEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit RemoteEmbeddingProvider(
      std::string base_url,
      std::chrono::milliseconds timeout = std::chrono::seconds(30));

  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) override;
  std::string Identity() const override;

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

class RemoteGenerationProvider : public GenerationProvider {
 public:
  explicit RemoteGenerationProvider(
      std::string base_url,
      std::chrono::milliseconds timeout = std::chrono::seconds(60));

  std::vector<std::string> Generate(const GenerationRequest &request) override;
  std::string Identity() const override;

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

struct ProviderLimits {
  size_t max_batch = 256;
  int max_concurrency = 8;
};

// Serves the wire protocol from in-process providers. Used for the stub
// provider server and for contract tests.
void MountProviderRoutes(httplib::Server &server, EmbeddingProvider &embedder,
                         GenerationProvider &generator,
                         ProviderLimits limits = {});

}  // namespace scriptforge

#endif  // SCRIPTFORGE_PROVIDERS_H_
