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

#include "scriptforge/type_suggester.h"

#include <algorithm>

#include "scriptforge/error.h"
#include "scriptforge/text.h"

namespace scriptforge {

namespace {

std::string CacheKey(const Ontology &ontology,
                     const std::vector<std::string> &texts,
                     const EmbeddingProvider &provider) {
  std::string joined;
  for (size_t i = 0; i < texts.size(); ++i) {
    joined += ontology.event_types()[i].id;
    joined += '\x1f';
    joined += texts[i];
    joined += '\x1e';
  }
  return ontology.version() + '\x1d' + std::to_string(Fnv1a32(joined)) + '\x1d' +
         provider.Identity();
}

}  // namespace

std::vector<EmbeddingVector> TypeSuggester::CandidateEmbeddings(
    const Ontology &ontology, EmbeddingProvider &provider) {
  std::vector<std::string> texts;
  for (const OntologyEventType &type : ontology.event_types()) {
    texts.push_back(CandidateText(type));
  }
  const std::string key = CacheKey(ontology, texts, provider);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  std::vector<EmbeddingVector> vectors = provider.Embed(texts);
  if (vectors.size() != texts.size()) {
    throw Error(ErrorCode::kProviderUnavailable,
                "provider returned " + std::to_string(vectors.size()) +
                    " vectors for " + std::to_string(texts.size()) + " texts");
  }
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.try_emplace(key, std::move(vectors)).first->second;
}

std::vector<TypeSuggestion> TypeSuggester::Suggest(std::string_view event_text,
                                                   const Ontology &ontology,
                                                   EmbeddingProvider &provider,
                                                   size_t k) {
  const std::string text = CollapseWhitespace(event_text);
  if (text.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "event text must be non-empty");
  }
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");

  const std::vector<EmbeddingVector> candidates =
      CandidateEmbeddings(ontology, provider);
  const EmbeddingVector query = provider.EmbedOne(text);

  std::vector<TypeSuggestion> ranked;
  ranked.reserve(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    ranked.push_back({ontology.event_types()[i].id, Cosine(query, candidates[i]),
                      0});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const TypeSuggestion &a, const TypeSuggestion &b) {
              if (a.score != b.score) return a.score > b.score;
              return a.type_id < b.type_id;
            });
  if (ranked.size() > k) ranked.resize(k);
  for (size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = static_cast<int>(i + 1);
  return ranked;
}

void TypeSuggester::ClearCache() {
  std::lock_guard<std::mutex> lock(mu_);
  cache_.clear();
}

size_t TypeSuggester::cached_entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.size();
}

double SuggestionRecord::ReciprocalRank() const {
  for (const TypeSuggestion &s : suggestions) {
    if (s.type_id == chosen_type) return 1.0 / s.rank;
  }
  return 0.0;
}

SuggestionRecord RecordChoice(const Ontology &ontology, const Event &event,
                              std::vector<TypeSuggestion> suggestions,
                              const std::string &chosen_type_id) {
  if (!ontology.HasEventType(chosen_type_id)) {
    throw Error(ErrorCode::kUnknownType,
                "unknown event type '" + chosen_type_id + "'",
                {{"type", chosen_type_id}});
  }
  return {event.id, event.text, std::move(suggestions), chosen_type_id};
}

}  // namespace scriptforge
