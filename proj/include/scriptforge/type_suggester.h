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

#ifndef SCRIPTFORGE_TYPE_SUGGESTER_H_
#define SCRIPTFORGE_TYPE_SUGGESTER_H_

#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "scriptforge/embedding.h"
#include "scriptforge/ontology.h"
#include "scriptforge/script.h"

namespace scriptforge {

struct TypeSuggestion {
  std::string type_id;
  double score = 0.0;  // raw cosine
  int rank = 0;        // 1-based

  bool operator==(const TypeSuggestion &) const = default;
};

// Ranks ontology event types by cosine similarity between the curator's text
// and each type's candidate text (definition + template). Candidate
// embeddings are cached per (ontology version, content fingerprint, provider
// identity); the cache is safe to share between threads.
class TypeSuggester {
 public:
  static constexpr size_t kDefaultK = 3;

  // Top-k by score, ties by type id. k larger than the inventory returns all
  // types. Throws InvalidArgument for empty text or k == 0; provider errors
  // propagate.
  std::vector<TypeSuggestion> Suggest(std::string_view event_text,
                                      const Ontology &ontology,
                                      EmbeddingProvider &provider,
                                      size_t k = kDefaultK);

  void ClearCache();
  size_t cached_entries() const;

 private:
  std::vector<EmbeddingVector> CandidateEmbeddings(const Ontology &ontology,
                                                   EmbeddingProvider &provider);

  mutable std::mutex mu_;
  std::map<std::string, std::vector<EmbeddingVector>> cache_;
};

// What the curator chose for an event, next to what was suggested. The chosen
// type may come from outside the suggestion list.
struct SuggestionRecord {
  EventId event;
  std::string event_text;
  std::vector<TypeSuggestion> suggestions;
  std::string chosen_type;

  // 1/rank of the chosen type within the suggestions, 0 if absent.
  double ReciprocalRank() const;

  bool operator==(const SuggestionRecord &) const = default;
};

// Throws UnknownType if `chosen_type_id` is not in the ontology.
SuggestionRecord RecordChoice(const Ontology &ontology, const Event &event,
                              std::vector<TypeSuggestion> suggestions,
                              const std::string &chosen_type_id);

}  // namespace scriptforge

#endif  // SCRIPTFORGE_TYPE_SUGGESTER_H_
