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

// Grounds argument labels ("car dealership", "buyer") in a knowledge-base
// subset. Retrieval matches labels and aliases, keeps only class entries,
// and the survivors are reranked by embedding similarity between the label
// and each entry's description.

#ifndef SCRIPTFORGE_ENTITY_LINKER_H_
#define SCRIPTFORGE_ENTITY_LINKER_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scriptforge/embedding.h"
#include "scriptforge/script.h"

namespace scriptforge {

struct KBEntry {
  std::string qid;
  std::string label;
  std::vector<std::string> aliases;
  std::string description;
  bool is_class = false;

  bool operator==(const KBEntry &) const = default;
};

struct RetrievedEntry {
  const KBEntry *entry = nullptr;
  double score = 0.0;  // 1.0 for an exact label/alias match
  bool exact = false;
};

// Immutable after construction; concurrent searches are safe.
class KBIndex {
 public:
  KBIndex() = default;
  // Throws DuplicateQid or MalformedRow.
  explicit KBIndex(std::vector<KBEntry> entries);

  // Tab-separated rows: qid, label, aliases (pipe-delimited), description,
  // is_class (true/false/1/0). Blank lines and lines starting with '#' are
  // skipped. MalformedRow carries the 1-based line number.
  static KBIndex FromTsv(std::string_view text);
  static KBIndex FromFile(const std::string &path);

  size_t size() const { return entries_.size(); }
  const std::vector<KBEntry> &entries() const { return entries_; }
  const KBEntry *Find(std::string_view qid) const;

  // Class entries only. Exact whole-phrase matches on a label or alias come
  // first with score 1.0; other entries score by the fraction of distinct
  // query tokens found among their label/alias tokens. Ties by qid.
  std::vector<RetrievedEntry> Search(std::string_view label_text,
                                     size_t limit) const;

 private:
  std::vector<KBEntry> entries_;
  std::map<std::string, std::vector<size_t>, std::less<>> token_index_;
  std::map<std::string, std::vector<size_t>, std::less<>> phrase_index_;
  std::map<std::string, size_t, std::less<>> qid_index_;
};

struct LinkCandidate {
  KBEntry entry;
  double retrieval_score = 0.0;
  double rerank_score = 0.0;
  int rank = 0;

  bool operator==(const LinkCandidate &) const = default;
};

// Reorders by cosine(embed(label), embed(description)), ties by qid. Throws
// InvalidArgument when `candidates` is empty; provider errors propagate.
std::vector<LinkCandidate> Rerank(std::string_view label_text,
                                  const std::vector<RetrievedEntry> &candidates,
                                  EmbeddingProvider &provider);

inline constexpr size_t kRetrievalDepth = 20;
inline constexpr size_t kPresentedCandidates = 5;

// Search + rerank + truncate to what the curator is shown. Empty when
// retrieval finds nothing.
std::vector<LinkCandidate> LinkCandidates(const KBIndex &index,
                                          std::string_view label_text,
                                          EmbeddingProvider &provider,
                                          size_t retrieval_depth = kRetrievalDepth,
                                          size_t presented = kPresentedCandidates);

// The list shown to the curator for one variable, stamped with a version so
// decisions against a regenerated list can be refused.
struct CandidateSet {
  VariableId variable;
  std::string label;
  uint64_t set_version = 0;
  std::vector<LinkCandidate> candidates;

  bool operator==(const CandidateSet &) const = default;
};

struct LinkDecision {
  VariableId variable;
  std::string label;
  uint64_t set_version = 0;
  std::vector<std::string> offered;  // qids in presented order
  std::optional<std::string> chosen;  // nullopt = none of the above

  bool operator==(const LinkDecision &) const = default;
};

// Applies the curator's choice to `script`. `presented_version` is the set
// version the curator saw; a mismatch with `current` raises StaleCandidate.
// A qid outside the presented list raises InvalidArgument.
LinkDecision DecideLink(Script &script, const CandidateSet &current,
                        uint64_t presented_version,
                        const std::optional<std::string> &qid);

}  // namespace scriptforge

#endif  // SCRIPTFORGE_ENTITY_LINKER_H_
