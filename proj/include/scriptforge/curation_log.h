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

// Everything the machine proposed for a script and what the curator did with
// it. Persisted next to the script and consumed by the evaluation kernels.

#ifndef SCRIPTFORGE_CURATION_LOG_H_
#define SCRIPTFORGE_CURATION_LOG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scriptforge/entity_linker.h"
#include "scriptforge/recommender.h"
#include "scriptforge/script.h"
#include "scriptforge/type_suggester.h"

namespace scriptforge {

enum class SuggestionSource { kPostCuration, kMixedInitiative };
enum class SuggestionDecision { kPending, kAccepted, kEdited, kRejected };

std::string_view SuggestionSourceName(SuggestionSource s);
std::optional<SuggestionSource> ParseSuggestionSource(std::string_view name);
std::string_view SuggestionDecisionName(SuggestionDecision d);
std::optional<SuggestionDecision> ParseSuggestionDecision(std::string_view name);

// A post-curation suggestion. `edited_text` is present exactly when the
// decision is kEdited, and then differs from `text`.
struct EventSuggestion {
  uint32_t id = 0;
  uint32_t batch = 0;
  std::string text;
  SuggestionSource source = SuggestionSource::kPostCuration;
  SuggestionDecision decision = SuggestionDecision::kPending;
  std::optional<std::string> edited_text;
  std::optional<EventId> event;  // event created on accept/edit

  bool operator==(const EventSuggestion &) const = default;
};

// One mixed-initiative round: options for the single next step. kRejected
// means the curator ignored every option and typed their own step.
struct OptionSet {
  uint32_t id = 0;
  int step_number = 0;
  std::vector<std::string> options;
  SuggestionDecision outcome = SuggestionDecision::kPending;
  std::optional<size_t> chosen;  // option index for accepted/edited
  std::optional<std::string> final_text;
  std::optional<EventId> event;

  bool operator==(const OptionSet &) const = default;
};

struct CurationLog {
  std::vector<SuggestionRecord> type_records;
  std::vector<EventSuggestion> suggestions;
  std::vector<OptionSet> option_sets;
  std::vector<CandidateSet> candidate_sets;  // latest set per variable
  std::vector<LinkDecision> link_decisions;
  std::optional<std::string> self_reported_time;
  uint32_t next_suggestion_id = 1;
  uint32_t next_batch_id = 1;
  uint32_t next_set_id = 1;
  uint64_t next_candidate_set_version = 1;

  bool operator==(const CurationLog &) const = default;

  const CandidateSet *FindCandidateSet(VariableId variable) const;
  // Texts of every post-curation suggestion so far, any decision.
  std::vector<std::string> PriorSuggestionTexts() const;
};

// Curation actions. Each updates the script (bumping its version) and the
// log together; on error neither changes.

// Stores `kept` as pending suggestions of a new batch; returns their ids.
std::vector<uint32_t> RecordSuggestionBatch(Script &script, CurationLog &log,
                                            const std::vector<std::string> &kept);
EventId AcceptSuggestion(Script &script, CurationLog &log, uint32_t id,
                         int64_t now);
EventId EditSuggestion(Script &script, CurationLog &log, uint32_t id,
                       std::string_view edited_text, int64_t now);
void RejectSuggestion(Script &script, CurationLog &log, uint32_t id);

uint32_t RecordOptionSet(Script &script, CurationLog &log, int step_number,
                         const std::vector<std::string> &options);
EventId AcceptOption(Script &script, CurationLog &log, uint32_t set_id,
                     size_t option, int64_t now);
EventId EditOption(Script &script, CurationLog &log, uint32_t set_id,
                   size_t option, std::string_view edited_text, int64_t now);
// Ignore all options and enter the next step by hand.
EventId TypeOwnStep(Script &script, CurationLog &log, uint32_t set_id,
                    std::string_view text, int64_t now);

// Publishes a fresh candidate set for a variable, replacing the previous one.
const CandidateSet &PublishCandidateSet(Script &script, CurationLog &log,
                                        VariableId variable,
                                        std::vector<LinkCandidate> candidates);
// DecideLink against the published set, logging the decision.
const LinkDecision &RecordLinkDecision(Script &script, CurationLog &log,
                                       VariableId variable,
                                       uint64_t presented_version,
                                       const std::optional<std::string> &qid);

void RecordTypeChoice(Script &script, CurationLog &log, const Ontology &ontology,
                      EventId event, std::vector<TypeSuggestion> suggestions,
                      const std::string &chosen_type);

}  // namespace scriptforge

#endif  // SCRIPTFORGE_CURATION_LOG_H_
