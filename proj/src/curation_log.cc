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

#include "scriptforge/curation_log.h"

#include <algorithm>

#include "scriptforge/error.h"
#include "scriptforge/text.h"

namespace scriptforge {

namespace {

EventSuggestion &PendingSuggestion(CurationLog &log, uint32_t id) {
  for (EventSuggestion &s : log.suggestions) {
    if (s.id != id) continue;
    if (s.decision != SuggestionDecision::kPending) {
      throw Error(ErrorCode::kInvalidArgument,
                  "suggestion " + std::to_string(id) + " was already " +
                      std::string(SuggestionDecisionName(s.decision)),
                  {{"suggestion", id}});
    }
    return s;
  }
  throw Error(ErrorCode::kNotFound, "no suggestion " + std::to_string(id),
              {{"suggestion", id}});
}

OptionSet &PendingSet(CurationLog &log, uint32_t id) {
  for (OptionSet &s : log.option_sets) {
    if (s.id != id) continue;
    if (s.outcome != SuggestionDecision::kPending) {
      throw Error(ErrorCode::kInvalidArgument,
                  "option set " + std::to_string(id) + " is already decided",
                  {{"set", id}});
    }
    return s;
  }
  throw Error(ErrorCode::kNotFound, "no option set " + std::to_string(id),
              {{"set", id}});
}

const std::string &OptionAt(const OptionSet &set, size_t option) {
  if (option >= set.options.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "option " + std::to_string(option) + " out of range",
                {{"set", set.id}, {"option", option}});
  }
  return set.options[option];
}

std::string CheckedEdit(std::string_view original, std::string_view edited) {
  std::string text = CollapseWhitespace(edited);
  if (text.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "edited text must be non-empty");
  }
  if (text == CollapseWhitespace(original)) {
    throw Error(ErrorCode::kInvalidArgument,
                "edited text is identical to the suggestion; accept it instead");
  }
  return text;
}

}  // namespace

std::string_view SuggestionSourceName(SuggestionSource s) {
  return s == SuggestionSource::kPostCuration ? "post_curation"
                                              : "mixed_initiative";
}

std::optional<SuggestionSource> ParseSuggestionSource(std::string_view name) {
  if (name == "post_curation") return SuggestionSource::kPostCuration;
  if (name == "mixed_initiative") return SuggestionSource::kMixedInitiative;
  return std::nullopt;
}

std::string_view SuggestionDecisionName(SuggestionDecision d) {
  switch (d) {
    case SuggestionDecision::kPending: return "pending";
    case SuggestionDecision::kAccepted: return "accepted";
    case SuggestionDecision::kEdited: return "edited";
    case SuggestionDecision::kRejected: return "rejected";
  }
  return "pending";
}

std::optional<SuggestionDecision> ParseSuggestionDecision(std::string_view name) {
  if (name == "pending") return SuggestionDecision::kPending;
  if (name == "accepted") return SuggestionDecision::kAccepted;
  if (name == "edited") return SuggestionDecision::kEdited;
  if (name == "rejected") return SuggestionDecision::kRejected;
  return std::nullopt;
}

const CandidateSet *CurationLog::FindCandidateSet(VariableId variable) const {
  for (const CandidateSet &s : candidate_sets) {
    if (s.variable == variable) return &s;
  }
  return nullptr;
}

std::vector<std::string> CurationLog::PriorSuggestionTexts() const {
  std::vector<std::string> texts;
  for (const EventSuggestion &s : suggestions) texts.push_back(s.text);
  return texts;
}

std::vector<uint32_t> RecordSuggestionBatch(Script &script, CurationLog &log,
                                            const std::vector<std::string> &kept) {
  const uint32_t batch = log.next_batch_id++;
  std::vector<uint32_t> ids;
  for (const std::string &text : kept) {
    EventSuggestion s;
    s.id = log.next_suggestion_id++;
    s.batch = batch;
    s.text = text;
    log.suggestions.push_back(std::move(s));
    ids.push_back(log.suggestions.back().id);
  }
  script.BumpVersion();
  return ids;
}

EventId AcceptSuggestion(Script &script, CurationLog &log, uint32_t id,
                         int64_t now) {
  EventSuggestion &s = PendingSuggestion(log, id);
  const EventId event = script.AddEvent(s.text, Provenance::kMachineAccepted, now);
  s.decision = SuggestionDecision::kAccepted;
  s.event = event;
  return event;
}

EventId EditSuggestion(Script &script, CurationLog &log, uint32_t id,
                       std::string_view edited_text, int64_t now) {
  EventSuggestion &s = PendingSuggestion(log, id);
  std::string text = CheckedEdit(s.text, edited_text);
  const EventId event = script.AddEvent(text, Provenance::kMachineEdited, now);
  s.decision = SuggestionDecision::kEdited;
  s.edited_text = std::move(text);
  s.event = event;
  return event;
}

void RejectSuggestion(Script &script, CurationLog &log, uint32_t id) {
  PendingSuggestion(log, id).decision = SuggestionDecision::kRejected;
  script.BumpVersion();
}

uint32_t RecordOptionSet(Script &script, CurationLog &log, int step_number,
                         const std::vector<std::string> &options) {
  OptionSet set;
  set.id = log.next_set_id++;
  set.step_number = step_number;
  set.options = options;
  log.option_sets.push_back(std::move(set));
  script.BumpVersion();
  return log.option_sets.back().id;
}

EventId AcceptOption(Script &script, CurationLog &log, uint32_t set_id,
                     size_t option, int64_t now) {
  OptionSet &set = PendingSet(log, set_id);
  const std::string text = OptionAt(set, option);
  const EventId event = script.AddEvent(text, Provenance::kMachineAccepted, now);
  set.outcome = SuggestionDecision::kAccepted;
  set.chosen = option;
  set.final_text = text;
  set.event = event;
  return event;
}

EventId EditOption(Script &script, CurationLog &log, uint32_t set_id,
                   size_t option, std::string_view edited_text, int64_t now) {
  OptionSet &set = PendingSet(log, set_id);
  std::string text = CheckedEdit(OptionAt(set, option), edited_text);
  const EventId event = script.AddEvent(text, Provenance::kMachineEdited, now);
  set.outcome = SuggestionDecision::kEdited;
  set.chosen = option;
  set.final_text = std::move(text);
  set.event = event;
  return event;
}

EventId TypeOwnStep(Script &script, CurationLog &log, uint32_t set_id,
                    std::string_view text, int64_t now) {
  OptionSet &set = PendingSet(log, set_id);
  const EventId event = script.AddEvent(text, Provenance::kCurator, now);
  set.outcome = SuggestionDecision::kRejected;
  set.final_text = script.FindEvent(event)->text;
  set.event = event;
  return event;
}

const CandidateSet &PublishCandidateSet(Script &script, CurationLog &log,
                                        VariableId variable,
                                        std::vector<LinkCandidate> candidates) {
  const ReferenceVariable *v = script.FindVariable(variable);
  if (v == nullptr) {
    throw Error(ErrorCode::kUnknownVariable,
                "unknown variable #" + std::to_string(variable.value),
                {{"variable", variable.value}});
  }
  CandidateSet set{variable, v->label, log.next_candidate_set_version++,
                   std::move(candidates)};
  script.BumpVersion();
  for (CandidateSet &existing : log.candidate_sets) {
    if (existing.variable == variable) {
      existing = std::move(set);
      return existing;
    }
  }
  log.candidate_sets.push_back(std::move(set));
  return log.candidate_sets.back();
}

const LinkDecision &RecordLinkDecision(Script &script, CurationLog &log,
                                       VariableId variable,
                                       uint64_t presented_version,
                                       const std::optional<std::string> &qid) {
  const CandidateSet *current = log.FindCandidateSet(variable);
  if (current == nullptr) {
    throw Error(ErrorCode::kStaleCandidate,
                "no candidate set was presented for variable #" +
                    std::to_string(variable.value),
                {{"variable", variable.value}});
  }
  log.link_decisions.push_back(DecideLink(script, *current, presented_version, qid));
  return log.link_decisions.back();
}

void RecordTypeChoice(Script &script, CurationLog &log, const Ontology &ontology,
                      EventId event, std::vector<TypeSuggestion> suggestions,
                      const std::string &chosen_type) {
  const Event *e = script.FindEvent(event);
  if (e == nullptr) {
    throw Error(ErrorCode::kUnknownEvent, "unknown event #" +
                                              std::to_string(event.value),
                {{"event", event.value}});
  }
  SuggestionRecord record = RecordChoice(ontology, *e, std::move(suggestions),
                                         chosen_type);
  script.AssignEventType(ontology, event, chosen_type);
  // One record per event: a later choice replaces the earlier one.
  std::erase_if(log.type_records, [event](const SuggestionRecord &r) {
    return r.event == event;
  });
  log.type_records.push_back(std::move(record));
}

}  // namespace scriptforge
