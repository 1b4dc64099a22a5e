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

// Event recommendations from a generation provider.
//
// The script is rendered as a numbered list that stops at the next number
// ("... 3. Identify car models you can afford 4."), the provider continues
// it, continuations are split back into steps, and the steps go through a
// fixed filter chain:
//
//   1. empty / whitespace-only          -> empty
//   2. fewer than two words              -> too_short
//   3. a run of >= 3 consecutive bytes that are neither ASCII letters nor
//      whitespace (non-ASCII bytes count as letters) -> nonalpha_run
//   4. equal after lowercasing and whitespace collapsing to a script event,
//      a prior suggestion, or an earlier kept candidate -> exact_duplicate
//   5. GestaltRatio >= threshold against the same references -> near_duplicate
//   6. beyond the first `max_kept` survivors -> overflow

#ifndef SCRIPTFORGE_RECOMMENDER_H_
#define SCRIPTFORGE_RECOMMENDER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "scriptforge/embedding.h"
#include "scriptforge/script.h"

namespace scriptforge {

struct Prompt {
  std::string script_name;
  std::string script_description;
  std::string request_sentence;
  std::vector<std::string> numbered_steps;
  std::string rendered;

  // Number the continuation is expected to start with.
  int next_number() const { return static_cast<int>(numbered_steps.size()) + 1; }
};

// name \n description \n "Describe steps of <name>." \n "1. s1 2. s2 ... N+1."
// Steps are the event texts in creation order.
Prompt BuildPrompt(const Script &script);

struct ParsedGeneration {
  std::vector<std::string> steps;
  size_t parse_loss = 0;  // 1 if a malformed boundary truncated the text
};

// Splits a continuation on "K." markers (digits at a word start, a period,
// then whitespace or end of text) with K counting up from
// `expected_start`. The text may open with the "<expected_start>." marker.
// The first marker carrying any other number ends parsing; everything after
// it is dropped. Steps are whitespace-collapsed; an all-whitespace input
// yields no steps.
ParsedGeneration ParseGeneration(std::string_view raw, int expected_start);

enum class DropReason {
  kEmpty,
  kTooShort,
  kNonalphaRun,
  kExactDuplicate,
  kNearDuplicate,
  kOverflow,
};

std::string_view DropReasonName(DropReason reason);

struct Disposition {
  std::string text;
  std::optional<DropReason> dropped;  // nullopt = kept
  std::optional<std::string> against;  // reference hit by rules 4 and 5

  bool kept() const { return !dropped.has_value(); }
  bool operator==(const Disposition &) const = default;
};

struct FilterReport {
  std::vector<Disposition> dispositions;  // one per input, input order
  size_t parse_loss = 0;

  size_t kept_count() const;
  size_t count(DropReason reason) const;
  nlohmann::json ToJson() const;

  bool operator==(const FilterReport &) const = default;
};

struct FilterConfig {
  double near_duplicate_threshold = 0.8;
  size_t max_kept = 12;
};

struct FilterResult {
  std::vector<std::string> kept;
  FilterReport report;
};

// Throws InvalidArgument unless the threshold lies in (0, 1].
FilterResult FilterCandidates(const std::vector<std::string> &candidates,
                              const std::vector<std::string> &script_events,
                              const std::vector<std::string> &prior_suggestions,
                              const FilterConfig &config = {});

struct RecommenderConfig {
  int post_curation_samples = 15;
  int options_per_set = 5;
  int max_length = 40;
  std::optional<uint64_t> seed;
  FilterConfig filter;
};

struct Recommendation {
  Prompt prompt;
  std::vector<std::string> raw;  // provider output, unparsed
  std::vector<std::string> kept;
  FilterReport report;
};

// Post-curation mode: every parsed step of every sample is a candidate.
// `prior_suggestions` are earlier suggestion texts, whatever their decision.
Recommendation RecommendMissing(const Script &script,
                                const std::vector<std::string> &prior_suggestions,
                                GenerationProvider &provider,
                                const RecommenderConfig &config = {});

// Mixed-initiative mode: each sample contributes only its first parsed step;
// at most options_per_set options survive. Requires at least one event.
Recommendation MixedInitiativeNext(const Script &script,
                                   GenerationProvider &provider,
                                   const RecommenderConfig &config = {});

}  // namespace scriptforge

#endif  // SCRIPTFORGE_RECOMMENDER_H_
