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

#include "scriptforge/recommender.h"

#include <algorithm>

#include "scriptforge/error.h"
#include "scriptforge/gestalt.h"
#include "scriptforge/text.h"

namespace scriptforge {

namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

struct Marker {
  size_t begin = 0;  // first digit
  size_t end = 0;    // one past the period
  long number = 0;
};

// Marker starting exactly at `i`, if any.
std::optional<Marker> MarkerAt(std::string_view text, size_t i) {
  if (i >= text.size() || !IsDigit(text[i])) return std::nullopt;
  if (i > 0 && !IsSpace(text[i - 1])) return std::nullopt;
  size_t j = i;
  while (j < text.size() && IsDigit(text[j])) ++j;
  if (j >= text.size() || text[j] != '.') return std::nullopt;
  if (j + 1 < text.size() && !IsSpace(text[j + 1])) return std::nullopt;
  if (j - i > 9) return std::nullopt;
  return Marker{i, j + 1, std::stol(std::string(text.substr(i, j - i)))};
}

bool HasNonalphaRun(std::string_view text, size_t run_length) {
  size_t run = 0;
  for (char c : text) {
    const bool letter = IsAsciiAlpha(c) || static_cast<unsigned char>(c) >= 0x80;
    if (letter || IsSpace(c)) {
      run = 0;
    } else if (++run >= run_length) {
      return true;
    }
  }
  return false;
}

}  // namespace

Prompt BuildPrompt(const Script &script) {
  Prompt prompt;
  prompt.script_name = CollapseWhitespace(script.name());
  prompt.script_description = CollapseWhitespace(script.description());
  prompt.request_sentence = "Describe steps of " + prompt.script_name + ".";
  for (const Event &e : script.events()) {
    prompt.numbered_steps.push_back(CollapseWhitespace(e.text));
  }
  std::string list;
  for (size_t i = 0; i < prompt.numbered_steps.size(); ++i) {
    list += std::to_string(i + 1) + ". " + prompt.numbered_steps[i] + " ";
  }
  list += std::to_string(prompt.numbered_steps.size() + 1) + ".";
  prompt.rendered = prompt.script_name + "\n" + prompt.script_description +
                    "\n" + prompt.request_sentence + "\n" + list;
  return prompt;
}

ParsedGeneration ParseGeneration(std::string_view raw, int expected_start) {
  ParsedGeneration out;
  size_t pos = 0;
  while (pos < raw.size() && IsSpace(raw[pos])) ++pos;
  if (pos == raw.size()) return out;

  long expected = expected_start;
  if (auto lead = MarkerAt(raw, pos)) {
    if (lead->number != expected) {
      out.parse_loss = 1;
      return out;
    }
    pos = lead->end;
  }
  size_t chunk_start = pos;
  for (size_t i = pos; i < raw.size(); ++i) {
    auto marker = MarkerAt(raw, i);
    if (!marker) continue;
    out.steps.push_back(CollapseWhitespace(raw.substr(chunk_start, i - chunk_start)));
    if (marker->number != expected + 1) {
      out.parse_loss = 1;
      return out;
    }
    ++expected;
    chunk_start = marker->end;
    i = marker->end - 1;
  }
  out.steps.push_back(CollapseWhitespace(raw.substr(chunk_start)));
  return out;
}

std::string_view DropReasonName(DropReason reason) {
  switch (reason) {
    case DropReason::kEmpty: return "empty";
    case DropReason::kTooShort: return "too_short";
    case DropReason::kNonalphaRun: return "nonalpha_run";
    case DropReason::kExactDuplicate: return "exact_duplicate";
    case DropReason::kNearDuplicate: return "near_duplicate";
    case DropReason::kOverflow: return "overflow";
  }
  return "unknown";
}

size_t FilterReport::kept_count() const {
  return static_cast<size_t>(std::count_if(
      dispositions.begin(), dispositions.end(),
      [](const Disposition &d) { return d.kept(); }));
}

size_t FilterReport::count(DropReason reason) const {
  return static_cast<size_t>(std::count_if(
      dispositions.begin(), dispositions.end(),
      [reason](const Disposition &d) { return d.dropped == reason; }));
}

nlohmann::json FilterReport::ToJson() const {
  nlohmann::json items = nlohmann::json::array();
  for (const Disposition &d : dispositions) {
    nlohmann::json item{{"text", d.text}};
    if (d.kept()) {
      item["disposition"] = "kept";
    } else {
      item["disposition"] = "dropped";
      item["reason"] = std::string(DropReasonName(*d.dropped));
    }
    if (d.against) item["against"] = *d.against;
    items.push_back(std::move(item));
  }
  nlohmann::json counts{{"kept", kept_count()}};
  for (DropReason r : {DropReason::kEmpty, DropReason::kTooShort,
                       DropReason::kNonalphaRun, DropReason::kExactDuplicate,
                       DropReason::kNearDuplicate, DropReason::kOverflow}) {
    counts[std::string(DropReasonName(r))] = count(r);
  }
  return {{"dispositions", std::move(items)},
          {"counts", std::move(counts)},
          {"parse_loss", parse_loss}};
}

FilterResult FilterCandidates(const std::vector<std::string> &candidates,
                              const std::vector<std::string> &script_events,
                              const std::vector<std::string> &prior_suggestions,
                              const FilterConfig &config) {
  const double theta = config.near_duplicate_threshold;
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "near-duplicate threshold must lie in (0, 1]");
  }
  // References in comparison order: script events, prior suggestions, then
  // kept candidates as they accumulate.
  std::vector<std::string> references;
  references.insert(references.end(), script_events.begin(), script_events.end());
  references.insert(references.end(), prior_suggestions.begin(),
                    prior_suggestions.end());
  std::vector<std::string> normalized_refs;
  for (const std::string &r : references) {
    normalized_refs.push_back(NormalizeForMatch(r));
  }

  FilterResult result;
  for (const std::string &candidate : candidates) {
    Disposition d{candidate, std::nullopt, std::nullopt};
    const std::string norm = NormalizeForMatch(candidate);
    if (norm.empty()) {
      d.dropped = DropReason::kEmpty;
    } else if (SplitWords(norm).size() < 2) {
      d.dropped = DropReason::kTooShort;
    } else if (HasNonalphaRun(candidate, 3)) {
      d.dropped = DropReason::kNonalphaRun;
    } else {
      for (size_t i = 0; i < normalized_refs.size() && !d.dropped; ++i) {
        if (normalized_refs[i] == norm) {
          d.dropped = DropReason::kExactDuplicate;
          d.against = references[i];
        }
      }
      for (size_t i = 0; i < normalized_refs.size() && !d.dropped; ++i) {
        if (RawGestaltRatio(norm, normalized_refs[i]) >= theta) {
          d.dropped = DropReason::kNearDuplicate;
          d.against = references[i];
        }
      }
      if (!d.dropped && result.kept.size() >= config.max_kept) {
        d.dropped = DropReason::kOverflow;
      }
      if (!d.dropped) {
        result.kept.push_back(candidate);
        references.push_back(candidate);
        normalized_refs.push_back(norm);
      }
    }
    result.report.dispositions.push_back(std::move(d));
  }
  return result;
}

Recommendation RecommendMissing(const Script &script,
                                const std::vector<std::string> &prior_suggestions,
                                GenerationProvider &provider,
                                const RecommenderConfig &config) {
  Recommendation rec;
  rec.prompt = BuildPrompt(script);
  rec.raw = provider.Generate({rec.prompt.rendered, config.post_curation_samples,
                               config.max_length, config.seed});
  std::vector<std::string> candidates;
  size_t loss = 0;
  for (const std::string &text : rec.raw) {
    ParsedGeneration parsed = ParseGeneration(text, rec.prompt.next_number());
    loss += parsed.parse_loss;
    candidates.insert(candidates.end(), parsed.steps.begin(), parsed.steps.end());
  }
  FilterResult filtered = FilterCandidates(candidates, rec.prompt.numbered_steps,
                                           prior_suggestions, config.filter);
  rec.kept = std::move(filtered.kept);
  rec.report = std::move(filtered.report);
  rec.report.parse_loss = loss;
  return rec;
}

Recommendation MixedInitiativeNext(const Script &script,
                                   GenerationProvider &provider,
                                   const RecommenderConfig &config) {
  if (script.events().empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "mixed-initiative mode needs at least the first step");
  }
  if (config.options_per_set <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "options_per_set must be >= 1");
  }
  Recommendation rec;
  rec.prompt = BuildPrompt(script);
  rec.raw = provider.Generate({rec.prompt.rendered, config.options_per_set,
                               config.max_length, config.seed});
  std::vector<std::string> candidates;
  size_t loss = 0;
  for (const std::string &text : rec.raw) {
    ParsedGeneration parsed = ParseGeneration(text, rec.prompt.next_number());
    loss += parsed.parse_loss;
    if (!parsed.steps.empty()) candidates.push_back(parsed.steps.front());
  }
  FilterConfig filter = config.filter;
  filter.max_kept = std::min(filter.max_kept,
                             static_cast<size_t>(config.options_per_set));
  FilterResult filtered =
      FilterCandidates(candidates, rec.prompt.numbered_steps, {}, filter);
  rec.kept = std::move(filtered.kept);
  rec.report = std::move(filtered.report);
  rec.report.parse_loss = loss;
  return rec;
}

}  // namespace scriptforge
