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

// Metric kernels and the per-script summary report.

#ifndef SCRIPTFORGE_EVALUATION_H_
#define SCRIPTFORGE_EVALUATION_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "scriptforge/curation_log.h"
#include "scriptforge/script.h"

namespace scriptforge {

struct RankedRecord {
  std::string gold;
  std::vector<std::string> predictions;  // best first, no duplicates

  bool operator==(const RankedRecord &) const = default;
};

RankedRecord ToRankedRecord(const SuggestionRecord &record);
std::vector<RankedRecord> ToRankedRecords(std::span<const SuggestionRecord> records);

// Fraction of records whose gold is among the first k predictions.
// EmptyRecordSet on no records, InvalidArgument on k == 0 or duplicate
// predictions.
double TopKAccuracy(std::span<const RankedRecord> records, size_t k);
// Mean of 1/rank for golds ranked within `cutoff`, 0 otherwise.
double Mrr(std::span<const RankedRecord> records, size_t cutoff);

// linked / total variables. NoVariables when the script has none.
double LinkCoverage(const Script &script);

// Counts behind an acceptance rate. For post-curation `offered` is the number
// of suggestions shown; for mixed-initiative it is the number of option sets.
// `rate` counts accepted only. Edited items are reported separately and
// folded into `adopted_rate`.
struct AcceptanceStats {
  size_t offered = 0;
  size_t accepted = 0;
  size_t edited = 0;
  size_t rejected = 0;
  size_t pending = 0;
  double rate = 0.0;
  double adopted_rate = 0.0;  // (accepted + edited) / offered

  nlohmann::json ToJson() const;
};

// EmptyLog when there is nothing for the mode.
AcceptanceStats PostCurationAcceptance(std::span<const EventSuggestion> log);
AcceptanceStats MixedInitiativeAcceptance(std::span<const OptionSet> log);
double AcceptanceRate(const CurationLog &log, SuggestionSource mode);

struct ScriptReport {
  std::string script_id;
  std::string name;
  size_t event_count = 0;  // events entered by the curator
  size_t total_events = 0;
  size_t typed_records = 0;
  std::optional<double> top1;
  std::optional<double> top3;
  std::optional<double> top5;
  std::optional<double> mrr_at_3;
  size_t variable_count = 0;
  size_t participation_count = 0;
  size_t linked_variable_count = 0;
  std::optional<double> link_coverage;
  size_t suggestions_accepted = 0;
  size_t suggestions_offered = 0;
  size_t option_sets = 0;
  size_t option_sets_accepted = 0;
  size_t option_sets_edited = 0;
  bool has_unordered_pairs = false;
  std::optional<std::string> self_reported_time;

  nlohmann::json ToJson() const;
};

ScriptReport BuildScriptReport(const Script &script, const CurationLog &log);

// Everything the metric kernels need, pooled across scripts or read from
// line-delimited log files.
struct LogBundle {
  std::vector<RankedRecord> type_records;
  std::vector<EventSuggestion> suggestions;
  std::vector<OptionSet> option_sets;
};

// Pooled metrics over a bundle; absent entries mean no data for that metric.
nlohmann::json BundleMetrics(const LogBundle &bundle);

// Line-delimited log records, one JSON object per line with a "kind" of
// "type_choice", "suggestion" or "option_set". Blank lines are skipped.
// CorruptDocument names the offending line.
LogBundle ParseLogLines(std::string_view text);
LogBundle ReadLogFile(const std::string &path);
std::string WriteLogLines(const std::string &script_id, const CurationLog &log);

// Integer percentage, half away from zero. Display only.
long DisplayPercent(double ratio);

// One column per report, rows shaped like the classic five-script summary.
std::string RenderReportTable(std::span<const ScriptReport> reports);

}  // namespace scriptforge

#endif  // SCRIPTFORGE_EVALUATION_H_
