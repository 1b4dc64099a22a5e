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

#include "scriptforge/evaluation.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "scriptforge/error.h"
#include "scriptforge/text.h"

namespace scriptforge {

namespace {

void CheckRecords(std::span<const RankedRecord> records, size_t k,
                  const char *what) {
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyRecordSet, std::string(what) + " of no records");
  }
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " needs k >= 1");
  }
  for (size_t i = 0; i < records.size(); ++i) {
    std::set<std::string_view> seen;
    for (const std::string &p : records[i].predictions) {
      if (!seen.insert(p).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "record " + std::to_string(i) + " repeats prediction " + p,
                    {{"record", i}, {"prediction", p}});
      }
    }
  }
}

// 1-based rank of the gold label, 0 when absent.
size_t GoldRank(const RankedRecord &r) {
  auto it = std::find(r.predictions.begin(), r.predictions.end(), r.gold);
  return it == r.predictions.end()
             ? 0
             : static_cast<size_t>(it - r.predictions.begin()) + 1;
}

double Ratio(size_t num, size_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

void FinishRates(AcceptanceStats &s) {
  s.rate = Ratio(s.accepted, s.offered);
  s.adopted_rate = Ratio(s.accepted + s.edited, s.offered);
}

void Tally(AcceptanceStats &s, SuggestionDecision d) {
  ++s.offered;
  switch (d) {
    case SuggestionDecision::kAccepted: ++s.accepted; break;
    case SuggestionDecision::kEdited: ++s.edited; break;
    case SuggestionDecision::kRejected: ++s.rejected; break;
    case SuggestionDecision::kPending: ++s.pending; break;
  }
}

nlohmann::json Optional(const std::optional<double> &v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string Upper(std::string s) {
  for (char &c : s) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return s;
}

std::string PadRight(std::string s, size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

RankedRecord ToRankedRecord(const SuggestionRecord &record) {
  std::vector<TypeSuggestion> sorted = record.suggestions;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TypeSuggestion &a, const TypeSuggestion &b) {
                     return a.rank < b.rank;
                   });
  RankedRecord out{record.chosen_type, {}};
  for (const TypeSuggestion &s : sorted) out.predictions.push_back(s.type_id);
  return out;
}

std::vector<RankedRecord> ToRankedRecords(std::span<const SuggestionRecord> records) {
  std::vector<RankedRecord> out;
  for (const SuggestionRecord &r : records) out.push_back(ToRankedRecord(r));
  return out;
}

double TopKAccuracy(std::span<const RankedRecord> records, size_t k) {
  CheckRecords(records, k, "top-k accuracy");
  size_t hits = 0;
  for (const RankedRecord &r : records) {
    const size_t rank = GoldRank(r);
    if (rank != 0 && rank <= k) ++hits;
  }
  return Ratio(hits, records.size());
}

double Mrr(std::span<const RankedRecord> records, size_t cutoff) {
  CheckRecords(records, cutoff, "MRR");
  double sum = 0.0;
  for (const RankedRecord &r : records) {
    const size_t rank = GoldRank(r);
    if (rank != 0 && rank <= cutoff) sum += 1.0 / static_cast<double>(rank);
  }
  return sum / static_cast<double>(records.size());
}

double LinkCoverage(const Script &script) {
  const auto &vars = script.variables();
  if (vars.empty()) {
    throw Error(ErrorCode::kNoVariables,
                "script '" + script.id() + "' has no reference variables");
  }
  const size_t linked = static_cast<size_t>(
      std::count_if(vars.begin(), vars.end(),
                    [](const ReferenceVariable &v) { return v.kb_link.has_value(); }));
  return Ratio(linked, vars.size());
}

nlohmann::json AcceptanceStats::ToJson() const {
  return {{"offered", offered},   {"accepted", accepted},
          {"edited", edited},     {"rejected", rejected},
          {"pending", pending},   {"rate", rate},
          {"adopted_rate", adopted_rate}};
}

AcceptanceStats PostCurationAcceptance(std::span<const EventSuggestion> log) {
  if (log.empty()) {
    throw Error(ErrorCode::kEmptyLog, "no post-curation suggestions logged");
  }
  AcceptanceStats s;
  for (const EventSuggestion &e : log) Tally(s, e.decision);
  FinishRates(s);
  return s;
}

AcceptanceStats MixedInitiativeAcceptance(std::span<const OptionSet> log) {
  if (log.empty()) {
    throw Error(ErrorCode::kEmptyLog, "no mixed-initiative option sets logged");
  }
  AcceptanceStats s;
  for (const OptionSet &set : log) Tally(s, set.outcome);
  FinishRates(s);
  return s;
}

double AcceptanceRate(const CurationLog &log, SuggestionSource mode) {
  return mode == SuggestionSource::kPostCuration
             ? PostCurationAcceptance(log.suggestions).rate
             : MixedInitiativeAcceptance(log.option_sets).rate;
}

nlohmann::json ScriptReport::ToJson() const {
  nlohmann::json j{
      {"script_id", script_id},
      {"name", name},
      {"event_count", event_count},
      {"total_events", total_events},
      {"typed_records", typed_records},
      {"top1", Optional(top1)},
      {"top3", Optional(top3)},
      {"top5", Optional(top5)},
      {"mrr_at_3", Optional(mrr_at_3)},
      {"variable_count", variable_count},
      {"participation_count", participation_count},
      {"linked_variable_count", linked_variable_count},
      {"link_coverage", Optional(link_coverage)},
      {"suggestions_accepted", suggestions_accepted},
      {"suggestions_offered", suggestions_offered},
      {"option_sets", option_sets},
      {"option_sets_accepted", option_sets_accepted},
      {"option_sets_edited", option_sets_edited},
      {"has_unordered_pairs", has_unordered_pairs},
  };
  j["self_reported_time"] =
      self_reported_time ? nlohmann::json(*self_reported_time) : nlohmann::json(nullptr);
  return j;
}

ScriptReport BuildScriptReport(const Script &script, const CurationLog &log) {
  ScriptReport r;
  r.script_id = script.id();
  r.name = script.name();
  r.total_events = script.events().size();
  r.event_count = static_cast<size_t>(
      std::count_if(script.events().begin(), script.events().end(),
                    [](const Event &e) { return e.provenance == Provenance::kCurator; }));
  r.typed_records = log.type_records.size();
  if (!log.type_records.empty()) {
    const std::vector<RankedRecord> records = ToRankedRecords(log.type_records);
    r.top1 = TopKAccuracy(records, 1);
    r.top3 = TopKAccuracy(records, 3);
    r.top5 = TopKAccuracy(records, 5);
    r.mrr_at_3 = Mrr(records, 3);
  }
  r.variable_count = script.variables().size();
  for (const ReferenceVariable &v : script.variables()) {
    r.participation_count += v.participations.size();
    if (v.kb_link) ++r.linked_variable_count;
  }
  if (r.variable_count > 0) r.link_coverage = LinkCoverage(script);
  for (const EventSuggestion &s : log.suggestions) {
    ++r.suggestions_offered;
    if (s.decision == SuggestionDecision::kAccepted) ++r.suggestions_accepted;
  }
  for (const OptionSet &set : log.option_sets) {
    ++r.option_sets;
    if (set.outcome == SuggestionDecision::kAccepted) ++r.option_sets_accepted;
    if (set.outcome == SuggestionDecision::kEdited) ++r.option_sets_edited;
  }
  r.has_unordered_pairs = !script.UnorderedPairs().empty();
  r.self_reported_time = log.self_reported_time;
  return r;
}

nlohmann::json BundleMetrics(const LogBundle &bundle) {
  nlohmann::json j = nlohmann::json::object();
  j["type_records"] = bundle.type_records.size();
  if (!bundle.type_records.empty()) {
    j["top1"] = TopKAccuracy(bundle.type_records, 1);
    j["top3"] = TopKAccuracy(bundle.type_records, 3);
    j["top5"] = TopKAccuracy(bundle.type_records, 5);
    j["mrr_at_3"] = Mrr(bundle.type_records, 3);
  }
  if (!bundle.suggestions.empty()) {
    j["post_curation"] = PostCurationAcceptance(bundle.suggestions).ToJson();
  }
  if (!bundle.option_sets.empty()) {
    j["mixed_initiative"] = MixedInitiativeAcceptance(bundle.option_sets).ToJson();
  }
  return j;
}

LogBundle ParseLogLines(std::string_view text) {
  LogBundle bundle;
  size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto corrupt = [line_no](const std::string &why) {
      return Error(ErrorCode::kCorruptDocument,
                   "log line " + std::to_string(line_no) + ": " + why,
                   {{"line", line_no}});
    };
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw corrupt("not a JSON object");
    try {
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "type_choice") {
        bundle.type_records.push_back(
            {j.at("gold").get<std::string>(),
             j.at("predictions").get<std::vector<std::string>>()});
      } else if (kind == "suggestion") {
        EventSuggestion s;
        s.id = j.at("id").get<uint32_t>();
        s.batch = j.value("batch", 0u);
        s.text = j.at("text").get<std::string>();
        auto d = ParseSuggestionDecision(j.at("decision").get<std::string>());
        if (!d) throw corrupt("unknown decision");
        s.decision = *d;
        if (j.contains("edited_text")) {
          s.edited_text = j.at("edited_text").get<std::string>();
        }
        bundle.suggestions.push_back(std::move(s));
      } else if (kind == "option_set") {
        OptionSet set;
        set.id = j.at("id").get<uint32_t>();
        set.step_number = j.value("step_number", 0);
        set.options = j.at("options").get<std::vector<std::string>>();
        auto d = ParseSuggestionDecision(j.at("outcome").get<std::string>());
        if (!d) throw corrupt("unknown outcome");
        set.outcome = *d;
        if (j.contains("chosen")) set.chosen = j.at("chosen").get<size_t>();
        if (j.contains("final_text")) {
          set.final_text = j.at("final_text").get<std::string>();
        }
        bundle.option_sets.push_back(std::move(set));
      } else {
        throw corrupt("unknown kind '" + kind + "'");
      }
    } catch (const nlohmann::json::exception &e) {
      throw corrupt(e.what());
    }
  }
  return bundle;
}

LogBundle ReadLogFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read log " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseLogLines(buffer.str());
}

std::string WriteLogLines(const std::string &script_id, const CurationLog &log) {
  std::string out;
  auto emit = [&out](const nlohmann::json &j) { out += j.dump() + "\n"; };
  for (const SuggestionRecord &r : log.type_records) {
    emit({{"kind", "type_choice"},
          {"script", script_id},
          {"event", r.event.value},
          {"event_text", r.event_text},
          {"gold", r.chosen_type},
          {"predictions", ToRankedRecord(r).predictions}});
  }
  for (const EventSuggestion &s : log.suggestions) {
    nlohmann::json j{{"kind", "suggestion"}, {"script", script_id},
                     {"id", s.id},           {"batch", s.batch},
                     {"text", s.text},
                     {"decision", SuggestionDecisionName(s.decision)}};
    if (s.edited_text) j["edited_text"] = *s.edited_text;
    emit(j);
  }
  for (const OptionSet &set : log.option_sets) {
    nlohmann::json j{{"kind", "option_set"},
                     {"script", script_id},
                     {"id", set.id},
                     {"step_number", set.step_number},
                     {"options", set.options},
                     {"outcome", SuggestionDecisionName(set.outcome)}};
    if (set.chosen) j["chosen"] = *set.chosen;
    if (set.final_text) j["final_text"] = *set.final_text;
    emit(j);
  }
  return out;
}

long DisplayPercent(double ratio) { return std::lround(ratio * 100.0); }

std::string RenderReportTable(std::span<const ScriptReport> reports) {
  auto pct = [](const std::optional<double> &v) {
    return v ? std::to_string(DisplayPercent(*v)) : std::string("-");
  };
  std::vector<std::pair<std::string, std::vector<std::string>>> rows = {
      {"1  # Events in initial script", {}},
      {"2  Accuracy at top-1, 3, 5 for event types", {}},
      {"3  # Entities, occurrences, unique links", {}},
      {"3b Link coverage (%)", {}},
      {"4  # Suggestions accepted / offered", {}},
      {"5  Non-linear path", {}},
      {"6  Self-reported time", {}},
  };
  std::vector<std::string> header;
  for (const ScriptReport &r : reports) {
    header.push_back(Upper(r.script_id));
    rows[0].second.push_back(std::to_string(r.event_count));
    rows[1].second.push_back(r.top1 ? pct(r.top1) + "-" + pct(r.top3) + "-" + pct(r.top5)
                                    : "-");
    rows[2].second.push_back(std::to_string(r.variable_count) + "-" +
                             std::to_string(r.participation_count) + "-" +
                             std::to_string(r.linked_variable_count));
    rows[3].second.push_back(pct(r.link_coverage));
    rows[4].second.push_back(std::to_string(r.suggestions_accepted) + "/" +
                             std::to_string(r.suggestions_offered));
    rows[5].second.push_back(r.has_unordered_pairs ? "Y" : "N");
    rows[6].second.push_back(r.self_reported_time.value_or("-"));
  }
  size_t label_width = 0;
  for (const auto &row : rows) label_width = std::max(label_width, row.first.size());
  std::vector<size_t> widths;
  for (size_t c = 0; c < reports.size(); ++c) {
    size_t w = header[c].size();
    for (const auto &row : rows) w = std::max(w, row.second[c].size());
    widths.push_back(w);
  }
  std::string out = PadRight("", label_width);
  for (size_t c = 0; c < header.size(); ++c) out += "  " + PadRight(header[c], widths[c]);
  while (!out.empty() && out.back() == ' ') out.pop_back();
  out += "\n";
  for (const auto &[label, cells] : rows) {
    std::string line = PadRight(label, label_width);
    for (size_t c = 0; c < cells.size(); ++c) line += "  " + PadRight(cells[c], widths[c]);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

}  // namespace scriptforge
