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

#include <gtest/gtest.h>

#include "support/expect.h"
#include "support/support.h"

namespace scriptforge {
namespace {

class CurationLogTest : public ::testing::Test {
 protected:
  void SetUp() override {
    script = Script("s", "buying a car", "desc");
    script.AddEvent("Identify your needs", Provenance::kCurator, 10);
  }
  Script script;
  CurationLog log;
};

TEST_F(CurationLogTest, SuggestionLifecycle) {
  const uint64_t v0 = script.version();
  auto ids = RecordSuggestionBatch(script, log, {"Go to a dealership", "Take a test drive",
                                                 "Negotiate the price"});
  EXPECT_EQ(ids, (std::vector<uint32_t>{1, 2, 3}));
  EXPECT_EQ(script.version(), v0 + 1);
  for (const auto &s : log.suggestions) {
    EXPECT_EQ(s.decision, SuggestionDecision::kPending);
    EXPECT_EQ(s.batch, 1u);
  }

  EventId a = AcceptSuggestion(script, log, 1, 100);
  EXPECT_EQ(script.FindEvent(a)->provenance, Provenance::kMachineAccepted);
  EXPECT_EQ(script.FindEvent(a)->text, "Go to a dealership");
  EXPECT_EQ(script.FindEvent(a)->created_at, 100);
  EXPECT_EQ(log.suggestions[0].event, a);

  EventId e = EditSuggestion(script, log, 2, "  Take a  test drive with a mechanic ", 200);
  EXPECT_EQ(script.FindEvent(e)->provenance, Provenance::kMachineEdited);
  EXPECT_EQ(*log.suggestions[1].edited_text, "Take a test drive with a mechanic");

  const uint64_t before_reject = script.version();
  const size_t events = script.events().size();
  RejectSuggestion(script, log, 3);
  EXPECT_EQ(script.version(), before_reject + 1);
  EXPECT_EQ(script.events().size(), events);
  EXPECT_EQ(log.suggestions[2].decision, SuggestionDecision::kRejected);

  EXPECT_CODE(AcceptSuggestion(script, log, 1, 0), kInvalidArgument);
  EXPECT_CODE(RejectSuggestion(script, log, 2), kInvalidArgument);
  EXPECT_CODE(AcceptSuggestion(script, log, 99, 0), kNotFound);
  EXPECT_EQ(log.PriorSuggestionTexts(),
            (std::vector<std::string>{"Go to a dealership", "Take a test drive",
                                      "Negotiate the price"}));
  // Second batch continues the numbering.
  auto more = RecordSuggestionBatch(script, log, {"Drive home"});
  EXPECT_EQ(more, std::vector<uint32_t>{4});
  EXPECT_EQ(log.suggestions.back().batch, 2u);
}

TEST_F(CurationLogTest, EditRules) {
  RecordSuggestionBatch(script, log, {"Go to a dealership"});
  const Script snapshot = script;
  EXPECT_CODE(EditSuggestion(script, log, 1, "   ", 0), kInvalidArgument);
  EXPECT_CODE(EditSuggestion(script, log, 1, "Go to a  dealership", 0), kInvalidArgument);
  EXPECT_EQ(script, snapshot);
  EXPECT_EQ(log.suggestions[0].decision, SuggestionDecision::kPending);
}

TEST_F(CurationLogTest, OptionSets) {
  uint32_t s1 = RecordOptionSet(script, log, 2, {"Set a budget", "Research cars online"});
  uint32_t s2 = RecordOptionSet(script, log, 3, {"Check credit", "Visit a dealer"});
  uint32_t s3 = RecordOptionSet(script, log, 4, {"Take a test drive"});
  uint32_t s4 = RecordOptionSet(script, log, 5, {"Sign the contract"});
  EXPECT_EQ(s1, 1u);
  EXPECT_EQ(s4, 4u);

  EventId a = AcceptOption(script, log, s1, 1, 5);
  EXPECT_EQ(script.FindEvent(a)->text, "Research cars online");
  EXPECT_EQ(log.option_sets[0].outcome, SuggestionDecision::kAccepted);
  EXPECT_EQ(log.option_sets[0].chosen, 1u);

  EventId e = EditOption(script, log, s2, 0, "Check your credit score", 6);
  EXPECT_EQ(script.FindEvent(e)->provenance, Provenance::kMachineEdited);
  EXPECT_EQ(*log.option_sets[1].final_text, "Check your credit score");

  EventId own = TypeOwnStep(script, log, s3, "  Haggle  ", 7);
  EXPECT_EQ(script.FindEvent(own)->provenance, Provenance::kCurator);
  EXPECT_EQ(script.FindEvent(own)->text, "Haggle");
  EXPECT_EQ(log.option_sets[2].outcome, SuggestionDecision::kRejected);
  EXPECT_FALSE(log.option_sets[2].chosen.has_value());
  EXPECT_EQ(*log.option_sets[2].final_text, "Haggle");

  EXPECT_CODE(AcceptOption(script, log, s4, 1, 0), kInvalidArgument);
  EXPECT_CODE(AcceptOption(script, log, s1, 0, 0), kInvalidArgument);
  EXPECT_CODE(AcceptOption(script, log, 77, 0, 0), kNotFound);
  EXPECT_CODE(EditOption(script, log, s4, 0, "Sign the contract", 0), kInvalidArgument);
  EXPECT_EQ(log.option_sets[3].outcome, SuggestionDecision::kPending);
}

TEST_F(CurationLogTest, CandidateSetsAndDecisions) {
  const Ontology &ontology = sftest::ProjectOntology();
  script.AssignEventType(ontology, EventId{1}, "Cognitive.IdentifyCategorize");
  VariableId v = script.AddVariable(ontology, "buyer", "PER", EventId{1}, "Identifier");
  EXPECT_CODE(RecordLinkDecision(script, log, v, 1, std::nullopt), kStaleCandidate);
  EXPECT_CODE(PublishCandidateSet(script, log, VariableId{9}, {}), kUnknownVariable);

  const KBIndex &kb = sftest::FixtureKb();
  std::vector<LinkCandidate> cands;
  for (const char *q : {"Q852835", "Q1308177"}) {
    LinkCandidate c;
    c.entry = *kb.Find(q);
    c.rank = static_cast<int>(cands.size()) + 1;
    cands.push_back(c);
  }
  const CandidateSet &first = PublishCandidateSet(script, log, v, cands);
  EXPECT_EQ(first.set_version, 1u);
  EXPECT_EQ(first.label, "buyer");
  const CandidateSet &second = PublishCandidateSet(script, log, v, cands);
  EXPECT_EQ(second.set_version, 2u);
  ASSERT_EQ(log.candidate_sets.size(), 1u);

  EXPECT_CODE(RecordLinkDecision(script, log, v, 1, "Q1308177"), kStaleCandidate);
  const LinkDecision &d = RecordLinkDecision(script, log, v, 2, "Q1308177");
  EXPECT_EQ(d.offered, (std::vector<std::string>{"Q852835", "Q1308177"}));
  EXPECT_EQ(*script.FindVariable(v)->kb_link, "Q1308177");
  RecordLinkDecision(script, log, v, 2, std::nullopt);
  EXPECT_FALSE(script.FindVariable(v)->kb_link.has_value());
  EXPECT_EQ(log.link_decisions.size(), 2u);
}

TEST_F(CurationLogTest, TypeChoiceReplacesEarlierRecord) {
  const Ontology &ontology = sftest::ProjectOntology();
  std::vector<TypeSuggestion> top{{"Cognitive.Research", 0.5, 1},
                                  {"Cognitive.IdentifyCategorize", 0.4, 2},
                                  {"Movement.Transportation", 0.3, 3}};
  RecordTypeChoice(script, log, ontology, EventId{1}, top, "Cognitive.IdentifyCategorize");
  ASSERT_EQ(log.type_records.size(), 1u);
  EXPECT_DOUBLE_EQ(log.type_records[0].ReciprocalRank(), 0.5);
  EXPECT_EQ(*script.FindEvent(EventId{1})->event_type, "Cognitive.IdentifyCategorize");
  RecordTypeChoice(script, log, ontology, EventId{1}, top, "Life.Die");
  ASSERT_EQ(log.type_records.size(), 1u);
  EXPECT_DOUBLE_EQ(log.type_records[0].ReciprocalRank(), 0.0);
  EXPECT_CODE(RecordTypeChoice(script, log, ontology, EventId{1}, top, "No.Such"),
              kUnknownType);
  EXPECT_CODE(RecordTypeChoice(script, log, ontology, EventId{5}, top, "Life.Die"),
              kUnknownEvent);
}

TEST(CurationLogNames, RoundTrip) {
  for (auto d : {SuggestionDecision::kPending, SuggestionDecision::kAccepted,
                 SuggestionDecision::kEdited, SuggestionDecision::kRejected}) {
    EXPECT_EQ(ParseSuggestionDecision(SuggestionDecisionName(d)), d);
  }
  for (auto s : {SuggestionSource::kPostCuration, SuggestionSource::kMixedInitiative}) {
    EXPECT_EQ(ParseSuggestionSource(SuggestionSourceName(s)), s);
  }
  EXPECT_FALSE(ParseSuggestionDecision("maybe").has_value());
}

}  // namespace
}  // namespace scriptforge
