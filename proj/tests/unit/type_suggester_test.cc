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

#include <gtest/gtest.h>

#include "scriptforge/error.h"
#include "support/support.h"

namespace scriptforge {
namespace {

void ExpectMatchesGolden(const std::vector<TypeSuggestion> &got,
                         const nlohmann::json &want, const std::string &text) {
  ASSERT_EQ(got.size(), want.size()) << text;
  for (size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].type_id, want[i]["type_id"]) << text << " #" << i;
    EXPECT_EQ(got[i].rank, want[i]["rank"]) << text;
    EXPECT_NEAR(got[i].score, want[i]["score"].get<double>(), 1e-12) << text;
  }
}

TEST(TypeSuggester, FixtureTextsMatchOracleTrace) {
  const nlohmann::json golden = sftest::Golden("type_suggestions.json");
  ASSERT_EQ(golden.size(), 60u);  // 58 fixture texts + 2 spacing variants
  StubEmbeddingProvider stub;
  TypeSuggester suggester;
  for (const auto &item : golden) {
    const std::string text = item["text"];
    ExpectMatchesGolden(suggester.Suggest(text, sftest::ProjectOntology(), stub, 5),
                        item["top5"], text);
  }
}

TEST(TypeSuggester, TopThreeIsPrefixOfTopFive) {
  StubEmbeddingProvider stub;
  TypeSuggester suggester;
  for (const auto &item : sftest::Golden("type_suggestions.json")) {
    const std::string text = item["text"];
    auto top5 = suggester.Suggest(text, sftest::ProjectOntology(), stub, 5);
    auto top3 = suggester.Suggest(text, sftest::ProjectOntology(), stub);
    ASSERT_EQ(top3.size(), 3u);
    EXPECT_TRUE(std::equal(top3.begin(), top3.end(), top5.begin())) << text;
  }
}

TEST(TypeSuggester, StableAcrossCacheStates) {
  StubEmbeddingProvider stub;
  TypeSuggester cold, warm;
  const Ontology &o = sftest::ProjectOntology();
  EXPECT_EQ(warm.cached_entries(), 0u);
  auto first = warm.Suggest("Pay the bill", o, stub, 5);
  EXPECT_EQ(warm.cached_entries(), 1u);
  EXPECT_EQ(warm.Suggest("Pay the bill", o, stub, 5), first);
  warm.ClearCache();
  EXPECT_EQ(warm.cached_entries(), 0u);
  EXPECT_EQ(warm.Suggest("Pay the bill", o, stub, 5), first);
  EXPECT_EQ(cold.Suggest("Pay the bill", o, stub, 5), first);
  // A different provider identity gets its own cache slot.
  StubEmbeddingProvider small(64);
  warm.Suggest("Pay the bill", o, small, 5);
  EXPECT_EQ(warm.cached_entries(), 2u);
}

TEST(TypeSuggester, IdentityInputRanksOwnTypeFirst) {
  StubEmbeddingProvider stub;
  TypeSuggester suggester;
  const Ontology &o = sftest::ProjectOntology();
  for (const OntologyEventType &t : o.event_types()) {
    auto top = suggester.Suggest(CandidateText(t), o, stub, 1);
    ASSERT_EQ(top.size(), 1u);
    EXPECT_EQ(top[0].type_id, t.id);
    EXPECT_DOUBLE_EQ(top[0].score, 1.0);
  }
  for (const auto &item : sftest::Golden("type_identity.json")) {
    EXPECT_EQ(item["top"]["type_id"], item["type_id"]);
  }
}

TEST(TypeSuggester, LargeKReturnsEverythingSorted) {
  StubEmbeddingProvider stub;
  TypeSuggester suggester;
  auto all = suggester.Suggest("Eat the meal", sftest::ProjectOntology(), stub, 1000);
  ASSERT_EQ(all.size(), 41u);
  for (size_t i = 1; i < all.size(); ++i) {
    EXPECT_TRUE(all[i - 1].score > all[i].score ||
                (all[i - 1].score == all[i].score && all[i - 1].type_id < all[i].type_id));
    EXPECT_EQ(all[i].rank, static_cast<int>(i + 1));
  }
}

TEST(TypeSuggester, RejectsBadArguments) {
  StubEmbeddingProvider stub;
  TypeSuggester suggester;
  EXPECT_THROW(suggester.Suggest("  ", sftest::ProjectOntology(), stub), Error);
  EXPECT_THROW(suggester.Suggest("x y", sftest::ProjectOntology(), stub, 0), Error);
}

TEST(RecordChoice, ReciprocalRank) {
  const Ontology &o = sftest::ProjectOntology();
  Event e{EventId{1}, "Pay the bill", std::nullopt, Provenance::kCurator, 0};
  std::vector<TypeSuggestion> s{{"Transaction.TransferMoney", 0.5, 1},
                                {"Transaction.Donation", 0.4, 2},
                                {"Contact.Meet", 0.3, 3}};
  EXPECT_DOUBLE_EQ(RecordChoice(o, e, s, "Transaction.TransferMoney").ReciprocalRank(), 1.0);
  EXPECT_DOUBLE_EQ(RecordChoice(o, e, s, "Transaction.Donation").ReciprocalRank(), 0.5);
  EXPECT_DOUBLE_EQ(RecordChoice(o, e, s, "Life.Die").ReciprocalRank(), 0.0);
  EXPECT_THROW(RecordChoice(o, e, s, "No.Such"), Error);
}

}  // namespace
}  // namespace scriptforge
