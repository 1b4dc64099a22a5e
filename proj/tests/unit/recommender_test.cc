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

#include <gtest/gtest.h>

#include "scriptforge/error.h"
#include "scriptforge/providers.h"
#include "support/support.h"

namespace scriptforge {
namespace {

constexpr const char *kName = "buying a car";
constexpr const char *kDescription = "The process of purchasing a car from a dealership.";
const std::vector<std::string> kSteps{"Identify your needs", "Decide on your budget",
                                      "Identify car models you can afford"};

Script CarScript(size_t steps) {
  Script s("car", kName, kDescription);
  for (size_t i = 0; i < steps; ++i) s.AddEvent(kSteps[i], Provenance::kCurator, 0);
  return s;
}

ScriptedGenerationProvider Transcript() {
  return ScriptedGenerationProvider::FromFile(
      sftest::FixturePath("transcripts/buying_a_car.json"));
}

class FixedProvider : public GenerationProvider {
 public:
  explicit FixedProvider(std::vector<std::string> texts) : texts_(std::move(texts)) {}
  std::vector<std::string> Generate(const GenerationRequest &request) override {
    last_prompt = request.prompt;
    std::vector<std::string> out = texts_;
    if (out.size() > static_cast<size_t>(request.samples)) out.resize(request.samples);
    return out;
  }
  std::string Identity() const override { return "fixed"; }
  std::string last_prompt;

 private:
  std::vector<std::string> texts_;
};

TEST(BuildPrompt, NumberedFormulation) {
  Prompt p = BuildPrompt(CarScript(3));
  EXPECT_EQ(p.rendered,
            "buying a car\nThe process of purchasing a car from a dealership.\n"
            "Describe steps of buying a car.\n"
            "1. Identify your needs 2. Decide on your budget "
            "3. Identify car models you can afford 4.");
  EXPECT_EQ(p.next_number(), 4);
  EXPECT_TRUE(BuildPrompt(CarScript(0)).rendered.ends_with("\n1."));
  EXPECT_TRUE(BuildPrompt(CarScript(1)).rendered.ends_with("1. Identify your needs 2."));
}

TEST(ParseGeneration, SpecExamples) {
  ParsedGeneration p =
      ParseGeneration("Negotiate the price 5. Sign the contract 6. Drive home", 4);
  EXPECT_EQ(p.steps, (std::vector<std::string>{"Negotiate the price", "Sign the contract",
                                               "Drive home"}));
  EXPECT_EQ(p.parse_loss, 0u);
  EXPECT_TRUE(ParseGeneration("", 1).steps.empty());
  ParsedGeneration skipped = ParseGeneration("7. skipped numbering", 5);
  EXPECT_TRUE(skipped.steps.empty());
  EXPECT_EQ(skipped.parse_loss, 1u);
}

TEST(ParseGeneration, MatchesOracleCases) {
  for (const auto &c : sftest::Golden("filter_buying_a_car.json")["parse"]) {
    ParsedGeneration p = ParseGeneration(c["raw"].get<std::string>(), c["expected_start"]);
    EXPECT_EQ(p.steps, c["steps"].get<std::vector<std::string>>()) << c["raw"];
    EXPECT_EQ(p.parse_loss, c["parse_loss"].get<size_t>()) << c["raw"];
  }
}

TEST(FilterCandidates, SpecExamples) {
  const nlohmann::json golden = sftest::Golden("filter_buying_a_car.json")["spec_example"];
  FilterResult r = FilterCandidates(golden["candidates"], {}, {});
  EXPECT_EQ(r.kept, golden["kept"].get<std::vector<std::string>>());
  EXPECT_EQ(r.report.ToJson(), golden["report"]);
  EXPECT_EQ(r.report.dispositions[0].dropped, DropReason::kTooShort);

  FilterResult bang = FilterCandidates({"Sign the papers!!!###"}, {}, {});
  EXPECT_EQ(bang.report.dispositions[0].dropped, DropReason::kNonalphaRun);
  // Non-ASCII letters are letters, not a nonalpha run.
  EXPECT_TRUE(FilterCandidates({"Visit the café über"}, {}, {}).report.dispositions[0].kept());
}

TEST(FilterCandidates, CapsAtTwelve) {
  const std::vector<std::string> cands{
      "Check the vehicle history",  "Negotiate the price",      "Sign the contract",
      "Take a test drive",          "Get car insurance",        "Apply for financing",
      "Read owner reviews",         "Compare dealer offers",    "Inspect the tires",
      "Register the vehicle",       "Trade in your old one",    "Drive home slowly",
      "Wash it on Sunday",          "Show friends proudly",     "Plan a road trip"};
  FilterResult r = FilterCandidates(cands, {}, {});
  ASSERT_EQ(cands.size(), 15u);
  EXPECT_EQ(r.kept.size(), 12u);
  EXPECT_EQ(r.report.count(DropReason::kOverflow), 3u);
  EXPECT_EQ(std::vector<std::string>(cands.begin(), cands.begin() + 12), r.kept);
}

TEST(FilterCandidates, ReferencesAndThreshold) {
  FilterResult r = FilterCandidates({"decide ON your budget", "Pick a car", "pick a car"},
                                    {"Decide on your budget"}, {"Pick a car!"});
  EXPECT_EQ(r.report.dispositions[0].dropped, DropReason::kExactDuplicate);
  EXPECT_EQ(*r.report.dispositions[0].against, "Decide on your budget");
  EXPECT_EQ(r.report.dispositions[1].dropped, DropReason::kNearDuplicate);
  EXPECT_EQ(*r.report.dispositions[1].against, "Pick a car!");
  EXPECT_THROW(FilterCandidates({}, {}, {}, {0.0, 12}), Error);
  EXPECT_THROW(FilterCandidates({}, {}, {}, {1.5, 12}), Error);
  // Threshold 1.0 only drops identical normalized text.
  FilterResult strict = FilterCandidates({"buy the car", "buy the cars"}, {}, {}, {1.0, 12});
  EXPECT_EQ(strict.kept.size(), 2u);
}

TEST(RecommendMissing, TranscriptMatchesGolden) {
  const nlohmann::json golden = sftest::Golden("filter_buying_a_car.json")["post_curation"];
  ScriptedGenerationProvider provider = Transcript();
  Recommendation rec = RecommendMissing(CarScript(3), {}, provider);
  EXPECT_EQ(rec.prompt.rendered, golden["prompt"]);
  EXPECT_EQ(rec.raw, golden["raw"].get<std::vector<std::string>>());
  EXPECT_EQ(rec.kept, golden["kept"].get<std::vector<std::string>>());
  EXPECT_EQ(rec.report.ToJson().dump(2), golden["report"].dump(2));
  for (DropReason r : {DropReason::kEmpty, DropReason::kTooShort, DropReason::kNonalphaRun,
                       DropReason::kExactDuplicate, DropReason::kNearDuplicate,
                       DropReason::kOverflow}) {
    EXPECT_GE(rec.report.count(r), 1u) << DropReasonName(r);
  }
  EXPECT_EQ(rec.kept.size(), 12u);
}

TEST(RecommendMissing, EmptyAndAllDuplicates) {
  FixedProvider none({});
  Recommendation empty = RecommendMissing(CarScript(3), {}, none);
  EXPECT_TRUE(empty.kept.empty());
  EXPECT_TRUE(empty.report.dispositions.empty());
  FixedProvider dupes({" Decide on your budget 5. Identify your needs",
                       " identify car models you can afford"});
  Recommendation d = RecommendMissing(CarScript(3), {}, dupes);
  EXPECT_TRUE(d.kept.empty());
  EXPECT_EQ(d.report.count(DropReason::kExactDuplicate) +
                d.report.count(DropReason::kNearDuplicate),
            3u);
}

TEST(RecommendMissing, PriorSuggestionsAreReferences) {
  FixedProvider p({" Take a test drive"});
  Recommendation r = RecommendMissing(CarScript(3), {"take a test drive"}, p);
  EXPECT_TRUE(r.kept.empty());
  EXPECT_EQ(r.report.dispositions[0].dropped, DropReason::kExactDuplicate);
}

TEST(MixedInitiative, TranscriptMatchesGolden) {
  ScriptedGenerationProvider provider = Transcript();
  for (const auto &item : sftest::Golden("filter_buying_a_car.json")["mixed_initiative"]) {
    const size_t n = item["steps"].size();
    Recommendation rec = MixedInitiativeNext(CarScript(n), provider);
    EXPECT_EQ(rec.prompt.rendered, item["prompt"]);
    EXPECT_EQ(rec.kept, item["kept"].get<std::vector<std::string>>());
    EXPECT_EQ(rec.report.ToJson(), item["report"]);
    EXPECT_LE(rec.kept.size(), 5u);
  }
  EXPECT_THROW(MixedInitiativeNext(CarScript(0), provider), Error);
}

TEST(MixedInitiative, OnlyFirstStepOfEachSampleCounts) {
  FixedProvider p({" Set a budget 3. Something else", " Look at cars online 3. More"});
  Recommendation r = MixedInitiativeNext(CarScript(1), p);
  EXPECT_EQ(r.kept, (std::vector<std::string>{"Set a budget", "Look at cars online"}));
}

TEST(Transcript, RejectsMalformedDocuments) {
  EXPECT_THROW(ScriptedGenerationProvider::FromJson({{"schema", "other"}}), Error);
  EXPECT_THROW(ScriptedGenerationProvider::FromJson(
                   {{"schema", "script-forge/transcript@1"},
                    {"entries", {{{"match", {{"regex", "x"}}}, {"continuations", {"a"}}}}}}),
               Error);
  ScriptedGenerationProvider any = ScriptedGenerationProvider::FromJson(
      {{"schema", "script-forge/transcript@1"},
       {"entries", {{{"match", {{"any", nullptr}}}, {"continuations", {"a", "b", "c"}}}}}});
  EXPECT_EQ(any.Generate({"whatever", 2, 10, std::nullopt}).size(), 2u);
  EXPECT_TRUE(any.Generate({"whatever", 0, 10, std::nullopt}).empty());
}

}  // namespace
}  // namespace scriptforge
