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


#include "scriptforge/document.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "support/expect.h"
#include "support/support.h"

namespace scriptforge {
namespace {

std::vector<std::string> AllDocuments() {
  std::vector<std::string> paths = sftest::FixtureScriptPaths();
  for (const char *f : {"examples/buying_a_car.json", "examples/buying_a_car_fig2.json",
                        "examples/buying_a_car_cycle.json"}) {
    paths.push_back(sftest::FixturePath(f));
  }
  return paths;
}

TEST(Document, RoundTripIsExact) {
  for (const std::string &path : AllDocuments()) {
    const std::string bytes = sftest::ReadFile(path);
    ScriptDocument doc = ParseDocument(bytes);
    EXPECT_EQ(SerializeDocument(doc), bytes) << path;
    EXPECT_EQ(ParseDocument(SerializeDocument(doc)), doc) << path;
    EXPECT_EQ(DocumentToJson(doc), nlohmann::json::parse(bytes)) << path;
  }
}

TEST(Document, SaveThenLoad) {
  sftest::TempDir dir;
  for (const std::string &path : sftest::FixtureScriptPaths()) {
    ScriptDocument doc = LoadDocument(path);
    const std::string out = (dir.path() / "copy.json").string();
    SaveDocument(doc, sftest::ProjectOntology(), out);
    EXPECT_EQ(LoadDocument(out), doc);
    EXPECT_FALSE(std::filesystem::exists(out + ".tmp"));
  }
}

TEST(Document, UnknownTopLevelKeysSurvive) {
  nlohmann::json j = sftest::ReadJson(sftest::FixturePath("examples/buying_a_car.json"));
  j["annotator_notes"] = {{"shift", 2}, {"done", true}};
  ScriptDocument doc = DocumentFromJson(j);
  EXPECT_EQ(doc.extra["annotator_notes"]["shift"], 2);
  EXPECT_EQ(DocumentToJson(doc), j);
}

TEST(Document, VersionAndCorruption) {
  nlohmann::json j = sftest::ReadJson(sftest::FixturePath("examples/buying_a_car.json"));
  j["schema_version"] = kSchemaVersion + 1;
  EXPECT_CODE(DocumentFromJson(j), kSchemaVersionMismatch);
  j["schema_version"] = 0;
  EXPECT_CODE(DocumentFromJson(j), kCorruptDocument);
  j["schema_version"] = "1";
  EXPECT_CODE(DocumentFromJson(j), kCorruptDocument);

  j = sftest::ReadJson(sftest::FixturePath("examples/buying_a_car.json"));
  j["script"]["events"][0]["text"] = 5;
  try {
    DocumentFromJson(j);
    ADD_FAILURE() << "accepted a numeric event text";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptDocument);
    EXPECT_NE(std::string(e.details()["path"]).find("$.script.events[0]"),
              std::string::npos)
        << e.details();
  }
  j = sftest::ReadJson(sftest::FixturePath("examples/buying_a_car.json"));
  j.erase("log");
  EXPECT_CODE(DocumentFromJson(j), kCorruptDocument);
  EXPECT_CODE(ParseDocument("{\"schema_version\": 1,"), kCorruptDocument);
  EXPECT_CODE(ParseDocument("[]"), kCorruptDocument);
  EXPECT_CODE(LoadDocument("/nonexistent/dir/x.json"), kIoError);
}

TEST(Document, SaveRefusesInvalidScripts) {
  sftest::TempDir dir;
  ScriptDocument cycle =
      LoadDocument(sftest::FixturePath("examples/buying_a_car_cycle.json"));
  const std::string out = (dir.path() / "cycle.json").string();
  EXPECT_CODE(SaveDocument(cycle, sftest::ProjectOntology(), out), kValidationFailed);
  EXPECT_FALSE(std::filesystem::exists(out));

  ScriptData data = LoadDocument(sftest::FixturePath("examples/buying_a_car.json"))
                        .script.data();
  data.events[0].event_type = "Not.AType";
  ScriptDocument bad;
  bad.script = Script(data);
  try {
    SaveDocument(bad, sftest::ProjectOntology(), out);
    ADD_FAILURE() << "saved an unknown event type";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationFailed);
    EXPECT_EQ(e.details()["violations"][0]["code"], "UnknownType");
  }
}

TEST(Document, JsonHelpersCarryEveryField) {
  EventSuggestion s;
  s.id = 3;
  s.batch = 1;
  s.text = "Drive home";
  s.decision = SuggestionDecision::kEdited;
  s.edited_text = "Drive home carefully";
  s.event = EventId{7};
  nlohmann::json j = SuggestionToJson(s);
  EXPECT_EQ(j["decision"], "edited");
  EXPECT_EQ(j["edited_text"], "Drive home carefully");
  EXPECT_EQ(j["event"], 7);
  auto ts = TypeSuggestionsToJson({{"Life.Die", 0.5, 1}});
  EXPECT_EQ(ts[0]["type_id"], "Life.Die");
  EXPECT_EQ(ts[0]["rank"], 1);
}

}  // namespace
}  // namespace scriptforge
