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


#include "scriptforge/embedding.h"

#include <gtest/gtest.h>

#include <cmath>

#include "scriptforge/error.h"
#include "support/support.h"

namespace scriptforge {
namespace {

TEST(Fnv1a32, KnownVectors) {
  EXPECT_EQ(Fnv1a32(""), 2166136261u);
  EXPECT_EQ(Fnv1a32("a"), 0xe40c292cu);
  EXPECT_EQ(Fnv1a32("foobar"), 0xbf9cf968u);
}

TEST(StubEmbedding, UnitNormAndDeterministic) {
  StubEmbeddingProvider stub;
  EXPECT_EQ(stub.Identity(), "stub-trigram-256");
  EmbeddingVector v = stub.EmbedText("Go to a car dealership");
  EXPECT_EQ(v.dim(), 256u);
  EXPECT_NEAR(v.Norm(), 1.0, 1e-12);
  EXPECT_EQ(v, stub.EmbedText("go  to a CAR dealership"));
  EmbeddingVector empty = stub.EmbedText("");
  EXPECT_NEAR(empty.Norm(), 1.0, 1e-12);
}

TEST(StubEmbedding, BatchMatchesSingle) {
  StubEmbeddingProvider stub(64);
  std::vector<std::string> texts{"a", "buy the car", ""};
  auto batch = stub.Embed(texts);
  ASSERT_EQ(batch.size(), 3u);
  for (size_t i = 0; i < texts.size(); ++i) EXPECT_EQ(batch[i], stub.EmbedOne(texts[i]));
  EXPECT_THROW(StubEmbeddingProvider(0), Error);
}

TEST(Cosine, MatchesOracleGolden) {
  StubEmbeddingProvider stub;
  for (const auto &c : sftest::Golden("cosine.json")) {
    const double got = Cosine(stub.EmbedText(c["a"].get<std::string>()),
                              stub.EmbedText(c["b"].get<std::string>()));
    EXPECT_NEAR(got, c["cosine"].get<double>(), 1e-12) << c["a"] << " / " << c["b"];
  }
}

TEST(Cosine, ClampedAndSymmetric) {
  EmbeddingVector u({1.0, 2.0, 3.0});
  EmbeddingVector v({-1.0, 0.5, 2.0});
  EXPECT_DOUBLE_EQ(Cosine(u, v), Cosine(v, u));
  EXPECT_LE(Cosine(u, u), 1.0);
  EXPECT_GE(Cosine(u, EmbeddingVector({-1.0, -2.0, -3.0})), -1.0);
}

TEST(Cosine, Errors) {
  try {
    Cosine(EmbeddingVector({1.0}), EmbeddingVector({1.0, 0.0}));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  try {
    Cosine(EmbeddingVector({0.0, 0.0}), EmbeddingVector({1.0, 0.0}));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVector);
  }
  EXPECT_THROW(EmbeddingVector(std::vector<double>{}), Error);
  EXPECT_THROW(EmbeddingVector({NAN}), Error);
}

}  // namespace
}  // namespace scriptforge
