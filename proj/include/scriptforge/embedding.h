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

#ifndef SCRIPTFORGE_EMBEDDING_H_
#define SCRIPTFORGE_EMBEDDING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scriptforge {

// Fixed-length real vector. Construction rejects empty or non-finite input.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<double> values);

  size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double Norm() const;

  bool operator==(const EmbeddingVector &) const = default;

 private:
  std::vector<double> values_;
};

// Cosine similarity clamped to [-1, 1]. Throws DimensionMismatch or
// ZeroVector.
double Cosine(const EmbeddingVector &u, const EmbeddingVector &v);

// Embeds a batch of texts. Implementations return one vector per input, all
// with the same dimension, and must be deterministic within a session.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual std::vector<EmbeddingVector> Embed(
      std::span<const std::string> texts) = 0;

  // Stable name used as part of embedding cache keys.
  virtual std::string Identity() const = 0;

  EmbeddingVector EmbedOne(const std::string &text);
};

struct GenerationRequest {
  std::string prompt;
  int samples = 1;
  int max_length = 64;
  std::optional<uint64_t> seed;
};

// Produces up to `samples` raw continuations of a prompt. Transport failures
// are raised as ProviderUnavailable, never turned into empty results.
class GenerationProvider {
 public:
  virtual ~GenerationProvider() = default;

  virtual std::vector<std::string> Generate(const GenerationRequest &request) = 0;

  virtual std::string Identity() const = 0;
};

// Deterministic stand-in for a sentence-embedding model: hashed bag of
// character trigrams.
//
//   1. Lowercase ASCII letters, collapse whitespace runs to one space, trim.
//   2. Pad with one space on each side.
//   3. For every byte trigram g of the padded text, add 1.0 to component
//      fnv1a32(g) mod dim. A padded text shorter than three bytes counts as a
//      single gram.
//   4. Divide by the L2 norm.
class StubEmbeddingProvider : public EmbeddingProvider {
 public:
  static constexpr size_t kDefaultDim = 256;

  explicit StubEmbeddingProvider(size_t dim = kDefaultDim);

  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) override;
  std::string Identity() const override;

  EmbeddingVector EmbedText(std::string_view text) const;

 private:
  size_t dim_;
};

// 32-bit FNV-1a.
uint32_t Fnv1a32(std::string_view bytes);

}  // namespace scriptforge

#endif  // SCRIPTFORGE_EMBEDDING_H_
