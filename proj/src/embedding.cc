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

#include <algorithm>
#include <cmath>

#include "scriptforge/error.h"
#include "scriptforge/text.h"

namespace scriptforge {

EmbeddingVector::EmbeddingVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "embedding must have dim > 0");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "embedding has non-finite value");
    }
  }
}

double EmbeddingVector::Norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

double Cosine(const EmbeddingVector &u, const EmbeddingVector &v) {
  if (u.dim() != v.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot compare vectors of dim " + std::to_string(u.dim()) +
                    " and " + std::to_string(v.dim()),
                {{"left", u.dim()}, {"right", v.dim()}});
  }
  const double nu = u.Norm();
  const double nv = v.Norm();
  if (nu == 0.0 || nv == 0.0) {
    throw Error(ErrorCode::kZeroVector, "cosine of a zero vector is undefined");
  }
  double dot = 0.0;
  auto a = u.values();
  auto b = v.values();
  for (size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

EmbeddingVector EmbeddingProvider::EmbedOne(const std::string &text) {
  std::vector<EmbeddingVector> out = Embed(std::span<const std::string>(&text, 1));
  if (out.size() != 1) {
    throw Error(ErrorCode::kProviderUnavailable,
                "provider returned " + std::to_string(out.size()) +
                    " vectors for one text");
  }
  return std::move(out.front());
}

uint32_t Fnv1a32(std::string_view bytes) {
  uint32_t hash = 2166136261u;
  for (char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 16777619u;
  }
  return hash;
}

StubEmbeddingProvider::StubEmbeddingProvider(size_t dim) : dim_(dim) {
  if (dim_ == 0) throw Error(ErrorCode::kInvalidArgument, "dim must be > 0");
}

EmbeddingVector StubEmbeddingProvider::EmbedText(std::string_view text) const {
  const std::string padded = " " + NormalizeForMatch(text) + " ";
  std::vector<double> counts(dim_, 0.0);
  if (padded.size() < 3) {
    counts[Fnv1a32(padded) % dim_] += 1.0;
  } else {
    for (size_t i = 0; i + 3 <= padded.size(); ++i) {
      counts[Fnv1a32(std::string_view(padded).substr(i, 3)) % dim_] += 1.0;
    }
  }
  double sum = 0.0;
  for (double c : counts) sum += c * c;
  const double norm = std::sqrt(sum);
  for (double &c : counts) c /= norm;
  return EmbeddingVector(std::move(counts));
}

std::vector<EmbeddingVector> StubEmbeddingProvider::Embed(
    std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string &t : texts) out.push_back(EmbedText(t));
  return out;
}

std::string StubEmbeddingProvider::Identity() const {
  return "stub-trigram-" + std::to_string(dim_);
}

}  // namespace scriptforge
