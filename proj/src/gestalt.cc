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

#include "scriptforge/gestalt.h"

#include <array>
#include <string>
#include <vector>

#include "scriptforge/text.h"

namespace scriptforge {

namespace {

struct Range {
  size_t alo, ahi, blo, bhi;
};

}  // namespace

MatchBlock LongestMatch(std::string_view a, std::string_view b, size_t alo,
                        size_t ahi, size_t blo, size_t bhi) {
  MatchBlock best{alo, blo, 0};
  if (alo >= ahi || blo >= bhi) return best;

  // Positions of every byte value within b[blo, bhi), ascending.
  std::array<std::vector<size_t>, 256> positions;
  for (size_t j = blo; j < bhi; ++j) {
    positions[static_cast<unsigned char>(b[j])].push_back(j);
  }

  // run[j - blo + 1] = length of the common suffix ending at a[i], b[j].
  const size_t width = bhi - blo + 1;
  std::vector<size_t> prev(width, 0), curr(width, 0);
  std::vector<size_t> touched_prev, touched_curr;
  for (size_t i = alo; i < ahi; ++i) {
    for (size_t j : positions[static_cast<unsigned char>(a[i])]) {
      const size_t k = prev[j - blo] + 1;
      curr[j - blo + 1] = k;
      touched_curr.push_back(j - blo + 1);
      if (k > best.size) best = {i + 1 - k, j + 1 - k, k};
    }
    for (size_t idx : touched_prev) prev[idx] = 0;
    touched_prev.clear();
    std::swap(prev, curr);
    std::swap(touched_prev, touched_curr);
  }
  return best;
}

size_t MatchingCharacters(std::string_view a, std::string_view b) {
  size_t matched = 0;
  std::vector<Range> pending{{0, a.size(), 0, b.size()}};
  while (!pending.empty()) {
    const Range r = pending.back();
    pending.pop_back();
    const MatchBlock m = LongestMatch(a, b, r.alo, r.ahi, r.blo, r.bhi);
    if (m.size == 0) continue;
    matched += m.size;
    if (r.alo < m.a && r.blo < m.b) pending.push_back({r.alo, m.a, r.blo, m.b});
    if (m.a + m.size < r.ahi && m.b + m.size < r.bhi) {
      pending.push_back({m.a + m.size, r.ahi, m.b + m.size, r.bhi});
    }
  }
  return matched;
}

double RawGestaltRatio(std::string_view a, std::string_view b) {
  const size_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(MatchingCharacters(a, b)) /
         static_cast<double>(total);
}

double GestaltRatio(std::string_view a, std::string_view b) {
  return RawGestaltRatio(NormalizeForMatch(a), NormalizeForMatch(b));
}

}  // namespace scriptforge
