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

// Ratcliff/Obershelp gestalt pattern matching.
//
// The matcher repeatedly takes the longest common block of the two inputs,
// then recurses on the unmatched pieces to the left and to the right of it.
// When several blocks share the maximal length, the one starting earliest in
// `a` wins, and among those the one starting earliest in `b`. No junk
// heuristics are applied. Comparison is byte-wise.

#ifndef SCRIPTFORGE_GESTALT_H_
#define SCRIPTFORGE_GESTALT_H_

#include <cstddef>
#include <string_view>

namespace scriptforge {

struct MatchBlock {
  size_t a = 0;
  size_t b = 0;
  size_t size = 0;
};

// Longest common block of a[alo, ahi) and b[blo, bhi) under the tie rule
// above. size == 0 when the ranges share no byte.
MatchBlock LongestMatch(std::string_view a, std::string_view b, size_t alo,
                        size_t ahi, size_t blo, size_t bhi);

// Total length of all recursively matched blocks.
size_t MatchingCharacters(std::string_view a, std::string_view b);

// 2 * M / (|a| + |b|) on the raw bytes; 1.0 when both are empty.
double RawGestaltRatio(std::string_view a, std::string_view b);

// RawGestaltRatio after lowercasing and whitespace collapsing both inputs.
double GestaltRatio(std::string_view a, std::string_view b);

}  // namespace scriptforge

#endif  // SCRIPTFORGE_GESTALT_H_
