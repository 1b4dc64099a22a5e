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

// Byte-level text normalization helpers. All functions treat input as
// UTF-8 bytes and only fold ASCII letters; non-ASCII bytes pass through.

#ifndef SCRIPTFORGE_TEXT_H_
#define SCRIPTFORGE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace scriptforge {

bool IsSpace(char c);
bool IsAsciiAlpha(char c);
bool IsAsciiAlnum(char c);

std::string Trim(std::string_view s);

// Trims and replaces every internal whitespace run with one space.
std::string CollapseWhitespace(std::string_view s);

std::string ToLowerAscii(std::string_view s);

// Lowercase + CollapseWhitespace. The canonical form used for duplicate
// detection and string similarity.
std::string NormalizeForMatch(std::string_view s);

// Whitespace-separated words of the trimmed string.
std::vector<std::string> SplitWords(std::string_view s);

// Lowercased tokens split on runs of non-alphanumeric bytes. Used by the
// knowledge-base index; no stemming.
std::vector<std::string> Tokenize(std::string_view s);

}  // namespace scriptforge

#endif  // SCRIPTFORGE_TEXT_H_
