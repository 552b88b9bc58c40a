// Copyright 2026 The PropForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small string helpers shared by every module. ASCII-only case folding.

#ifndef PROPFORGE_COMMON_TEXT_H_
#define PROPFORGE_COMMON_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace propforge {

std::string_view Trim(std::string_view s);
std::string ToLower(std::string_view s);
bool StartsWithIgnoreCase(std::string_view s, std::string_view prefix);
bool ContainsIgnoreCase(std::string_view haystack, std::string_view needle);
std::size_t FindIgnoreCase(std::string_view haystack, std::string_view needle,
                           std::size_t from = 0);

// Splits on '\n', dropping a trailing '\r' from each line.
std::vector<std::string> SplitLines(std::string_view s);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Number of Unicode scalar values in a UTF-8 string. Invalid sequences count
// one scalar per stray byte.
std::size_t CountScalars(std::string_view utf8);

// Splits `s` into lowercase alphanumeric words. Whitespace, punctuation and
// '_' separate words, and a lower-to-upper case change ("searchButton") starts
// a new word.
std::vector<std::string> WordTokens(std::string_view s);

// Escapes a string for a double-quoted literal (\" \\ \n \t \r).
std::string QuoteString(std::string_view s);

}  // namespace propforge

#endif  // PROPFORGE_COMMON_TEXT_H_
