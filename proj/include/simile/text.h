// Copyright 2026 The Simile Miner Authors.
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

// UTF-8 helpers for Serbian text: decoding, case folding for Latin and
// Cyrillic, diacritic folding and Cyrillic-to-Latin transliteration.

#ifndef SIMILE_TEXT_H_
#define SIMILE_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace simile {

// Decodes UTF-8 into code points. Invalid sequences decode to U+FFFD.
std::u32string DecodeUtf8(std::string_view s);

// Returns false if `s` is not well-formed UTF-8.
bool IsValidUtf8(std::string_view s);

void AppendUtf8(char32_t cp, std::string *out);
std::string EncodeUtf8(std::u32string_view s);

// Number of code points in a UTF-8 string.
size_t Utf8Length(std::string_view s);

char32_t FoldCase(char32_t cp);

// Lower-cases Latin (ASCII, Latin-1, Latin Extended-A) and Cyrillic
// letters. The typographic apostrophe U+2019 folds to ASCII '\''.
std::string FoldCase(std::string_view s);

// Removes Serbian diacritics: š→s, č→c, ć→c, ž→z, đ→dj. Applied to
// already case-folded text.
std::string FoldDiacritics(std::string_view s);

// Serbian Cyrillic to Gaj's Latin alphabet (30 letters, both cases).
// Everything else passes through unchanged.
std::string TransliterateCyrillic(std::string_view s);

bool IsWordChar(char32_t cp);

// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view s);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Collapses runs of whitespace (including NBSP) to one space and trims.
std::string CollapseWhitespace(std::string_view s);

std::string_view Trim(std::string_view s);

bool EndsWith(std::string_view s, std::string_view suffix);
bool StartsWith(std::string_view s, std::string_view prefix);

}  // namespace simile

#endif  // SIMILE_TEXT_H_
