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

#include "simile/text.h"

#include <cctype>

namespace simile {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at s[i]; advances i. Returns
// kReplacement and advances by one byte on malformed input.
char32_t DecodeOne(std::string_view s, size_t &i, bool *ok) {
  auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    if (ok) *ok = false;
    return kReplacement;
  }
  if (i + len > s.size()) {
    ++i;
    if (ok) *ok = false;
    return kReplacement;
  }
  for (int k = 1; k < len; ++k) {
    auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      if (ok) *ok = false;
      return kReplacement;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++i;
    if (ok) *ok = false;
    return kReplacement;
  }
  i += len;
  return cp;
}

// Serbian Cyrillic lower-case letters and their Latin spelling.
struct CyrillicLetter {
  char32_t lower;
  const char *latin;
};

constexpr CyrillicLetter kCyrillic[] = {
    {0x430, "a"},  {0x431, "b"},  {0x432, "v"},  {0x433, "g"},
    {0x434, "d"},  {0x452, "đ"},  {0x435, "e"},  {0x436, "ž"},
    {0x437, "z"},  {0x438, "i"},  {0x458, "j"},  {0x43A, "k"},
    {0x43B, "l"},  {0x459, "lj"}, {0x43C, "m"},  {0x43D, "n"},
    {0x45A, "nj"}, {0x43E, "o"},  {0x43F, "p"},  {0x440, "r"},
    {0x441, "s"},  {0x442, "t"},  {0x45B, "ć"},  {0x443, "u"},
    {0x444, "f"},  {0x445, "h"},  {0x446, "c"},  {0x447, "č"},
    {0x45F, "dž"}, {0x448, "š"},
};

}  // namespace

std::u32string DecodeUtf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) out.push_back(DecodeOne(s, i, nullptr));
  return out;
}

bool IsValidUtf8(std::string_view s) {
  bool ok = true;
  size_t i = 0;
  while (i < s.size() && ok) DecodeOne(s, i, &ok);
  return ok;
}

void AppendUtf8(char32_t cp, std::string *out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string EncodeUtf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) AppendUtf8(cp, &out);
  return out;
}

size_t Utf8Length(std::string_view s) {
  size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

char32_t FoldCase(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
    return (cp % 2 == 1) ? cp + 1 : cp;
  }
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if (cp == 0x2019 || cp == 0x2018) return '\'';
  return cp;
}

std::string FoldCase(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : DecodeUtf8(s)) {
    switch (cp) {
      // Latin digraph letters DŽ/Dž/dž, LJ/Lj/lj, NJ/Nj/nj.
      case 0x1C4: case 0x1C5: case 0x1C6: out += "dž"; break;
      case 0x1C7: case 0x1C8: case 0x1C9: out += "lj"; break;
      case 0x1CA: case 0x1CB: case 0x1CC: out += "nj"; break;
      default: AppendUtf8(FoldCase(cp), &out);
    }
  }
  return out;
}

std::string FoldDiacritics(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : DecodeUtf8(s)) {
    switch (cp) {
      case 0x161: out.push_back('s'); break;   // š
      case 0x160: out.push_back('S'); break;   // Š
      case 0x10D: case 0x107: out.push_back('c'); break;  // č ć
      case 0x10C: case 0x106: out.push_back('C'); break;  // Č Ć
      case 0x17E: out.push_back('z'); break;   // ž
      case 0x17D: out.push_back('Z'); break;   // Ž
      case 0x111: out += "dj"; break;          // đ
      case 0x110: out += "Dj"; break;          // Đ
      default: AppendUtf8(cp, &out);
    }
  }
  return out;
}

std::string TransliterateCyrillic(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : DecodeUtf8(s)) {
    bool upper = (cp >= 0x400 && cp <= 0x42F);
    char32_t lower = FoldCase(cp);
    const char *latin = nullptr;
    for (const auto &letter : kCyrillic) {
      if (letter.lower == lower) {
        latin = letter.latin;
        break;
      }
    }
    if (latin == nullptr) {
      AppendUtf8(cp, &out);
      continue;
    }
    if (!upper) {
      out += latin;
      continue;
    }
    // Upper case: capitalize the first Latin letter only (Lj, Nj, Dž).
    std::u32string cps = DecodeUtf8(latin);
    for (size_t k = 0; k < cps.size(); ++k) {
      char32_t c = cps[k];
      if (k == 0) {
        if (c < 0x80) {
          c = c - 32;
        } else if (c == 0x111) {
          c = 0x110;
        } else {
          c = c - 1;  // ž č ć š are odd/even pairs with upper = lower - 1
        }
      }
      AppendUtf8(c, &out);
    }
  }
  return out;
}

bool IsWordChar(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= '0' && cp <= '9');
  }
  if (cp <= 0xBF) return false;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x206F) return false;
  if (cp >= 0x2E00 && cp <= 0x2E7F) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp == kReplacement || cp == 0xFEFF) return false;
  return true;
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string Join(const std::vector<std::string> &parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char32_t cp : DecodeUtf8(s)) {
    bool space = cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' ||
                 cp == '\f' || cp == '\v' || cp == 0xA0 ||
                 (cp >= 0x2000 && cp <= 0x200A) || cp == 0x202F ||
                 cp == 0x3000;
    if (space) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    AppendUtf8(cp, &out);
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

}  // namespace simile
