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

// Tolerant HTML scanning for crawling: content-container text, links and
// charset detection. Not a conforming HTML parser; it handles the tag soup
// found on forums and news sites well enough for text extraction.

#ifndef SIMILE_HTML_H_
#define SIMILE_HTML_H_

#include <string>
#include <string_view>
#include <vector>

#include "simile/errors.h"

namespace simile {

// element[attribute=value], e.g. div[id=content]. For the class attribute
// the value matches any one of the element's classes.
struct ContentSelector {
  std::string element;
  std::string attribute;
  std::string value;

  std::string ToString() const;
  bool operator==(const ContentSelector &) const = default;
};

// Accepts element[attr=value] with an optionally quoted value, and the
// shorthands element#id and element.class. Throws ParseError otherwise.
ContentSelector ParseSelector(std::string_view s);

// Text inside the first element matching `selector`: script and style
// dropped, tags stripped (block-level tags separate words), entities
// decoded, whitespace collapsed. Empty when nothing matches. Input must be
// UTF-8.
std::string ExtractText(std::string_view html, const ContentSelector &selector);

// href values of <a> and <area> elements, entity-decoded, in document
// order. A <base href> is returned separately.
struct PageLinks {
  std::string base;
  std::vector<std::string> hrefs;
};
PageLinks ExtractLinks(std::string_view html);

// Decodes character references (named, decimal, hexadecimal).
std::string DecodeEntities(std::string_view s);

// Charset from a Content-Type value, or "" if absent.
std::string CharsetFromContentType(std::string_view content_type);
// Charset from <meta charset> or <meta http-equiv content> in the first
// 4 KiB, or "".
std::string CharsetFromMeta(std::string_view html);

class DecodeError : public Error {
 public:
  using Error::Error;
};

// Converts `bytes` in `charset` to UTF-8. Throws DecodeError on bytes that
// are invalid in that charset or an unknown charset.
std::string ToUtf8(std::string_view bytes, const std::string &charset);

// Header charset, then meta charset, then UTF-8; returns UTF-8 text.
std::string DecodeHtml(std::string_view bytes, std::string_view content_type);

}  // namespace simile

#endif  // SIMILE_HTML_H_
