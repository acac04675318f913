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

#include "simile/html.h"

#include <iconv.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <functional>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "simile/text.h"

namespace simile {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':' ||
         c == '_';
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

// Case-insensitive search for `needle` (lower case) from `from`.
size_t FindNoCase(std::string_view hay, std::string_view needle, size_t from) {
  if (needle.size() > hay.size()) return std::string_view::npos;
  for (size_t i = from; i + needle.size() <= hay.size(); ++i) {
    size_t k = 0;
    while (k < needle.size() &&
           std::tolower(static_cast<unsigned char>(hay[i + k])) == needle[k]) {
      ++k;
    }
    if (k == needle.size()) return i;
  }
  return std::string_view::npos;
}

struct HtmlToken {
  enum Type { kStart, kEnd, kText, kRawText } type;
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  bool self_closing = false;
  std::string_view text;

  const std::string *Attr(std::string_view n) const {
    for (const auto &[k, v] : attrs) {
      if (k == n) return &v;
    }
    return nullptr;
  }
};

// Calls `fn` for every token until it returns false.
void ScanHtml(std::string_view html,
              const std::function<bool(const HtmlToken &)> &fn) {
  size_t i = 0;
  const size_t n = html.size();
  auto emit_text = [&](size_t from, size_t to) {
    if (to <= from) return true;
    HtmlToken t{HtmlToken::kText, {}, {}, false, html.substr(from, to - from)};
    return fn(t);
  };
  size_t text_start = 0;
  while (i < n) {
    if (html[i] != '<' || i + 1 >= n) {
      ++i;
      continue;
    }
    char next = html[i + 1];
    bool is_tag = std::isalpha(static_cast<unsigned char>(next)) ||
                  next == '/' || next == '!' || next == '?';
    if (!is_tag) {
      ++i;
      continue;
    }
    if (!emit_text(text_start, i)) return;

    if (html.compare(i, 4, "<!--") == 0) {
      size_t end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? n : end + 3;
      text_start = i;
      continue;
    }
    if (next == '!' || next == '?') {
      size_t end = html.find('>', i);
      i = end == std::string_view::npos ? n : end + 1;
      text_start = i;
      continue;
    }

    HtmlToken tok{next == '/' ? HtmlToken::kEnd : HtmlToken::kStart, {}, {},
                  false, {}};
    size_t p = i + (next == '/' ? 2 : 1);
    size_t name_start = p;
    while (p < n && IsNameChar(html[p])) ++p;
    tok.name = Lower(html.substr(name_start, p - name_start));
    // Attributes.
    while (p < n && html[p] != '>') {
      if (IsSpace(html[p])) {
        ++p;
        continue;
      }
      if (html[p] == '/') {
        tok.self_closing = p + 1 < n && html[p + 1] == '>';
        ++p;
        continue;
      }
      size_t an = p;
      while (p < n && !IsSpace(html[p]) && html[p] != '=' && html[p] != '>' &&
             html[p] != '/') {
        ++p;
      }
      std::string attr = Lower(html.substr(an, p - an));
      while (p < n && IsSpace(html[p])) ++p;
      std::string value;
      if (p < n && html[p] == '=') {
        ++p;
        while (p < n && IsSpace(html[p])) ++p;
        if (p < n && (html[p] == '"' || html[p] == '\'')) {
          char quote = html[p++];
          size_t vs = p;
          while (p < n && html[p] != quote) ++p;
          value = DecodeEntities(html.substr(vs, p - vs));
          if (p < n) ++p;
        } else {
          size_t vs = p;
          while (p < n && !IsSpace(html[p]) && html[p] != '>') ++p;
          value = DecodeEntities(html.substr(vs, p - vs));
        }
      }
      if (!attr.empty()) tok.attrs.emplace_back(std::move(attr), std::move(value));
    }
    i = p < n ? p + 1 : n;
    text_start = i;
    if (tok.name.empty()) continue;
    if (!fn(tok)) return;

    if (tok.type == HtmlToken::kStart && !tok.self_closing &&
        (tok.name == "script" || tok.name == "style")) {
      size_t end = FindNoCase(html, "</" + tok.name, i);
      size_t stop = end == std::string_view::npos ? n : end;
      HtmlToken raw{HtmlToken::kRawText, tok.name, {}, false,
                    html.substr(i, stop - i)};
      if (!fn(raw)) return;
      i = stop;
      text_start = i;
    }
  }
  emit_text(text_start, n);
}

bool IsVoid(const std::string &name) {
  static const std::unordered_set<std::string> kVoid = {
      "area", "base", "br",   "col",   "embed",  "hr",    "img",
      "input", "link", "meta", "param", "source", "track", "wbr"};
  return kVoid.count(name) > 0;
}

bool IsBlock(const std::string &name) {
  static const std::unordered_set<std::string> kBlock = {
      "address", "article", "aside",  "blockquote", "br",     "dd",
      "div",     "dl",      "dt",     "fieldset",   "figcaption",
      "figure",  "footer",  "form",   "h1",         "h2",     "h3",
      "h4",      "h5",      "h6",     "header",     "hr",     "li",
      "main",    "nav",     "ol",     "p",          "pre",    "section",
      "table",   "tbody",   "td",     "tfoot",      "th",     "thead",
      "tr",      "ul",      "option", "img"};
  return kBlock.count(name) > 0;
}

bool Matches(const HtmlToken &tok, const ContentSelector &sel) {
  if (tok.type != HtmlToken::kStart || tok.name != sel.element) return false;
  const std::string *v = tok.Attr(sel.attribute);
  if (!v) return false;
  if (sel.attribute == "class") {
    auto classes = SplitWhitespace(*v);
    return std::find(classes.begin(), classes.end(), sel.value) != classes.end();
  }
  return *v == sel.value;
}

const std::unordered_map<std::string, char32_t> &NamedEntities() {
  static const std::unordered_map<std::string, char32_t> kEntities = {
      {"amp", U'&'},      {"lt", U'<'},       {"gt", U'>'},
      {"quot", U'"'},     {"apos", U'\''},    {"nbsp", 0xA0},
      {"copy", 0xA9},     {"reg", 0xAE},      {"shy", 0xAD},
      {"laquo", 0xAB},    {"raquo", 0xBB},    {"hellip", 0x2026},
      {"ndash", 0x2013},  {"mdash", 0x2014},  {"lsquo", 0x2018},
      {"rsquo", 0x2019},  {"sbquo", 0x201A},  {"ldquo", 0x201C},
      {"rdquo", 0x201D},  {"bdquo", 0x201E},  {"euro", 0x20AC},
      {"scaron", 0x161},  {"Scaron", 0x160},  {"zcaron", 0x17E},
      {"Zcaron", 0x17D},  {"ccaron", 0x10D},  {"Ccaron", 0x10C},
      {"cacute", 0x107},  {"Cacute", 0x106},  {"dstrok", 0x111},
      {"Dstrok", 0x110},  {"eacute", 0xE9},   {"Eacute", 0xC9},
      {"auml", 0xE4},     {"ouml", 0xF6},     {"uuml", 0xFC},
      {"szlig", 0xDF},    {"deg", 0xB0},      {"middot", 0xB7},
      {"times", 0xD7},    {"bull", 0x2022}};
  return kEntities;
}

}  // namespace

std::string ContentSelector::ToString() const {
  return element + "[" + attribute + "=" + value + "]";
}

ContentSelector ParseSelector(std::string_view s) {
  std::string t(Trim(s));
  ContentSelector sel;
  size_t bracket = t.find('[');
  size_t hash = t.find('#');
  size_t dot = t.find('.');
  if (bracket != std::string::npos) {
    if (t.back() != ']') throw ParseError("selector missing ']': " + t);
    sel.element = Lower(t.substr(0, bracket));
    std::string inner = t.substr(bracket + 1, t.size() - bracket - 2);
    size_t eq = inner.find('=');
    if (eq == std::string::npos) throw ParseError("selector missing '=': " + t);
    sel.attribute = Lower(Trim(inner.substr(0, eq)));
    std::string value(Trim(inner.substr(eq + 1)));
    if (value.size() >= 2 && (value[0] == '"' || value[0] == '\'') &&
        value.back() == value[0]) {
      value = value.substr(1, value.size() - 2);
    }
    sel.value = value;
  } else if (hash != std::string::npos) {
    sel.element = Lower(t.substr(0, hash));
    sel.attribute = "id";
    sel.value = t.substr(hash + 1);
  } else if (dot != std::string::npos) {
    sel.element = Lower(t.substr(0, dot));
    sel.attribute = "class";
    sel.value = t.substr(dot + 1);
  } else {
    throw ParseError("selector needs an attribute: " + t);
  }
  auto valid_name = [](const std::string &x) {
    return !x.empty() && std::all_of(x.begin(), x.end(), IsNameChar);
  };
  if (!valid_name(sel.element) || !valid_name(sel.attribute) ||
      sel.value.empty()) {
    throw ParseError("malformed selector: " + t);
  }
  return sel;
}

std::string DecodeEntities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    size_t semi = s.find(';', i + 1);
    if (i + 1 < s.size() && s[i + 1] == '#') {
      size_t p = i + 2;
      bool hex = p < s.size() && (s[p] == 'x' || s[p] == 'X');
      if (hex) ++p;
      size_t digits_start = p;
      uint32_t cp = 0;
      while (p < s.size() && p - digits_start < 8 &&
             (hex ? std::isxdigit(static_cast<unsigned char>(s[p]))
                  : std::isdigit(static_cast<unsigned char>(s[p])))) {
        cp = cp * (hex ? 16 : 10) +
             static_cast<uint32_t>(std::isdigit(static_cast<unsigned char>(s[p]))
                                       ? s[p] - '0'
                                       : std::tolower(s[p]) - 'a' + 10);
        ++p;
      }
      if (p == digits_start) {
        out.push_back(s[i++]);
        continue;
      }
      if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        cp = 0xFFFD;
      }
      AppendUtf8(static_cast<char32_t>(cp), &out);
      i = (p < s.size() && s[p] == ';') ? p + 1 : p;
      continue;
    }
    if (semi != std::string_view::npos && semi - i <= 10) {
      auto it = NamedEntities().find(std::string(s.substr(i + 1, semi - i - 1)));
      if (it != NamedEntities().end()) {
        if (it->second != 0xAD) AppendUtf8(it->second, &out);
        i = semi + 1;
        continue;
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

std::string ExtractText(std::string_view html, const ContentSelector &selector) {
  std::string raw;
  bool inside = false;
  bool found = false;
  int depth = 0;
  ScanHtml(html, [&](const HtmlToken &tok) {
    if (!inside) {
      if (Matches(tok, selector)) {
        found = true;
        if (tok.self_closing || IsVoid(tok.name)) return false;
        inside = true;
        depth = 1;
      }
      return true;
    }
    switch (tok.type) {
      case HtmlToken::kText:
        raw += DecodeEntities(tok.text);
        break;
      case HtmlToken::kRawText:
        break;
      case HtmlToken::kStart:
        if (tok.name == selector.element && !tok.self_closing &&
            !IsVoid(tok.name)) {
          ++depth;
        }
        if (IsBlock(tok.name)) raw.push_back(' ');
        break;
      case HtmlToken::kEnd:
        if (tok.name == selector.element && --depth == 0) return false;
        if (IsBlock(tok.name)) raw.push_back(' ');
        break;
    }
    return true;
  });
  if (!found) return "";
  // No-break spaces count as whitespace.
  std::string spaced;
  spaced.reserve(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    if (static_cast<unsigned char>(raw[i]) == 0xC2 && i + 1 < raw.size() &&
        static_cast<unsigned char>(raw[i + 1]) == 0xA0) {
      spaced.push_back(' ');
      ++i;
    } else {
      spaced.push_back(raw[i]);
    }
  }
  return CollapseWhitespace(spaced);
}

PageLinks ExtractLinks(std::string_view html) {
  PageLinks links;
  bool have_base = false;
  ScanHtml(html, [&](const HtmlToken &tok) {
    if (tok.type != HtmlToken::kStart) return true;
    const std::string *href = tok.Attr("href");
    if (!href) return true;
    std::string value(Trim(*href));
    if (tok.name == "base" && !have_base) {
      links.base = value;
      have_base = true;
    } else if ((tok.name == "a" || tok.name == "area") && !value.empty()) {
      links.hrefs.push_back(value);
    }
    return true;
  });
  return links;
}

std::string CharsetFromContentType(std::string_view content_type) {
  std::string lower = Lower(content_type);
  size_t pos = lower.find("charset=");
  if (pos == std::string::npos) return "";
  std::string value = lower.substr(pos + 8);
  size_t end = value.find_first_of(";, \t");
  value = value.substr(0, end);
  if (value.size() >= 2 && (value[0] == '"' || value[0] == '\'')) {
    value = value.substr(1, value.size() - 2);
  }
  return value;
}

std::string CharsetFromMeta(std::string_view html) {
  std::string_view head = html.substr(0, 4096);
  std::string found;
  ScanHtml(head, [&](const HtmlToken &tok) {
    if (tok.type != HtmlToken::kStart || tok.name != "meta") return true;
    if (const std::string *cs = tok.Attr("charset")) {
      found = Lower(Trim(*cs));
      return false;
    }
    const std::string *equiv = tok.Attr("http-equiv");
    const std::string *content = tok.Attr("content");
    if (equiv && content && Lower(*equiv) == "content-type") {
      found = CharsetFromContentType(*content);
      if (!found.empty()) return false;
    }
    return true;
  });
  return found;
}

std::string ToUtf8(std::string_view bytes, const std::string &charset) {
  std::string cs = Lower(charset);
  if (cs.empty() || cs == "utf-8" || cs == "utf8") {
    if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
    if (!IsValidUtf8(bytes)) throw DecodeError("invalid UTF-8");
    return std::string(bytes);
  }
  iconv_t cd = iconv_open("UTF-8", cs.c_str());
  if (cd == reinterpret_cast<iconv_t>(-1)) {
    throw DecodeError("unknown charset: " + charset);
  }
  std::string out;
  std::string in(bytes);
  char *inp = in.data();
  size_t inleft = in.size();
  char buf[4096];
  while (inleft > 0) {
    char *outp = buf;
    size_t outleft = sizeof(buf);
    size_t rc = iconv(cd, &inp, &inleft, &outp, &outleft);
    out.append(buf, sizeof(buf) - outleft);
    if (rc == static_cast<size_t>(-1) && errno != E2BIG) {
      iconv_close(cd);
      throw DecodeError("bytes invalid in charset " + charset);
    }
  }
  iconv_close(cd);
  return out;
}

std::string DecodeHtml(std::string_view bytes, std::string_view content_type) {
  std::string charset = CharsetFromContentType(content_type);
  if (charset.empty() && bytes.substr(0, 3) == "\xEF\xBB\xBF") charset = "utf-8";
  if (charset.empty()) charset = CharsetFromMeta(bytes);
  if (charset.empty()) charset = "utf-8";
  return ToUtf8(bytes, charset);
}

}  // namespace simile
