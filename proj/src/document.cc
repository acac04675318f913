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

#include "simile/document.h"

#include <cctype>
#include <cstdio>
#include <ctime>

#include "simile/errors.h"

namespace simile {

Timestamp Now() {
  return std::chrono::time_point_cast<std::chrono::milliseconds>(
      std::chrono::system_clock::now());
}

std::string FormatRfc3339(Timestamp t) {
  using namespace std::chrono;
  auto secs = time_point_cast<seconds>(t);
  auto millis = (t - secs).count();
  if (millis < 0) {
    secs -= seconds(1);
    millis += 1000;
  }
  std::time_t tt = system_clock::to_time_t(secs);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, static_cast<int>(millis));
  return buf;
}

Timestamp ParseRfc3339(const std::string &s) {
  int y, mo, d, h, mi, sec;
  int consumed = 0;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi,
                  &sec, &consumed) != 6) {
    throw ParseError("bad timestamp: " + s);
  }
  int millis = 0;
  size_t pos = static_cast<size_t>(consumed);
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    int digits = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      if (digits < 3) millis = millis * 10 + (s[pos] - '0');
      ++digits;
      ++pos;
    }
    for (; digits < 3; ++digits) millis *= 10;
  }
  if (pos >= s.size() || (s[pos] != 'Z' && s[pos] != 'z')) {
    throw ParseError("timestamp must be UTC (Z): " + s);
  }
  using namespace std::chrono;
  auto day = sys_days(year(y) / month(static_cast<unsigned>(mo)) /
                      std::chrono::day(static_cast<unsigned>(d)));
  return time_point_cast<milliseconds>(day) + hours(h) + minutes(mi) +
         seconds(sec) + milliseconds(millis);
}

nlohmann::json ToJson(const Document &doc) {
  return {{"url", doc.url},
          {"site_id", doc.site_id},
          {"fetched_at", FormatRfc3339(doc.fetched_at)},
          {"text", doc.text}};
}

Document DocumentFromJson(const nlohmann::json &j) {
  Document doc;
  doc.url = j.at("url").get<std::string>();
  doc.site_id = j.value("site_id", "");
  doc.fetched_at = j.contains("fetched_at")
                       ? ParseRfc3339(j.at("fetched_at").get<std::string>())
                       : Timestamp{};
  doc.text = j.at("text").get<std::string>();
  return doc;
}

}  // namespace simile
