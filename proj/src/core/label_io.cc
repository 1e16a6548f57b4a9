// src/core/label_io.cc

// Copyright 2026  The orna Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "orna/core/label_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

namespace orna {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_seconds(std::string_view s, double *out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(*out);
}

[[noreturn]] void fail(ErrorKind kind, int line, const std::string &msg) {
  throw Error(kind, "line " + std::to_string(line) + ": " + msg, line);
}

}  // namespace

LabelTrack parse_label_track(std::string_view text, const std::string &clip_id) {
  LabelTrack track;
  track.clip_id = clip_id;
  std::vector<int> lines;
  int line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
    ++line_no;
    if (trim(line).empty() || line.front() == '\\') continue;

    std::vector<std::string_view> cols;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos
                                                                      : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 3) fail(ErrorKind::kMalformedLine, line_no, "expected 3 tab-separated columns");
    Event ev;
    if (!parse_seconds(cols[0], &ev.onset) || !parse_seconds(cols[1], &ev.offset))
      fail(ErrorKind::kMalformedLine, line_no, "bad time value");
    auto cls = parse_ornament(trim(cols[2]));
    if (!cls) fail(ErrorKind::kUnknownClass, line_no, "unknown class '" + std::string(trim(cols[2])) + "'");
    ev.cls = *cls;
    if (ev.onset < 0.0) fail(ErrorKind::kMalformedLine, line_no, "negative onset");
    if (!(ev.offset > ev.onset)) fail(ErrorKind::kOffsetBeforeOnset, line_no, "offset <= onset");
    track.events.push_back(ev);
    lines.push_back(line_no);
  }

  std::vector<size_t> order(track.events.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return track.events[a].onset < track.events[b].onset;
  });
  std::vector<Event> sorted;
  sorted.reserve(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    const Event &ev = track.events[order[i]];
    if (!sorted.empty() && sorted.back().offset > ev.onset)
      fail(ErrorKind::kOverlap, lines[order[i]], "event overlaps the preceding one");
    sorted.push_back(ev);
  }
  track.events = std::move(sorted);
  return track;
}

std::string write_label_track(const LabelTrack &track) {
  std::vector<Event> events = track.events;
  std::stable_sort(events.begin(), events.end(),
                   [](const Event &a, const Event &b) { return a.onset < b.onset; });
  std::string out;
  char buf[96];
  for (const auto &ev : events) {
    std::snprintf(buf, sizeof(buf), "%.6f\t%.6f\t", ev.onset, ev.offset);
    out += buf;
    out += short_code(ev.cls);
    out += '\n';
  }
  return out;
}

LabelTrack read_label_file(const std::string &path, const std::string &clip_id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open label file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_label_track(ss.str(), clip_id);
}

void write_label_file(const std::string &path, const LabelTrack &track) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write label file " + path);
  out << write_label_track(track);
}

}  // namespace orna
