// src/core/rules.cc

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

#include "orna/core/rules.h"

#include <algorithm>
#include <cstdio>

namespace orna {

DurationRules DurationRules::defaults() {
  DurationRules r;
  r[Ornament::kKan].max_seconds = 0.35;
  r[Ornament::kMeend].min_seconds = 0.45;
  r[Ornament::kNyas].min_seconds = 0.6;
  r[Ornament::kMurki].min_seconds = 0.4;
  r[Ornament::kMurki].max_seconds = 1.0;
  r[Ornament::kAndolan].min_seconds = 1.0;
  r[Ornament::kGamak].min_seconds = 0.7;
  return r;
}

void DurationRules::check() const {
  for (Ornament o : all_ornaments()) {
    const auto &b = (*this)[o];
    if ((b.min_seconds && *b.min_seconds <= 0.0) || (b.max_seconds && *b.max_seconds <= 0.0))
      throw Error(ErrorKind::kInvalidArgument,
                  "duration bound for " + std::string(full_name(o)) + " must be positive");
    if (b.min_seconds && b.max_seconds && !(*b.min_seconds < *b.max_seconds))
      throw Error(ErrorKind::kInvalidArgument,
                  "duration bounds for " + std::string(full_name(o)) + " need min < max");
  }
}

bool DurationRules::allows(Ornament o, double duration) const {
  const auto &b = (*this)[o];
  if (b.min_seconds && duration < *b.min_seconds) return false;
  if (b.max_seconds && duration > *b.max_seconds) return false;
  return true;
}

std::string_view violation_name(ViolationType t) {
  switch (t) {
    case ViolationType::kTooShort: return "TooShort";
    case ViolationType::kTooLong: return "TooLong";
    case ViolationType::kOverlap: return "Overlap";
  }
  return "?";
}

std::string Violation::describe() const {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s at event %zu (duration %.3f s)",
                std::string(violation_name(type)).c_str(), event_index, duration);
  return buf;
}

std::vector<Violation> validate_events(const LabelTrack &track, const DurationRules &rules) {
  std::vector<Event> ev = track.events;
  std::stable_sort(ev.begin(), ev.end(), [](const Event &a, const Event &b) {
    if (a.onset != b.onset) return a.onset < b.onset;
    if (a.offset != b.offset) return a.offset < b.offset;
    return a.cls < b.cls;
  });
  std::vector<Violation> out;
  double reach = 0.0;
  for (size_t i = 0; i < ev.size(); ++i) {
    const double d = ev[i].duration();
    const auto &b = rules[ev[i].cls];
    if (b.min_seconds && d < *b.min_seconds) out.push_back({ViolationType::kTooShort, i, d});
    if (b.max_seconds && d > *b.max_seconds) out.push_back({ViolationType::kTooLong, i, d});
    // Overlap against the furthest-reaching earlier event, so nested events
    // are caught too.
    if (i > 0 && reach > ev[i].onset) out.push_back({ViolationType::kOverlap, i, d});
    reach = (i == 0) ? ev[i].offset : std::max(reach, ev[i].offset);
  }
  return out;
}

}  // namespace orna
