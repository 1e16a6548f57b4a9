// src/core/types.cc

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

#include "orna/core/types.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>

namespace orna {

namespace {

struct OrnamentNames {
  Ornament cls;
  std::string_view code;
  std::string_view name;
  std::string_view alt;  // transliteration variant
};

constexpr std::array<OrnamentNames, kNumOrnaments> kNames = {{
    {Ornament::kKan, "K", "Kan", "Kansvar"},
    {Ornament::kMeend, "Me", "Meend", "Mind"},
    {Ornament::kMurki, "Mu", "Murki", "Murki"},
    {Ornament::kNyas, "H", "Nyas", "NyasSvar"},
    {Ornament::kAndolan, "An", "Andolan", "Andolan"},
    {Ornament::kGamak, "G", "Gamak", "Gamaka"},
}};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

}  // namespace

std::string_view short_code(Ornament o) { return kNames[index_of(o)].code; }
std::string_view full_name(Ornament o) { return kNames[index_of(o)].name; }

std::optional<Ornament> parse_ornament(std::string_view text) {
  for (const auto &n : kNames) {
    if (iequals(text, n.code) || iequals(text, n.name) || iequals(text, n.alt))
      return n.cls;
  }
  return std::nullopt;
}

const std::vector<Ornament> &all_ornaments() {
  static const std::vector<Ornament> all = {Ornament::kKan,   Ornament::kMeend,
                                            Ornament::kMurki, Ornament::kNyas,
                                            Ornament::kAndolan, Ornament::kGamak};
  return all;
}

void normalize_track(LabelTrack *track) {
  auto &ev = track->events;
  std::stable_sort(ev.begin(), ev.end(),
                   [](const Event &a, const Event &b) { return a.onset < b.onset; });
  for (size_t i = 0; i < ev.size(); ++i) {
    if (!(ev[i].offset > ev[i].onset)) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "event %zu: offset %.6f <= onset %.6f", i,
                    ev[i].offset, ev[i].onset);
      throw Error(ErrorKind::kOffsetBeforeOnset, buf);
    }
    if (ev[i].onset < 0.0)
      throw Error(ErrorKind::kInvalidArgument, "negative onset");
    if (i > 0 && ev[i - 1].offset > ev[i].onset) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "events %zu and %zu overlap", i - 1, i);
      throw Error(ErrorKind::kOverlap, buf);
    }
  }
}

}  // namespace orna
