// src/eval/report.cc

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

#include "orna/eval/report.h"

#include <cstdio>

namespace orna::eval {

using nlohmann::json;

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json to_json(const MetricSet &m, bool with_accuracy) {
  json per_class = json::object();
  for (Ornament o : all_ornaments()) {
    const int c = index_of(o);
    per_class[std::string(short_code(o))] = {{"precision", m.per_class[c].precision},
                                             {"recall", m.per_class[c].recall},
                                             {"f1", m.per_class[c].f1},
                                             {"tp", m.counts[c].tp},
                                             {"fp", m.counts[c].fp},
                                             {"fn", m.counts[c].fn}};
  }
  json out = {{"per_class", per_class},
              {"macro",
               {{"precision", m.macro.precision},
                {"recall", m.macro.recall},
                {"f1", m.macro.f1},
                {"classes", m.macro_classes}}}};
  if (with_accuracy) out["accuracy"] = m.accuracy;
  return out;
}

json to_json(const EvalReport &r) {
  json conf = json::array();
  for (const auto &row : r.confusion) conf.push_back(row);
  json out = {{"split", r.split},
              {"config_hash", r.config_hash},
              {"frame", to_json(r.frame, true)},
              {"event_collar", to_json(r.event_collar, false)},
              {"event_zero_collar", to_json(r.event_zero_collar, false)},
              {"confusion", conf}};
  out["event_collar"]["collar_seconds"] = r.collar_seconds;
  if (r.kappa) out["kappa"] = *r.kappa;
  return out;
}

std::string confusion_csv(const Confusion &c) {
  std::string s = "truth\\pred";
  for (Ornament o : all_ornaments()) s += "," + std::string(short_code(o));
  s += "\n";
  for (Ornament t : all_ornaments()) {
    s += short_code(t);
    for (Ornament p : all_ornaments()) s += "," + std::to_string(c[index_of(t)][index_of(p)]);
    s += "\n";
  }
  return s;
}

}  // namespace orna::eval
