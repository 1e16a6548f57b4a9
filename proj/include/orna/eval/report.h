// include/orna/eval/report.h

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

#ifndef ORNA_EVAL_REPORT_H_
#define ORNA_EVAL_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "orna/eval/metrics.h"

namespace orna::eval {

struct EvalReport {
  std::string split;
  std::string config_hash;
  MetricSet frame;
  MetricSet event_collar;       // 200 ms collar by default
  MetricSet event_zero_collar;  // exact boundaries
  double collar_seconds = 0.2;
  Confusion confusion{};
  std::optional<double> kappa;
};

// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

nlohmann::json to_json(const MetricSet &m, bool with_accuracy);
nlohmann::json to_json(const EvalReport &r);
// Header row then one row per true class, both led by class codes.
std::string confusion_csv(const Confusion &c);

}  // namespace orna::eval

#endif  // ORNA_EVAL_REPORT_H_
