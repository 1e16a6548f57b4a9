// include/orna/core/rules.h

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

#ifndef ORNA_CORE_RULES_H_
#define ORNA_CORE_RULES_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "orna/core/types.h"

namespace orna {

struct DurationBounds {
  std::optional<double> min_seconds;
  std::optional<double> max_seconds;
};

// Per-class annotation duration limits used during labelling.
struct DurationRules {
  std::array<DurationBounds, kNumOrnaments> bounds;

  static DurationRules defaults();
  const DurationBounds &operator[](Ornament o) const { return bounds[index_of(o)]; }
  DurationBounds &operator[](Ornament o) { return bounds[index_of(o)]; }
  // Throws Error(kInvalidArgument) on non-positive values or min >= max.
  void check() const;
  bool allows(Ornament o, double duration) const;
};

enum class ViolationType { kTooShort, kTooLong, kOverlap };

struct Violation {
  ViolationType type;
  size_t event_index;  // index into the onset-sorted event list
  double duration;     // measured duration of the offending event
  std::string describe() const;
  bool operator==(const Violation &) const = default;
};

std::string_view violation_name(ViolationType t);

// Rule breaches as data; empty iff compliant. Events are examined in onset
// order regardless of the input order.
std::vector<Violation> validate_events(const LabelTrack &track, const DurationRules &rules);

}  // namespace orna

#endif  // ORNA_CORE_RULES_H_
