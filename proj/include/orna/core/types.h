// include/orna/core/types.h

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

#ifndef ORNA_CORE_TYPES_H_
#define ORNA_CORE_TYPES_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orna {

// Error kinds raised across the toolkit. Violations of annotation rules are
// data (see core/rules.h) and never raised.
enum class ErrorKind {
  kMalformedLine,
  kUnknownClass,
  kOverlap,
  kOffsetBeforeOnset,
  kEmptySignal,
  kShapeMismatch,
  kOddLength,
  kNoValidFrames,
  kNonFiniteGradient,
  kNonFiniteLoss,
  kRuleViolation,
  kInvalidArgument,
  kIo,
  kFormat,
  kEmptyPartition,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what, int line = 0)
      : std::runtime_error(what), kind_(kind), line_(line) {}
  ErrorKind kind() const { return kind_; }
  // 1-based line number for parse errors, 0 otherwise.
  int line() const { return line_; }

 private:
  ErrorKind kind_;
  int line_;
};

inline constexpr int kNumOrnaments = 6;

enum class Ornament : std::uint8_t { kKan, kMeend, kMurki, kNyas, kAndolan, kGamak };

// Per-frame symbol: background, one of the six ornaments, or the don't-care
// mark. The numeric value doubles as the model's class index (Background = 0).
enum class FrameSymbol : std::uint8_t {
  kBackground = 0,
  kKan,
  kMeend,
  kMurki,
  kNyas,
  kAndolan,
  kGamak,
  kDontCare,
};

inline constexpr FrameSymbol to_symbol(Ornament o) {
  return static_cast<FrameSymbol>(static_cast<int>(o) + 1);
}
inline constexpr bool is_ornament(FrameSymbol s) {
  return s != FrameSymbol::kBackground && s != FrameSymbol::kDontCare;
}
// Precondition: is_ornament(s).
inline constexpr Ornament to_ornament(FrameSymbol s) {
  return static_cast<Ornament>(static_cast<int>(s) - 1);
}
inline constexpr int index_of(Ornament o) { return static_cast<int>(o); }

// Short codes follow the K/Me/Mu/H/An/G legend.
std::string_view short_code(Ornament o);
std::string_view full_name(Ornament o);
// Accepts a short code or full name, case-insensitive.
std::optional<Ornament> parse_ornament(std::string_view text);
const std::vector<Ornament> &all_ornaments();

struct Event {
  double onset = 0.0;   // seconds
  double offset = 0.0;  // seconds
  Ornament cls = Ornament::kKan;

  double duration() const { return offset - onset; }
  bool operator==(const Event &) const = default;
};

struct LabelTrack {
  std::string clip_id;
  std::vector<Event> events;  // sorted by onset, non-overlapping

  bool operator==(const LabelTrack &) const = default;
};

// Sorts by onset and checks offset > onset and pairwise non-overlap
// (touching events are legal). Throws Error.
void normalize_track(LabelTrack *track);

using FrameLabels = std::vector<FrameSymbol>;

}  // namespace orna

#endif  // ORNA_CORE_TYPES_H_
