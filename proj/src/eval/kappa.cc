// src/eval/kappa.cc

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

#include "orna/eval/kappa.h"

#include <array>

namespace orna::eval {

double cohen_kappa(const FrameLabels &a, const FrameLabels &b) {
  if (a.size() != b.size()) throw Error(ErrorKind::kShapeMismatch, "kappa: label sequences differ in length");
  constexpr int kSymbols = 8;
  std::array<long, kSymbols> ma{}, mb{};
  long n = 0, agree = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == FrameSymbol::kDontCare || b[i] == FrameSymbol::kDontCare) continue;
    ++ma[static_cast<int>(a[i])];
    ++mb[static_cast<int>(b[i])];
    if (a[i] == b[i]) ++agree;
    ++n;
  }
  if (n == 0) throw Error(ErrorKind::kNoValidFrames, "kappa: no frame labelled by both annotators");
  const double po = static_cast<double>(agree) / n;
  double pe = 0.0;
  for (int c = 0; c < kSymbols; ++c) pe += (static_cast<double>(ma[c]) / n) * (static_cast<double>(mb[c]) / n);
  if (pe >= 1.0) return po >= 1.0 ? 1.0 : 0.0;
  return (po - pe) / (1.0 - pe);
}

}  // namespace orna::eval
