// include/orna/eval/kappa.h

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

#ifndef ORNA_EVAL_KAPPA_H_
#define ORNA_EVAL_KAPPA_H_

#include "orna/core/types.h"

namespace orna::eval {

// Cohen's kappa between two frame labelings over the eight frame symbols;
// frames where either side is don't-care are skipped. With chance
// agreement 1 the result is 1 for perfect observed agreement, else 0.
// Throws Error(kShapeMismatch) on unequal lengths and Error(kNoValidFrames)
// when no frame is scored.
double cohen_kappa(const FrameLabels &a, const FrameLabels &b);

}  // namespace orna::eval

#endif  // ORNA_EVAL_KAPPA_H_
