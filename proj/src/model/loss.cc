// src/model/loss.cc

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

#include "orna/model/loss.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orna::model {

int target_index(FrameSymbol s, int num_classes) {
  if (s == FrameSymbol::kDontCare) return -1;
  if (num_classes == 6) return s == FrameSymbol::kBackground ? -1 : static_cast<int>(s) - 1;
  return static_cast<int>(s);
}

FrameSymbol symbol_for_class(int index, int num_classes) {
  if (num_classes == 6) return static_cast<FrameSymbol>(index + 1);
  return static_cast<FrameSymbol>(index);
}

template <typename S>
LossResult<S> masked_cross_entropy(const nn::Tensor2<S> &probs, const FrameLabels &labels) {
  nn::require(static_cast<size_t>(probs.cols()) == labels.size(),
              "masked_cross_entropy: label count does not match frames");
  const int classes = static_cast<int>(probs.rows());
  LossResult<S> r;
  for (FrameSymbol s : labels)
    if (target_index(s, classes) >= 0) ++r.valid_frames;
  if (r.valid_frames == 0) throw Error(ErrorKind::kNoValidFrames, "chunk has no valid frames");

  r.dlogits = nn::Tensor2<S>::Zero(probs.rows(), probs.cols());
  const double inv_n = 1.0 / r.valid_frames;
  double total = 0.0;
  for (Eigen::Index t = 0; t < probs.cols(); ++t) {
    const int y = target_index(labels[t], classes);
    if (y < 0) continue;
    const double p = std::max(static_cast<double>(probs(y, t)), std::numeric_limits<double>::min());
    total -= std::log(p);
    r.dlogits.col(t) = probs.col(t) * S(inv_n);
    r.dlogits(y, t) -= S(inv_n);
  }
  r.loss = total * inv_n;
  return r;
}

template LossResult<float> masked_cross_entropy(const nn::Tensor2<float> &, const FrameLabels &);
template LossResult<double> masked_cross_entropy(const nn::Tensor2<double> &, const FrameLabels &);

}  // namespace orna::model
