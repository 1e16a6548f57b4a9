// include/orna/model/loss.h

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

#ifndef ORNA_MODEL_LOSS_H_
#define ORNA_MODEL_LOSS_H_

#include "orna/core/types.h"
#include "orna/nn/kernels.h"

namespace orna::model {

// Model class index of a frame symbol, or -1 when the frame carries no
// target (don't-care, or Background in the 6-class layout).
int target_index(FrameSymbol s, int num_classes);
// Inverse of target_index for predicted classes.
FrameSymbol symbol_for_class(int index, int num_classes);

template <typename S>
struct LossResult {
  double loss = 0.0;
  int valid_frames = 0;
  nn::Tensor2<S> dlogits;  // gradient w.r.t. the pre-softmax logits
};

// Mean negative log-likelihood over frames that carry a target; gradient
// (p - onehot) / N at those frames and exactly zero elsewhere. Throws
// Error(kNoValidFrames) when no frame carries a target.
template <typename S>
LossResult<S> masked_cross_entropy(const nn::Tensor2<S> &probs, const FrameLabels &labels);

}  // namespace orna::model

#endif  // ORNA_MODEL_LOSS_H_
