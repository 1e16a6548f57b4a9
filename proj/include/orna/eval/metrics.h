// include/orna/eval/metrics.h

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

#ifndef ORNA_EVAL_METRICS_H_
#define ORNA_EVAL_METRICS_H_

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "orna/core/types.h"

namespace orna::eval {

struct ClassCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  bool present() const { return tp + fp + fn > 0; }
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// P = tp/(tp+fp), R = tp/(tp+fn), F1 = 2PR/(P+R); each 0 when undefined.
Prf score(const ClassCounts &c);

// Per-class counts over the six ornaments with derived scores. The macro
// average runs over classes present in either prediction or truth.
struct MetricSet {
  std::array<ClassCounts, kNumOrnaments> counts{};
  std::array<Prf, kNumOrnaments> per_class{};
  Prf macro;
  int macro_classes = 0;
  // Frame metrics only: fraction of scored frames with pred == truth,
  // Background included.
  double accuracy = 0.0;
  long scored = 0;
  long correct = 0;

  void finalize();
};

// Frame-wise counting; truth don't-care frames are skipped and Background
// only ever counts as a negative. Accumulates into `m` (call finalize after).
void add_frame_counts(const FrameLabels &pred, const FrameLabels &truth, MetricSet *m);
MetricSet frame_metrics(std::span<const FrameLabels> pred, std::span<const FrameLabels> truth);

struct CollarConfig {
  double collar = 0.2;
  bool onset_only = false;
};

// One-to-one matching of same-class events whose onsets (and offsets unless
// onset_only) differ by at most the collar. The result is a maximum
// matching; among those, truths in onset order prefer the nearest-onset
// prediction. Returns (pred index, truth index) in truth onset order.
std::vector<std::pair<int, int>> match_events(std::span<const Event> pred, std::span<const Event> truth,
                                              const CollarConfig &cfg);

void add_event_counts(const LabelTrack &pred, const LabelTrack &truth, const CollarConfig &cfg, MetricSet *m);
MetricSet event_metrics(const LabelTrack &pred, const LabelTrack &truth, const CollarConfig &cfg = {});

// Rows truth, columns prediction, over frames where both are ornaments.
using Confusion = std::array<std::array<long, kNumOrnaments>, kNumOrnaments>;
void add_confusion(const FrameLabels &pred, const FrameLabels &truth, Confusion *c);
Confusion confusion_matrix(const FrameLabels &pred, const FrameLabels &truth);

}  // namespace orna::eval

#endif  // ORNA_EVAL_METRICS_H_
