// include/orna/model/decode.h

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

#ifndef ORNA_MODEL_DECODE_H_
#define ORNA_MODEL_DECODE_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orna/core/types.h"

namespace orna::model {

// C x T per-frame class posteriors on a uniform frame grid.
struct PosteriorGram {
  Eigen::MatrixXf probs;
  double frame_hop_seconds = 772.0 / 44100.0;
  double frame_origin_seconds = 772.0 / 44100.0;  // centre of frame 0

  int num_classes() const { return static_cast<int>(probs.rows()); }
  int frames() const { return static_cast<int>(probs.cols()); }
};

struct DecodeConfig {
  int median_width = 5;      // odd; 1 disables smoothing
  int min_event_frames = 3;  // shorter runs are dropped
};

struct DecodedTrack {
  LabelTrack track;
  std::vector<double> confidence;  // mean posterior of each event's class over its run
};

// Per-frame argmax as frame symbols (never don't-care).
FrameLabels argmax_labels(const PosteriorGram &pg);

// Median filter on categorical labels: each frame takes the class holding a
// strict majority of its window (edges replicated) and keeps its own label
// when no class does. For two classes this is the binary median.
FrameLabels median_smooth(const FrameLabels &labels, int width);

// argmax, median smoothing, run merging, short-run removal; Background runs
// emit nothing. A run over frames [a, b) spans from half a hop before the
// centre of frame a to half a hop after the centre of frame b-1.
DecodedTrack decode_events(const PosteriorGram &pg, const DecodeConfig &cfg = {},
                           const std::string &clip_id = "");

}  // namespace orna::model

#endif  // ORNA_MODEL_DECODE_H_
