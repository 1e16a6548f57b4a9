// src/model/decode.cc

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

#include "orna/model/decode.h"

#include <algorithm>
#include <array>

#include "orna/model/loss.h"

namespace orna::model {

FrameLabels argmax_labels(const PosteriorGram &pg) {
  FrameLabels out(pg.frames());
  for (int t = 0; t < pg.frames(); ++t) {
    Eigen::Index best = 0;
    pg.probs.col(t).maxCoeff(&best);
    out[t] = symbol_for_class(static_cast<int>(best), pg.num_classes());
  }
  return out;
}

FrameLabels median_smooth(const FrameLabels &labels, int width) {
  if (width < 1 || width % 2 == 0)
    throw Error(ErrorKind::kInvalidArgument, "median width must be a positive odd number");
  const int n = static_cast<int>(labels.size());
  const int half = width / 2;
  FrameLabels out(labels);
  for (int t = 0; t < n; ++t) {
    std::array<int, 8> count{};
    for (int k = t - half; k <= t + half; ++k) ++count[static_cast<int>(labels[std::clamp(k, 0, n - 1)])];
    for (int c = 0; c < 8; ++c) {
      if (2 * count[c] > width) {
        out[t] = static_cast<FrameSymbol>(c);
        break;
      }
    }
  }
  return out;
}

DecodedTrack decode_events(const PosteriorGram &pg, const DecodeConfig &cfg, const std::string &clip_id) {
  DecodedTrack out;
  out.track.clip_id = clip_id;
  const FrameLabels y = median_smooth(argmax_labels(pg), cfg.median_width);
  const int n = static_cast<int>(y.size());
  const double hop = pg.frame_hop_seconds;
  int a = 0;
  while (a < n) {
    int b = a + 1;
    while (b < n && y[b] == y[a]) ++b;
    if (is_ornament(y[a]) && b - a >= cfg.min_event_frames) {
      const int row = target_index(y[a], pg.num_classes());
      const double onset = std::max(0.0, pg.frame_origin_seconds + a * hop - 0.5 * hop);
      const double offset = pg.frame_origin_seconds + (b - 1) * hop + 0.5 * hop;
      out.track.events.push_back({onset, offset, to_ornament(y[a])});
      out.confidence.push_back(pg.probs.row(row).segment(a, b - a).cast<double>().mean());
    }
    a = b;
  }
  return out;
}

}  // namespace orna::model
