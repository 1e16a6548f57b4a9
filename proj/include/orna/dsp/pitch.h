// include/orna/dsp/pitch.h

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

#ifndef ORNA_DSP_PITCH_H_
#define ORNA_DSP_PITCH_H_

#include <span>
#include <vector>

#include "orna/dsp/stft.h"

namespace orna::dsp {

struct PitchConfig {
  double min_hz = 50.0;
  double max_hz = 1500.0;
  double threshold = 0.15;    // cumulative-mean-normalised difference dip
  double silence_rms = 1e-3;  // frames quieter than this are unvoiced
};

struct PitchTrack {
  std::vector<double> f0_hz;  // 0 = unvoiced
  double frame_hop_seconds = 0.0;
  double frame_origin_seconds = 0.0;
};

// YIN-style estimator on the STFT frame grid, so the track has as many
// frames as the chromagram of the same signal. Each frame analyses
// window_length samples plus the longest lag.
PitchTrack pitch_track(std::span<const float> signal, const StftConfig &frames,
                       const PitchConfig &cfg = {});

// Running median of width `width` (odd), edges replicated.
std::vector<double> median_filter(std::span<const double> x, int width);

}  // namespace orna::dsp

#endif  // ORNA_DSP_PITCH_H_
