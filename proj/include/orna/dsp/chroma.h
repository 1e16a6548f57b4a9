// include/orna/dsp/chroma.h

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

#ifndef ORNA_DSP_CHROMA_H_
#define ORNA_DSP_CHROMA_H_

#include <span>
#include <string>

#include <Eigen/Dense>

#include "orna/dsp/stft.h"

namespace orna::dsp {

struct ChromaConfig {
  int bins = 120;  // multiple of 12; 12 = semitone resolution
  double tuning_a4_hz = 440.0;
  double min_freq_hz = 65.0;
  double max_freq_hz = 5000.0;

  void check() const;
};

// F x T chroma matrix with frame timing.
struct FeatureMatrix {
  Eigen::MatrixXf values;
  double frame_hop_seconds = 0.0;
  double frame_origin_seconds = 0.0;  // centre of frame 0
  std::string clip_id;

  int bins() const { return static_cast<int>(values.rows()); }
  int frames() const { return static_cast<int>(values.cols()); }
};

// Pitch-class position of a frequency on an F-bin octave grid; bin 0 is C
// under the configured A4 tuning. Fractional, in [0, F).
double chroma_position(double freq_hz, const ChromaConfig &cfg);

// Folds STFT power onto the chroma grid. Each bin inside
// [min_freq, max_freq] contributes its power to the chroma bin nearest the
// pitch class of the spectral peak it belongs to (the bin's hill-climb
// target, frequency refined by parabolic interpolation of log power). Each
// frame is scaled so its maximum is 1; silent frames stay zero.
FeatureMatrix chromagram(std::span<const float> signal, const StftConfig &stft_cfg,
                         const ChromaConfig &chroma_cfg);

}  // namespace orna::dsp

#endif  // ORNA_DSP_CHROMA_H_
