// include/orna/dsp/stft.h

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

#ifndef ORNA_DSP_STFT_H_
#define ORNA_DSP_STFT_H_

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace orna::dsp {

struct StftConfig {
  int sample_rate = 44100;
  int fft_size = 4096;
  int window_length = 1544;  // round(0.035 * 44100)
  int hop = 772;             // round(0.0175 * 44100)

  // Window and hop derived from millisecond durations by rounding.
  static StftConfig from_milliseconds(int sample_rate, double window_ms, double hop_ms,
                                      int fft_size = 4096);
  void check() const;
  int bins() const { return fft_size / 2 + 1; }
  double hop_seconds() const { return static_cast<double>(hop) / sample_rate; }
  // Time of the centre of frame 0 relative to the first sample.
  double origin_seconds() const { return 0.5 * window_length / sample_rate; }
  int frame_count(size_t num_samples) const;
};

// Periodic Hann window of the given length.
std::vector<double> hann_window(int length);

// Complex spectrum, (fft_size/2 + 1) x T. Frame t covers samples
// [t*hop, t*hop + window_length), Hann-weighted and zero-padded to fft_size.
// Throws Error(kEmptySignal) on empty input.
Eigen::MatrixXcd stft(std::span<const float> signal, const StftConfig &cfg);

// Visits the power spectrum |X|^2 of each frame in order without materialising
// the full matrix.
void for_each_power_frame(std::span<const float> signal, const StftConfig &cfg,
                          const std::function<void(int frame, std::span<const double> power)> &fn);

}  // namespace orna::dsp

#endif  // ORNA_DSP_STFT_H_
