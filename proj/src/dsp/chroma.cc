// src/dsp/chroma.cc

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

#include "orna/dsp/chroma.h"

#include <cmath>
#include <vector>

#include "orna/core/types.h"

namespace orna::dsp {

void ChromaConfig::check() const {
  if (bins <= 0 || bins % 12 != 0)
    throw Error(ErrorKind::kInvalidArgument, "chroma: bins must be a positive multiple of 12");
  if (!(min_freq_hz > 0.0 && max_freq_hz > min_freq_hz))
    throw Error(ErrorKind::kInvalidArgument, "chroma: need 0 < min_freq < max_freq");
  if (!(tuning_a4_hz > 0.0)) throw Error(ErrorKind::kInvalidArgument, "chroma: bad tuning");
}

double chroma_position(double freq_hz, const ChromaConfig &cfg) {
  const double c_ref = cfg.tuning_a4_hz * std::pow(2.0, -9.0 / 12.0);
  double pos = cfg.bins * std::log2(freq_hz / c_ref);
  pos = std::fmod(pos, static_cast<double>(cfg.bins));
  if (pos < 0) pos += cfg.bins;
  return pos;
}

FeatureMatrix chromagram(std::span<const float> signal, const StftConfig &stft_cfg,
                         const ChromaConfig &chroma_cfg) {
  chroma_cfg.check();
  const int frames = stft_cfg.frame_count(signal.size());
  const int num_bins = stft_cfg.bins();
  const double bin_hz = static_cast<double>(stft_cfg.sample_rate) / stft_cfg.fft_size;
  const int k_lo = std::max(1, static_cast<int>(std::ceil(chroma_cfg.min_freq_hz / bin_hz)));
  const int k_hi =
      std::min(num_bins - 2, static_cast<int>(std::floor(chroma_cfg.max_freq_hz / bin_hz)));

  FeatureMatrix fm;
  fm.values = Eigen::MatrixXf::Zero(chroma_cfg.bins, frames);
  fm.frame_hop_seconds = stft_cfg.hop_seconds();
  fm.frame_origin_seconds = stft_cfg.origin_seconds();

  std::vector<double> log_power(num_bins);
  std::vector<int> peak_bin(num_bins, -1);  // chroma bin for each peak, -1 = not yet computed
  std::vector<double> acc(chroma_cfg.bins);

  for_each_power_frame(signal, stft_cfg, [&](int t, std::span<const double> power) {
    for (int k = 0; k < num_bins; ++k) log_power[k] = std::log(power[k] + 1e-30);
    std::fill(peak_bin.begin(), peak_bin.end(), -1);
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int k = k_lo; k <= k_hi; ++k) {
      if (power[k] <= 0.0) continue;
      int j = k;
      while (true) {
        const double left = j > 1 ? power[j - 1] : -1.0;
        const double right = j + 1 < num_bins - 1 ? power[j + 1] : -1.0;
        if (right > power[j] && right >= left) {
          ++j;
        } else if (left > power[j]) {
          --j;
        } else {
          break;
        }
      }
      if (peak_bin[j] < 0) {
        double delta = 0.0;
        if (j > 0 && j + 1 < num_bins) {
          const double a = log_power[j - 1], b = log_power[j], c = log_power[j + 1];
          const double denom = a - 2.0 * b + c;
          if (denom < 0.0) delta = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
        }
        const double freq = (j + delta) * bin_hz;
        const int idx = static_cast<int>(std::lround(chroma_position(freq, chroma_cfg)));
        peak_bin[j] = idx % chroma_cfg.bins;
      }
      acc[peak_bin[j]] += power[k];
    }
    double peak = 0.0;
    for (double v : acc) peak = std::max(peak, v);
    if (peak > 0.0) {
      for (int c = 0; c < chroma_cfg.bins; ++c) fm.values(c, t) = static_cast<float>(acc[c] / peak);
    }
  });
  return fm;
}

}  // namespace orna::dsp
