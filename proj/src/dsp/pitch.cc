// src/dsp/pitch.cc

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

#include "orna/dsp/pitch.h"

#include <algorithm>
#include <cmath>

#include "fft_plan.h"
#include "orna/core/types.h"

namespace orna::dsp {

PitchTrack pitch_track(std::span<const float> signal, const StftConfig &frames,
                       const PitchConfig &cfg) {
  PitchTrack out;
  out.frame_hop_seconds = frames.hop_seconds();
  out.frame_origin_seconds = frames.origin_seconds();
  if (signal.empty()) return out;

  const int sr = frames.sample_rate;
  const int w = frames.window_length;
  const int min_lag = std::max(2, static_cast<int>(std::floor(sr / cfg.max_hz)));
  const int max_lag = static_cast<int>(std::ceil(sr / cfg.min_hz));
  const int span_len = w + max_lag + 1;
  int n_fft = 1;
  while (n_fft < span_len + w) n_fft <<= 1;

  const int count = frames.frame_count(signal.size());
  out.f0_hz.assign(count, 0.0);

  detail::RealFft seg_fft(n_fft);
  detail::RealFft win_fft(n_fft);
  std::vector<double> seg(span_len), prefix(span_len + 1), diff(max_lag + 2), cmnd(max_lag + 2);

  for (int t = 0; t < count; ++t) {
    const size_t start = static_cast<size_t>(t) * frames.hop;
    for (int i = 0; i < span_len; ++i) {
      const size_t s = start + i;
      seg[i] = s < signal.size() ? signal[s] : 0.0;
    }
    double energy = 0.0;
    for (int i = 0; i < w; ++i) energy += seg[i] * seg[i];
    if (std::sqrt(energy / w) < cfg.silence_rms) continue;

    // r(tau) = sum_{j<w} x[j] x[j+tau] as a cross-correlation via FFT.
    double *a = seg_fft.in();
    double *b = win_fft.in();
    std::fill(a, a + n_fft, 0.0);
    std::fill(b, b + n_fft, 0.0);
    std::copy(seg.begin(), seg.end(), a);
    std::copy(seg.begin(), seg.begin() + w, b);
    seg_fft.forward();
    win_fft.forward();
    fftw_complex *fa = seg_fft.out();
    const fftw_complex *fb = win_fft.out();
    for (int k = 0; k <= n_fft / 2; ++k) {
      const double re = fa[k][0] * fb[k][0] + fa[k][1] * fb[k][1];
      const double im = fa[k][1] * fb[k][0] - fa[k][0] * fb[k][1];
      fa[k][0] = re;
      fa[k][1] = im;
    }
    seg_fft.inverse();
    const double *corr = seg_fft.in();

    prefix[0] = 0.0;
    for (int i = 0; i < span_len; ++i) prefix[i + 1] = prefix[i] + seg[i] * seg[i];
    double running = 0.0;
    cmnd[0] = 1.0;
    for (int tau = 1; tau <= max_lag; ++tau) {
      const double r = corr[tau] / n_fft;
      const double e_tau = prefix[tau + w] - prefix[tau];
      diff[tau] = std::max(0.0, energy + e_tau - 2.0 * r);
      running += diff[tau];
      cmnd[tau] = running > 0.0 ? diff[tau] * tau / running : 1.0;
    }

    int best = -1;
    for (int tau = min_lag; tau <= max_lag; ++tau) {
      if (cmnd[tau] < cfg.threshold) {
        while (tau + 1 <= max_lag && cmnd[tau + 1] < cmnd[tau]) ++tau;
        best = tau;
        break;
      }
    }
    if (best < 0) continue;
    double lag = best;
    if (best > 1 && best < max_lag) {
      const double y0 = cmnd[best - 1], y1 = cmnd[best], y2 = cmnd[best + 1];
      const double denom = y0 - 2.0 * y1 + y2;
      if (denom > 0.0) lag += std::clamp(0.5 * (y0 - y2) / denom, -0.5, 0.5);
    }
    const double f0 = sr / lag;
    if (f0 >= cfg.min_hz && f0 <= cfg.max_hz) out.f0_hz[t] = f0;
  }
  return out;
}

std::vector<double> median_filter(std::span<const double> x, int width) {
  if (width < 1 || width % 2 == 0)
    throw Error(ErrorKind::kInvalidArgument, "median_filter: width must be odd");
  const int n = static_cast<int>(x.size());
  const int half = width / 2;
  std::vector<double> out(n), buf(width);
  for (int i = 0; i < n; ++i) {
    for (int j = -half; j <= half; ++j) buf[j + half] = x[std::clamp(i + j, 0, n - 1)];
    std::nth_element(buf.begin(), buf.begin() + half, buf.end());
    out[i] = buf[half];
  }
  return out;
}

}  // namespace orna::dsp
