// src/dsp/stft.cc

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

#include "orna/dsp/stft.h"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <fftw3.h>

#include "orna/core/types.h"
#include "fft_plan.h"

namespace orna::dsp {

StftConfig StftConfig::from_milliseconds(int sample_rate, double window_ms, double hop_ms,
                                         int fft_size) {
  StftConfig c;
  c.sample_rate = sample_rate;
  c.fft_size = fft_size;
  c.window_length = static_cast<int>(std::lround(window_ms * 1e-3 * sample_rate));
  c.hop = static_cast<int>(std::lround(hop_ms * 1e-3 * sample_rate));
  c.check();
  return c;
}

void StftConfig::check() const {
  if (sample_rate <= 0 || fft_size <= 0 || window_length <= 0)
    throw Error(ErrorKind::kInvalidArgument, "stft: sizes must be positive");
  if (window_length > fft_size)
    throw Error(ErrorKind::kInvalidArgument, "stft: window_length exceeds fft_size");
  if (hop < 1) throw Error(ErrorKind::kInvalidArgument, "stft: hop must be >= 1");
}

int StftConfig::frame_count(size_t n) const {
  if (n < static_cast<size_t>(window_length)) return 1;
  return static_cast<int>((n - window_length) / hop) + 1;
}

std::vector<double> hann_window(int length) {
  std::vector<double> w(length);
  for (int i = 0; i < length; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / length);
  return w;
}

namespace detail {

std::mutex &planner_mutex() {
  static std::mutex m;
  return m;
}

RealFft::RealFft(int n) : n_(n) {
  in_ = fftw_alloc_real(n);
  out_ = fftw_alloc_complex(n / 2 + 1);
  std::lock_guard<std::mutex> lock(planner_mutex());
  forward_ = fftw_plan_dft_r2c_1d(n, in_, out_, FFTW_ESTIMATE);
  inverse_ = fftw_plan_dft_c2r_1d(n, out_, in_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(inverse_);
  fftw_free(in_);
  fftw_free(out_);
}

void RealFft::forward() { fftw_execute(forward_); }
void RealFft::inverse() { fftw_execute(inverse_); }

}  // namespace detail

namespace {

template <typename Fn>
void visit_spectra(std::span<const float> signal, const StftConfig &cfg, Fn &&fn) {
  if (signal.empty()) throw Error(ErrorKind::kEmptySignal, "stft: empty signal");
  cfg.check();
  const int frames = cfg.frame_count(signal.size());
  const std::vector<double> window = hann_window(cfg.window_length);
  detail::RealFft fft(cfg.fft_size);
  double *in = fft.in();
  for (int t = 0; t < frames; ++t) {
    const size_t start = static_cast<size_t>(t) * cfg.hop;
    for (int i = 0; i < cfg.fft_size; ++i) in[i] = 0.0;
    for (int i = 0; i < cfg.window_length; ++i) {
      const size_t s = start + i;
      if (s >= signal.size()) break;
      in[i] = window[i] * signal[s];
    }
    fft.forward();
    fn(t, fft.out());
  }
}

}  // namespace

Eigen::MatrixXcd stft(std::span<const float> signal, const StftConfig &cfg) {
  Eigen::MatrixXcd out(cfg.bins(), cfg.frame_count(signal.size()));
  visit_spectra(signal, cfg, [&](int t, const fftw_complex *spec) {
    for (int k = 0; k < cfg.bins(); ++k) out(k, t) = {spec[k][0], spec[k][1]};
  });
  return out;
}

void for_each_power_frame(std::span<const float> signal, const StftConfig &cfg,
                          const std::function<void(int, std::span<const double>)> &fn) {
  std::vector<double> power(cfg.bins());
  visit_spectra(signal, cfg, [&](int t, const fftw_complex *spec) {
    for (int k = 0; k < cfg.bins(); ++k)
      power[k] = spec[k][0] * spec[k][0] + spec[k][1] * spec[k][1];
    fn(t, power);
  });
}

}  // namespace orna::dsp
