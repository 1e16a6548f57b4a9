// src/dsp/fft_plan.h

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

#ifndef ORNA_DSP_FFT_PLAN_H_
#define ORNA_DSP_FFT_PLAN_H_

#include <mutex>

#include <fftw3.h>

namespace orna::dsp::detail {

// FFTW planning is not thread-safe; every plan creation and destruction
// goes through this lock.
std::mutex &planner_mutex();

// Owns an r2c/c2r plan pair over one real buffer of length n and one
// complex buffer of length n/2 + 1.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  double *in() { return in_; }
  fftw_complex *out() { return out_; }
  int size() const { return n_; }
  void forward();
  void inverse();  // unnormalised

 private:
  int n_;
  double *in_;
  fftw_complex *out_;
  fftw_plan forward_;
  fftw_plan inverse_;
};

}  // namespace orna::dsp::detail

#endif  // ORNA_DSP_FFT_PLAN_H_
