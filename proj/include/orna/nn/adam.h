// include/orna/nn/adam.h

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

#ifndef ORNA_NN_ADAM_H_
#define ORNA_NN_ADAM_H_

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "orna/nn/kernels.h"

namespace orna::nn {

// A named parameter tensor with its gradient buffer.
template <typename S>
struct ParamRef {
  std::string name;
  Tensor2<S> *value;
  Tensor2<S> *grad;
};

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

template <typename S>
struct AdamState {
  AdamConfig config;
  long step = 0;
  std::vector<Tensor2<S>> m;
  std::vector<Tensor2<S>> v;
};

// Throws Error(kNonFiniteGradient) naming the offending tensor.
template <typename S>
void check_finite(std::span<const ParamRef<S>> params) {
  for (const auto &p : params)
    if (!p.grad->allFinite())
      throw Error(ErrorKind::kNonFiniteGradient, "non-finite gradient in " + p.name);
}

// One bias-corrected Adam update. Moments are created on first use and must
// keep matching the parameter list afterwards. Parameters are untouched if
// any gradient is non-finite.
template <typename S>
void adam_step(std::span<const ParamRef<S>> params, AdamState<S> *state) {
  check_finite(params);
  if (state->m.empty()) {
    for (const auto &p : params) {
      state->m.push_back(Tensor2<S>::Zero(p.value->rows(), p.value->cols()));
      state->v.push_back(Tensor2<S>::Zero(p.value->rows(), p.value->cols()));
    }
  }
  require(state->m.size() == params.size(), "adam_step: parameter list changed");
  const AdamConfig &c = state->config;
  ++state->step;
  const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state->step));
  const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state->step));
  const S b1 = S(c.beta1), b2 = S(c.beta2);
  const S step_size = S(c.learning_rate / bc1);
  const S inv_bc2 = S(1.0 / bc2);
  const S eps = S(c.epsilon);
  for (size_t i = 0; i < params.size(); ++i) {
    const auto &g = *params[i].grad;
    require(g.rows() == state->m[i].rows() && g.cols() == state->m[i].cols(),
            "adam_step: gradient shape mismatch");
    state->m[i] = b1 * state->m[i] + (S(1) - b1) * g;
    state->v[i] = b2 * state->v[i] + (S(1) - b2) * g.cwiseProduct(g);
    params[i].value->array() -=
        step_size * state->m[i].array() / ((state->v[i].array() * inv_bc2).sqrt() + eps);
  }
}

}  // namespace orna::nn

#endif  // ORNA_NN_ADAM_H_
