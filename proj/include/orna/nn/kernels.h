// include/orna/nn/kernels.h

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

#ifndef ORNA_NN_KERNELS_H_
#define ORNA_NN_KERNELS_H_

// Layer kernels with hand-written backward passes. Tensors are
// channels x frames, column-major, so one frame's channel vector is
// contiguous. Everything is templated on the scalar: float for training,
// double for gradient checks.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orna/core/types.h"
#include "orna/nn/random.h"

namespace orna::nn {

template <typename S>
using Tensor2 = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

inline void require(bool ok, const char *what) {
  if (!ok) throw Error(ErrorKind::kShapeMismatch, what);
}

// ---------------------------------------------------------------------------
// Periodic padding along the channel (chroma) axis: the last p rows are
// prepended and the first p rows appended.

template <typename S>
Tensor2<S> periodic_pad(const Tensor2<S> &x, int p) {
  if (p < 0 || p >= x.rows())
    throw Error(ErrorKind::kInvalidArgument, "periodic_pad: need 0 <= p < rows");
  const Eigen::Index c = x.rows();
  Tensor2<S> y(c + 2 * p, x.cols());
  y.topRows(p) = x.bottomRows(p);
  y.middleRows(p, c) = x;
  y.bottomRows(p) = x.topRows(p);
  return y;
}

template <typename S>
Tensor2<S> periodic_pad_backward(const Tensor2<S> &dy, int p) {
  const Eigen::Index c = dy.rows() - 2 * p;
  Tensor2<S> dx = dy.middleRows(p, c);
  dx.bottomRows(p) += dy.topRows(p);
  dx.topRows(p) += dy.bottomRows(p);
  return dx;
}

// ---------------------------------------------------------------------------
// Dilated 1-D convolution over frames with zero "same" padding:
//   out[f, t] = b[f] + sum_{c,j} W[f,c,j] * x[c, t + r*(j - (d-1)/2)].

template <typename S>
struct ConvParams {
  // out_channels x (kernel * in_channels); column j*in_channels + c holds tap j of channel c.
  Tensor2<S> weight;
  Tensor2<S> bias;  // out_channels x 1
  int in_channels = 0;
  int kernel = 5;
  int dilation = 1;

  ConvParams() = default;
  ConvParams(int out_channels, int in_ch, int k, int r)
      : weight(Tensor2<S>::Zero(out_channels, k * in_ch)),
        bias(Tensor2<S>::Zero(out_channels, 1)),
        in_channels(in_ch),
        kernel(k),
        dilation(r) {
    if (k % 2 == 0) throw Error(ErrorKind::kInvalidArgument, "conv kernel size must be odd");
    if (r < 1) throw Error(ErrorKind::kInvalidArgument, "dilation rate must be >= 1");
  }

  int out_channels() const { return static_cast<int>(weight.rows()); }
  S &w(int f, int c, int j) { return weight(f, j * in_channels + c); }
  S w(int f, int c, int j) const { return weight(f, j * in_channels + c); }
};

// Stacks the kernel taps of every frame: (kernel*C) x T.
template <typename S>
Tensor2<S> im2col(const Tensor2<S> &x, int kernel, int dilation) {
  const Eigen::Index c = x.rows(), t = x.cols();
  const int half = (kernel - 1) / 2;
  Tensor2<S> cols = Tensor2<S>::Zero(kernel * c, t);
  for (int j = 0; j < kernel; ++j) {
    const Eigen::Index s = static_cast<Eigen::Index>(dilation) * (j - half);
    const Eigen::Index n = t - std::abs(s);
    if (n <= 0) continue;
    cols.block(j * c, std::max<Eigen::Index>(0, -s), c, n) =
        x.block(0, std::max<Eigen::Index>(0, s), c, n);
  }
  return cols;
}

template <typename S>
void col2im_add(const Tensor2<S> &dcols, int kernel, int dilation, Tensor2<S> *dx) {
  const Eigen::Index c = dx->rows(), t = dx->cols();
  const int half = (kernel - 1) / 2;
  for (int j = 0; j < kernel; ++j) {
    const Eigen::Index s = static_cast<Eigen::Index>(dilation) * (j - half);
    const Eigen::Index n = t - std::abs(s);
    if (n <= 0) continue;
    dx->block(0, std::max<Eigen::Index>(0, s), c, n) +=
        dcols.block(j * c, std::max<Eigen::Index>(0, -s), c, n);
  }
}

template <typename S>
Tensor2<S> dilated_conv1d(const Tensor2<S> &x, const ConvParams<S> &p, Tensor2<S> *cols_out = nullptr) {
  require(x.rows() == p.in_channels, "dilated_conv1d: input channels do not match the filters");
  Tensor2<S> cols = im2col(x, p.kernel, p.dilation);
  Tensor2<S> y = p.weight * cols;
  y.colwise() += p.bias.col(0);
  if (cols_out) *cols_out = std::move(cols);
  return y;
}

// Accumulates parameter gradients into `grads` (shaped like `p`) and
// returns dL/dx when `want_dx`.
template <typename S>
Tensor2<S> dilated_conv1d_backward(const Tensor2<S> &cols, const ConvParams<S> &p,
                                   const Tensor2<S> &dy, ConvParams<S> *grads, bool want_dx = true) {
  if (grads) {
    grads->weight.noalias() += dy * cols.transpose();
    grads->bias.col(0) += dy.rowwise().sum();
  }
  if (!want_dx) return {};
  Tensor2<S> dcols = p.weight.transpose() * dy;
  Tensor2<S> dx = Tensor2<S>::Zero(p.in_channels, dy.cols());
  col2im_add(dcols, p.kernel, p.dilation, &dx);
  return dx;
}

// ---------------------------------------------------------------------------
// Temporal max-pool (pool 2) and nearest-neighbour upsampling (factor 2).

struct PoolIndex {
  std::vector<std::uint8_t> second;  // 1 where the max came from frame 2t+1
};

template <typename S>
Tensor2<S> temporal_maxpool(const Tensor2<S> &x, PoolIndex *index = nullptr) {
  if (x.cols() % 2 != 0) throw Error(ErrorKind::kOddLength, "temporal_maxpool: odd frame count");
  const Eigen::Index c = x.rows(), t = x.cols() / 2;
  Tensor2<S> y(c, t);
  if (index) index->second.assign(static_cast<size_t>(c * t), 0);
  for (Eigen::Index k = 0; k < t; ++k) {
    for (Eigen::Index i = 0; i < c; ++i) {
      const S a = x(i, 2 * k), b = x(i, 2 * k + 1);
      const bool pick_b = b > a;
      y(i, k) = pick_b ? b : a;
      if (index && pick_b) index->second[k * c + i] = 1;
    }
  }
  return y;
}

template <typename S>
Tensor2<S> temporal_maxpool_backward(const Tensor2<S> &dy, const PoolIndex &index) {
  const Eigen::Index c = dy.rows(), t = dy.cols();
  Tensor2<S> dx = Tensor2<S>::Zero(c, 2 * t);
  for (Eigen::Index k = 0; k < t; ++k)
    for (Eigen::Index i = 0; i < c; ++i) dx(i, 2 * k + index.second[k * c + i]) = dy(i, k);
  return dx;
}

template <typename S>
Tensor2<S> temporal_upsample(const Tensor2<S> &x) {
  Tensor2<S> y(x.rows(), 2 * x.cols());
  for (Eigen::Index k = 0; k < x.cols(); ++k) {
    y.col(2 * k) = x.col(k);
    y.col(2 * k + 1) = x.col(k);
  }
  return y;
}

template <typename S>
Tensor2<S> temporal_upsample_backward(const Tensor2<S> &dy) {
  if (dy.cols() % 2 != 0) throw Error(ErrorKind::kOddLength, "upsample backward: odd frame count");
  Tensor2<S> dx(dy.rows(), dy.cols() / 2);
  for (Eigen::Index k = 0; k < dx.cols(); ++k) dx.col(k) = dy.col(2 * k) + dy.col(2 * k + 1);
  return dx;
}

// ---------------------------------------------------------------------------
// Activations.

template <typename S>
void relu_inplace(Tensor2<S> *x) {
  *x = x->cwiseMax(S(0));
}

// dy masked by the sign of the relu output.
template <typename S>
Tensor2<S> relu_backward(const Tensor2<S> &y, const Tensor2<S> &dy) {
  return (y.array() > S(0)).select(dy, S(0));
}

// ---------------------------------------------------------------------------
// Time-distributed dense layer and per-frame softmax.

template <typename S>
struct DenseParams {
  Tensor2<S> weight;  // out x in
  Tensor2<S> bias;    // out x 1
  DenseParams() = default;
  DenseParams(int out, int in) : weight(Tensor2<S>::Zero(out, in)), bias(Tensor2<S>::Zero(out, 1)) {}
};

template <typename S>
Tensor2<S> dense_timedistributed(const Tensor2<S> &x, const DenseParams<S> &p) {
  require(x.rows() == p.weight.cols(), "dense: input size does not match the weight matrix");
  Tensor2<S> z = p.weight * x;
  z.colwise() += p.bias.col(0);
  return z;
}

template <typename S>
Tensor2<S> dense_backward(const Tensor2<S> &x, const DenseParams<S> &p, const Tensor2<S> &dz,
                          DenseParams<S> *grads, bool want_dx = true) {
  if (grads) {
    grads->weight.noalias() += dz * x.transpose();
    grads->bias.col(0) += dz.rowwise().sum();
  }
  if (!want_dx) return {};
  return p.weight.transpose() * dz;
}

template <typename S>
Tensor2<S> softmax_frames(const Tensor2<S> &z) {
  Tensor2<S> p(z.rows(), z.cols());
  for (Eigen::Index t = 0; t < z.cols(); ++t) {
    const S m = z.col(t).maxCoeff();
    p.col(t) = (z.col(t).array() - m).exp().matrix();
    p.col(t) /= p.col(t).sum();
  }
  return p;
}

// ---------------------------------------------------------------------------
// Spatial dropout: whole channels are zeroed with probability `rate`,
// survivors scaled by 1/(1-rate). The returned scale vector is the backward
// mask.

enum class Mode { kTrain, kEval };

template <typename S>
Tensor2<S> spatial_dropout(const Tensor2<S> &x, double rate, Mode mode, Rng *rng,
                           std::vector<S> *scale_out = nullptr) {
  if (!(rate >= 0.0 && rate < 1.0))
    throw Error(ErrorKind::kInvalidArgument, "spatial_dropout: rate must be in [0, 1)");
  if (mode == Mode::kEval || rate == 0.0) {
    if (scale_out) scale_out->assign(static_cast<size_t>(x.rows()), S(1));
    return x;
  }
  std::vector<S> scale(static_cast<size_t>(x.rows()));
  const S keep = S(1.0 / (1.0 - rate));
  for (auto &s : scale) s = rng->bernoulli(rate) ? S(0) : keep;
  Tensor2<S> y(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.rows(); ++c) y.row(c) = x.row(c) * scale[c];
  if (scale_out) *scale_out = std::move(scale);
  return y;
}

template <typename S>
Tensor2<S> spatial_dropout_backward(const Tensor2<S> &dy, const std::vector<S> &scale) {
  Tensor2<S> dx(dy.rows(), dy.cols());
  for (Eigen::Index c = 0; c < dy.rows(); ++c) dx.row(c) = dy.row(c) * scale[c];
  return dx;
}

// ---------------------------------------------------------------------------
// Fan-in scaled uniform initialisation in [-sqrt(6/fan_in), sqrt(6/fan_in)].

template <typename S>
void he_uniform(Tensor2<S> *w, int fan_in, Rng *rng) {
  const double limit = std::sqrt(6.0 / fan_in);
  for (Eigen::Index j = 0; j < w->cols(); ++j)
    for (Eigen::Index i = 0; i < w->rows(); ++i) (*w)(i, j) = S(rng->uniform(-limit, limit));
}

}  // namespace orna::nn

#endif  // ORNA_NN_KERNELS_H_
