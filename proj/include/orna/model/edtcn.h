// include/orna/model/edtcn.h

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

#ifndef ORNA_MODEL_EDTCN_H_
#define ORNA_MODEL_EDTCN_H_

#include <string>
#include <vector>

#include "orna/model/config.h"
#include "orna/nn/adam.h"
#include "orna/nn/kernels.h"

namespace orna::model {

using nn::Mode;
using nn::Tensor2;

template <typename S>
struct EdTcnParams {
  std::vector<nn::ConvParams<S>> encoder;
  std::vector<nn::ConvParams<S>> decoder;
  nn::DenseParams<S> classifier;

  bool operator==(const EdTcnParams &o) const;
};

enum class ParamGroup { kAll, kDecoderAndClassifier, kEncoder };

template <typename S>
struct LayerCache {
  Tensor2<S> cols;        // im2col of the layer input
  Tensor2<S> activation;  // relu output before dropout
  std::vector<S> dropout_scale;
  nn::PoolIndex pool;
};

template <typename S>
struct ForwardCache {
  std::vector<LayerCache<S>> encoder;
  std::vector<LayerCache<S>> decoder;
  std::vector<int> encoder_frames;  // T_l after each pool
  Tensor2<S> decoder_out;           // input to the classifier
  Tensor2<S> logits;
  Tensor2<S> probs;
};

// Encoder: L x [conv -> relu -> spatial dropout -> maxpool 2] on the
// periodically padded input. Decoder: L x [upsample 2 -> conv -> relu ->
// spatial dropout]. Time-distributed dense + softmax on top.
template <typename S>
class EdTcn {
 public:
  explicit EdTcn(const ModelConfig &config);

  const ModelConfig &config() const { return config_; }
  EdTcnParams<S> &params() { return params_; }
  const EdTcnParams<S> &params() const { return params_; }

  // Fan-in scaled uniform weights, zero biases.
  void initialize(Rng *rng);
  // Zero tensors shaped like the parameters.
  EdTcnParams<S> zeros_like() const;

  // x: input_bins x T with T a multiple of 2^L. Returns C x T posteriors.
  Tensor2<S> forward(const Tensor2<S> &x, Mode mode, Rng *rng, ForwardCache<S> *cache = nullptr) const;

  // Accumulates dL/dtheta given dL/dlogits. With skip_encoder the pass stops
  // at the decoder input and encoder gradients stay untouched.
  void backward(const ForwardCache<S> &cache, const Tensor2<S> &dlogits, EdTcnParams<S> *grads,
                bool skip_encoder = false) const;

  // Named views pairing parameters with gradient buffers, in a fixed order.
  std::vector<nn::ParamRef<S>> refs(EdTcnParams<S> *grads, ParamGroup group = ParamGroup::kAll);

  template <typename T>
  EdTcn<T> cast() const;

 private:
  ModelConfig config_;
  EdTcnParams<S> params_;
};

template <typename S>
std::vector<nn::ParamRef<S>> param_refs(EdTcnParams<S> *values, EdTcnParams<S> *grads, ParamGroup group);

// ---------------------------------------------------------------------------

template <typename S>
bool EdTcnParams<S>::operator==(const EdTcnParams &o) const {
  auto same = [](const Tensor2<S> &a, const Tensor2<S> &b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
  };
  if (encoder.size() != o.encoder.size() || decoder.size() != o.decoder.size()) return false;
  for (size_t i = 0; i < encoder.size(); ++i)
    if (!same(encoder[i].weight, o.encoder[i].weight) || !same(encoder[i].bias, o.encoder[i].bias))
      return false;
  for (size_t i = 0; i < decoder.size(); ++i)
    if (!same(decoder[i].weight, o.decoder[i].weight) || !same(decoder[i].bias, o.decoder[i].bias))
      return false;
  return same(classifier.weight, o.classifier.weight) && same(classifier.bias, o.classifier.bias);
}

template <typename S>
EdTcn<S>::EdTcn(const ModelConfig &config) : config_(config) {
  config_.check();
  const int layers = config_.layers();
  int in = config_.input_rows();
  for (int i = 0; i < layers; ++i) {
    params_.encoder.emplace_back(config_.encoder_filters[i], in, config_.kernel, config_.encoder_dilation(i));
    in = config_.encoder_filters[i];
  }
  for (int i = 0; i < layers; ++i) {
    params_.decoder.emplace_back(config_.decoder_filters[i], in, config_.kernel, config_.decoder_dilation(i));
    in = config_.decoder_filters[i];
  }
  params_.classifier = nn::DenseParams<S>(config_.num_classes, in);
}

template <typename S>
void EdTcn<S>::initialize(Rng *rng) {
  for (auto &p : params_.encoder) {
    nn::he_uniform(&p.weight, p.in_channels * p.kernel, rng);
    p.bias.setZero();
  }
  for (auto &p : params_.decoder) {
    nn::he_uniform(&p.weight, p.in_channels * p.kernel, rng);
    p.bias.setZero();
  }
  nn::he_uniform(&params_.classifier.weight, static_cast<int>(params_.classifier.weight.cols()), rng);
  params_.classifier.bias.setZero();
}

template <typename S>
EdTcnParams<S> EdTcn<S>::zeros_like() const {
  EdTcnParams<S> z = params_;
  for (auto &p : z.encoder) { p.weight.setZero(); p.bias.setZero(); }
  for (auto &p : z.decoder) { p.weight.setZero(); p.bias.setZero(); }
  z.classifier.weight.setZero();
  z.classifier.bias.setZero();
  return z;
}

template <typename S>
Tensor2<S> EdTcn<S>::forward(const Tensor2<S> &x, Mode mode, Rng *rng, ForwardCache<S> *cache) const {
  nn::require(x.rows() == config_.input_bins, "forward: feature rows do not match input_bins");
  if (x.cols() == 0 || x.cols() % config_.frame_multiple() != 0)
    throw Error(ErrorKind::kShapeMismatch, "forward: frame count must be a positive multiple of 2^L");
  const int layers = config_.layers();
  ForwardCache<S> local;
  ForwardCache<S> &c = cache ? *cache : local;
  c.encoder.assign(layers, {});
  c.decoder.assign(layers, {});
  c.encoder_frames.clear();

  Tensor2<S> h = config_.use_periodic_pad ? nn::periodic_pad(x, config_.periodic_pad) : x;
  for (int i = 0; i < layers; ++i) {
    LayerCache<S> &lc = c.encoder[i];
    Tensor2<S> a = nn::dilated_conv1d(h, params_.encoder[i], &lc.cols);
    nn::relu_inplace(&a);
    Tensor2<S> d = nn::spatial_dropout(a, config_.dropout, mode, rng, &lc.dropout_scale);
    lc.activation = std::move(a);
    h = nn::temporal_maxpool(d, &lc.pool);
    c.encoder_frames.push_back(static_cast<int>(h.cols()));
  }
  for (int i = 0; i < layers; ++i) {
    LayerCache<S> &lc = c.decoder[i];
    Tensor2<S> u = nn::temporal_upsample(h);
    Tensor2<S> a = nn::dilated_conv1d(u, params_.decoder[i], &lc.cols);
    nn::relu_inplace(&a);
    h = nn::spatial_dropout(a, config_.dropout, mode, rng, &lc.dropout_scale);
    lc.activation = std::move(a);
  }
  c.logits = nn::dense_timedistributed(h, params_.classifier);
  c.decoder_out = std::move(h);
  c.probs = nn::softmax_frames(c.logits);
  return c.probs;
}

template <typename S>
void EdTcn<S>::backward(const ForwardCache<S> &c, const Tensor2<S> &dlogits, EdTcnParams<S> *g,
                        bool skip_encoder) const {
  const int layers = config_.layers();
  Tensor2<S> dh = nn::dense_backward(c.decoder_out, params_.classifier, dlogits, &g->classifier);
  for (int i = layers - 1; i >= 0; --i) {
    const LayerCache<S> &lc = c.decoder[i];
    Tensor2<S> da = nn::relu_backward(lc.activation, nn::spatial_dropout_backward(dh, lc.dropout_scale));
    const bool need_dx = !(skip_encoder && i == 0);
    Tensor2<S> du = nn::dilated_conv1d_backward(lc.cols, params_.decoder[i], da, &g->decoder[i], need_dx);
    if (!need_dx) return;
    dh = nn::temporal_upsample_backward(du);
  }
  for (int i = layers - 1; i >= 0; --i) {
    const LayerCache<S> &lc = c.encoder[i];
    Tensor2<S> dd = nn::temporal_maxpool_backward(dh, lc.pool);
    Tensor2<S> da = nn::relu_backward(lc.activation, nn::spatial_dropout_backward(dd, lc.dropout_scale));
    dh = nn::dilated_conv1d_backward(lc.cols, params_.encoder[i], da, &g->encoder[i], i > 0);
  }
}

template <typename S>
std::vector<nn::ParamRef<S>> param_refs(EdTcnParams<S> *v, EdTcnParams<S> *g, ParamGroup group) {
  std::vector<nn::ParamRef<S>> out;
  if (group != ParamGroup::kDecoderAndClassifier) {
    for (size_t i = 0; i < v->encoder.size(); ++i) {
      out.push_back({"encoder." + std::to_string(i) + ".weight", &v->encoder[i].weight,
                     g ? &g->encoder[i].weight : nullptr});
      out.push_back({"encoder." + std::to_string(i) + ".bias", &v->encoder[i].bias,
                     g ? &g->encoder[i].bias : nullptr});
    }
  }
  if (group != ParamGroup::kEncoder) {
    for (size_t i = 0; i < v->decoder.size(); ++i) {
      out.push_back({"decoder." + std::to_string(i) + ".weight", &v->decoder[i].weight,
                     g ? &g->decoder[i].weight : nullptr});
      out.push_back({"decoder." + std::to_string(i) + ".bias", &v->decoder[i].bias,
                     g ? &g->decoder[i].bias : nullptr});
    }
    out.push_back({"classifier.weight", &v->classifier.weight, g ? &g->classifier.weight : nullptr});
    out.push_back({"classifier.bias", &v->classifier.bias, g ? &g->classifier.bias : nullptr});
  }
  return out;
}

template <typename S>
std::vector<nn::ParamRef<S>> EdTcn<S>::refs(EdTcnParams<S> *grads, ParamGroup group) {
  return param_refs(&params_, grads, group);
}

template <typename S>
template <typename T>
EdTcn<T> EdTcn<S>::cast() const {
  EdTcn<T> out(config_);
  auto &dst = out.params();
  for (size_t i = 0; i < params_.encoder.size(); ++i) {
    dst.encoder[i].weight = params_.encoder[i].weight.template cast<T>();
    dst.encoder[i].bias = params_.encoder[i].bias.template cast<T>();
  }
  for (size_t i = 0; i < params_.decoder.size(); ++i) {
    dst.decoder[i].weight = params_.decoder[i].weight.template cast<T>();
    dst.decoder[i].bias = params_.decoder[i].bias.template cast<T>();
  }
  dst.classifier.weight = params_.classifier.weight.template cast<T>();
  dst.classifier.bias = params_.classifier.bias.template cast<T>();
  return out;
}

}  // namespace orna::model

#endif  // ORNA_MODEL_EDTCN_H_
