// src/model/trainer.cc

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

#include "orna/model/trainer.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <numeric>

#include "orna/model/loss.h"

namespace orna::model {

namespace {

void set_zero(EdTcnParams<float> *g) {
  for (auto &p : g->encoder) { p.weight.setZero(); p.bias.setZero(); }
  for (auto &p : g->decoder) { p.weight.setZero(); p.bias.setZero(); }
  g->classifier.weight.setZero();
  g->classifier.bias.setZero();
}

bool has_valid_frame(const TrainingExample &ex, int num_classes) {
  for (FrameSymbol s : ex.labels)
    if (target_index(s, num_classes) >= 0) return true;
  return false;
}

void check_example(const EdTcn<float> &model, const TrainingExample &ex) {
  const ModelConfig &c = model.config();
  if (ex.features.rows() != c.input_bins)
    throw Error(ErrorKind::kShapeMismatch, "chunk " + ex.id + ": feature bins do not match the model");
  if (static_cast<size_t>(ex.features.cols()) != ex.labels.size())
    throw Error(ErrorKind::kShapeMismatch, "chunk " + ex.id + ": label count does not match frames");
}

void write_periodic(const EdTcn<float> &model, const TrainConfig &tcfg, const TrainOptions &options,
                    int epoch, double loss) {
  std::filesystem::create_directories(tcfg.checkpoint_dir);
  char name[32];
  std::snprintf(name, sizeof(name), "epoch_%05d.orna", epoch);
  save_checkpoint((std::filesystem::path(tcfg.checkpoint_dir) / name).string(),
                  make_checkpoint(model, {epoch, loss, tcfg.seed}, options.features));
}

}  // namespace

double evaluate_loss(const EdTcn<float> &model, std::span<const TrainingExample> data) {
  double total = 0.0;
  int n = 0;
  for (const auto &ex : data) {
    if (!has_valid_frame(ex, model.config().num_classes)) continue;
    check_example(model, ex);
    const auto probs = model.forward(ex.features, Mode::kEval, nullptr);
    total += masked_cross_entropy(probs, ex.labels).loss;
    ++n;
  }
  return n ? total / n : 0.0;
}

TrainResult train(EdTcn<float> *model, std::span<const TrainingExample> data, const TrainConfig &tcfg,
                  Rng *rng, const TrainOptions &options) {
  tcfg.check();
  TrainResult result;
  std::vector<int> usable;
  for (size_t i = 0; i < data.size(); ++i) {
    check_example(*model, data[i]);
    if (has_valid_frame(data[i], model->config().num_classes))
      usable.push_back(static_cast<int>(i));
    else
      ++result.skipped_chunks;
  }
  if (result.skipped_chunks > 0 && options.on_message)
    options.on_message("skipping " + std::to_string(result.skipped_chunks) + " chunk(s) with no valid frames");
  if (tcfg.epochs == 0) return result;
  if (usable.empty()) throw Error(ErrorKind::kNoValidFrames, "no training chunk has a valid frame");

  const bool skip_encoder = options.group == ParamGroup::kDecoderAndClassifier;
  EdTcnParams<float> grads = model->zeros_like();
  const auto refs = model->refs(&grads, options.group);
  nn::AdamState<float> adam;
  adam.config.learning_rate = tcfg.learning_rate;

  const bool early_stop = tcfg.early_stop_patience > 0 && !options.validation.empty();
  double best_val = std::numeric_limits<double>::infinity();
  EdTcnParams<float> best_params;
  int stale = 0;

  ForwardCache<float> cache;
  for (int epoch = 1; epoch <= tcfg.epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    rng->shuffle(std::span<int>(usable));
    double epoch_loss = 0.0;
    for (size_t b = 0; b < usable.size(); b += tcfg.batch_size) {
      const size_t e = std::min(usable.size(), b + static_cast<size_t>(tcfg.batch_size));
      const float scale = 1.0f / static_cast<float>(e - b);
      set_zero(&grads);
      for (size_t k = b; k < e; ++k) {
        const TrainingExample &ex = data[usable[k]];
        const auto probs = model->forward(ex.features, Mode::kTrain, rng, &cache);
        auto lr = masked_cross_entropy(probs, ex.labels);
        if (!std::isfinite(lr.loss))
          throw Error(ErrorKind::kNonFiniteLoss,
                      "non-finite loss at epoch " + std::to_string(epoch) + ", chunk " + ex.id);
        epoch_loss += lr.loss;
        lr.dlogits *= scale;
        model->backward(cache, lr.dlogits, &grads, skip_encoder);
      }
      nn::adam_step(std::span<const nn::ParamRef<float>>(refs), &adam);
    }
    EpochLog log;
    log.epoch = epoch;
    log.mean_loss = epoch_loss / usable.size();
    log.chunks = static_cast<int>(usable.size());
    result.loss_curve.push_back(log.mean_loss);
    result.epochs_run = epoch;
    result.best_epoch = epoch;
    if (!options.validation.empty()) log.validation_loss = evaluate_loss(*model, options.validation);
    log.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (options.on_epoch) options.on_epoch(log);
    if (tcfg.checkpoint_every > 0 && !tcfg.checkpoint_dir.empty() && epoch % tcfg.checkpoint_every == 0)
      write_periodic(*model, tcfg, options, epoch, log.mean_loss);

    if (early_stop) {
      if (log.validation_loss < best_val) {
        best_val = log.validation_loss;
        best_params = model->params();
        stale = 0;
      } else if (++stale >= tcfg.early_stop_patience) {
        break;
      }
    }
  }
  if (early_stop && !best_params.encoder.empty()) {
    model->params() = best_params;
    result.best_epoch = result.epochs_run - stale;
  }
  return result;
}

EdTcn<float> train_new(const ModelConfig &mcfg, const TrainConfig &tcfg, std::span<const TrainingExample> data,
                       const TrainOptions &options, TrainResult *result) {
  Rng root(tcfg.seed);
  Rng init = root.split();
  Rng loop = root.split();
  EdTcn<float> model(mcfg);
  model.initialize(&init);
  TrainResult r = train(&model, data, tcfg, &loop, options);
  if (result) *result = std::move(r);
  return model;
}

Checkpoint fine_tune(const Checkpoint &base, std::span<const TrainingExample> data, const TrainConfig &tcfg,
                     const TrainOptions &options, TrainResult *result) {
  EdTcn<float> model = model_from_checkpoint(base);
  Rng loop(tcfg.seed);
  TrainOptions opts = options;
  opts.group = ParamGroup::kDecoderAndClassifier;
  if (opts.features.is_null()) opts.features = base.features;
  TrainResult r = train(&model, data, tcfg, &loop, opts);
  CheckpointMeta meta = base.meta;
  meta.epoch += r.epochs_run;
  if (!r.loss_curve.empty()) meta.loss = r.loss_curve.back();
  meta.seed = tcfg.seed;
  if (result) *result = std::move(r);
  if (tcfg.epochs == 0) return base;
  return make_checkpoint(model, meta, opts.features);
}

}  // namespace orna::model
