// include/orna/model/trainer.h

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

#ifndef ORNA_MODEL_TRAINER_H_
#define ORNA_MODEL_TRAINER_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "orna/model/checkpoint.h"
#include "orna/model/config.h"
#include "orna/model/edtcn.h"

namespace orna::model {

// One training chunk: input_bins x T features (T a multiple of 2^L) and T
// frame targets.
struct TrainingExample {
  std::string id;
  nn::Tensor2<float> features;
  FrameLabels labels;
};

struct EpochLog {
  int epoch = 0;  // 1-based
  double mean_loss = 0.0;
  double validation_loss = -1.0;  // -1 when no validation set
  int chunks = 0;
  double wall_seconds = 0.0;
};

struct TrainOptions {
  ParamGroup group = ParamGroup::kAll;
  std::span<const TrainingExample> validation;
  std::function<void(const EpochLog &)> on_epoch;
  std::function<void(const std::string &)> on_message;
  nlohmann::json features;  // stored in written checkpoints
};

struct TrainResult {
  std::vector<double> loss_curve;
  int epochs_run = 0;
  int skipped_chunks = 0;  // chunks without any valid frame
  int best_epoch = 0;      // epoch kept by early stopping, else epochs_run
};

// Mean masked loss over the examples in eval mode.
double evaluate_loss(const EdTcn<float> &model, std::span<const TrainingExample> data);

// Mini-batch Adam on the masked loss with shuffling and dropout driven by
// `rng`. A batch's loss is the mean of its chunk losses. Parameters outside
// options.group stay bit-identical. Throws Error(kNonFiniteLoss) with the
// epoch and chunk when the loss diverges, and Error(kNoValidFrames) when no
// chunk has a valid frame.
TrainResult train(EdTcn<float> *model, std::span<const TrainingExample> data, const TrainConfig &tcfg,
                  Rng *rng, const TrainOptions &options = {});

// Fresh model initialised from tcfg.seed and trained on `data`.
EdTcn<float> train_new(const ModelConfig &mcfg, const TrainConfig &tcfg,
                       std::span<const TrainingExample> data, const TrainOptions &options = {},
                       TrainResult *result = nullptr);

// Continues from a checkpoint updating only the decoder and classifier.
Checkpoint fine_tune(const Checkpoint &base, std::span<const TrainingExample> data, const TrainConfig &tcfg,
                     const TrainOptions &options = {}, TrainResult *result = nullptr);

}  // namespace orna::model

#endif  // ORNA_MODEL_TRAINER_H_
