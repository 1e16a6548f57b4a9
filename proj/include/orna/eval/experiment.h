// include/orna/eval/experiment.h

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

#ifndef ORNA_EVAL_EXPERIMENT_H_
#define ORNA_EVAL_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "orna/core/manifest.h"
#include "orna/eval/report.h"
#include "orna/model/checkpoint.h"
#include "orna/model/inference.h"

namespace orna::eval {

// Empty lists accept everything; matching is case-insensitive.
struct ClipFilter {
  std::vector<std::string> singers;
  std::vector<std::string> ragas;
  bool matches(const ClipManifestEntry &e) const;
};

enum class SplitMode {
  kRandom,    // one pool (the train filter) cut into train/test/validation
  kDisjoint,  // train and test pools from separate filters
};

struct SplitSpec {
  std::string name;
  std::string description;
  SplitMode mode = SplitMode::kRandom;
  ClipFilter train;
  ClipFilter test;
  double train_fraction = 0.7;
  double test_fraction = 0.2;
  double validation_fraction = 0.1;  // disjoint mode: carved from the train pool
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const SplitSpec &s);
SplitSpec split_spec_from_json(const nlohmann::json &j);
SplitSpec read_split_spec(const std::string &path);

struct Partition {
  std::vector<std::string> train;
  std::vector<std::string> test;
  std::vector<std::string> validation;
};

// Deterministic in the manifest and split spec. Throws Error(kEmptyPartition)
// when train or test ends up empty and Error(kInvalidArgument) when a
// disjoint split's pools intersect.
Partition materialize(const Manifest &manifest, const SplitSpec &spec);

struct ExperimentConfig {
  model::FeaturePipeline features;
  model::ModelConfig model;
  model::TrainConfig train;
  model::DecodeConfig decode;
  CollarConfig collar;
};

nlohmann::json to_json(const ExperimentConfig &c);

struct LoadedClip {
  ClipManifestEntry entry;
  double duration = 0.0;
  LabelTrack truth;
  dsp::FeatureMatrix features;
};

LoadedClip load_clip(const Manifest &manifest, const ClipManifestEntry &entry, const model::FeaturePipeline &p);
std::vector<LoadedClip> load_clips(const Manifest &manifest, std::span<const std::string> ids,
                                   const model::FeaturePipeline &p);

std::vector<model::TrainingExample> build_examples(std::span<const LoadedClip> clips,
                                                   const model::FeaturePipeline &p,
                                                   const model::ModelConfig &mcfg);

struct ClipPrediction {
  std::string clip_id;
  model::DecodedTrack decoded;
  FrameLabels pred_frames;   // decoded events painted on the feature grid
  FrameLabels truth_frames;  // truth painted on the same grid
  LabelTrack truth;
};

ClipPrediction predict_clip(const model::EdTcn<float> &net, const LoadedClip &clip, const ExperimentConfig &cfg);

EvalReport evaluate(std::span<const ClipPrediction> preds, const std::string &split,
                    const std::string &config_hash, const CollarConfig &collar);

struct ExperimentHooks {
  std::function<void(const model::EpochLog &)> on_epoch;
  std::function<void(const std::string &)> on_message;
};

struct ExperimentResult {
  Partition partition;
  model::TrainResult training;
  model::Checkpoint checkpoint;
  std::vector<ClipPrediction> predictions;
  EvalReport report;
};

// Split, features, chunking, training, prediction and scoring. When
// out_dir is non-empty it receives report.json, confusion.csv,
// partition.json, model.orna and predictions/<clip>.tsv.
ExperimentResult run_experiment(const Manifest &manifest, const SplitSpec &split, const ExperimentConfig &cfg,
                                const std::string &out_dir = "", const ExperimentHooks &hooks = {});

}  // namespace orna::eval

#endif  // ORNA_EVAL_EXPERIMENT_H_
