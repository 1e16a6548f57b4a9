// include/orna/cli/run_config.h

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

#ifndef ORNA_CLI_RUN_CONFIG_H_
#define ORNA_CLI_RUN_CONFIG_H_

#include <optional>
#include <string>

#include "json.hpp"
#include "orna/eval/experiment.h"

namespace orna::cli {

struct RunPaths {
  std::string manifest;
  std::string out;
  std::string checkpoint;
  std::string splits_dir = "configs/splits";
  bool operator==(const RunPaths &) const = default;
};

// Everything a subcommand needs besides its inputs. Layout:
//   {"features": {...}, "model": {...}, "train": {...},
//    "decode": {"median_width", "min_event_frames"},
//    "collar": {"seconds", "onset_only"},
//    "ablation": {"dont_care", "periodic_pad", "dilation", "bins"},
//    "paths": {"manifest", "out", "checkpoint", "splits_dir"}}
// Every section is optional; unknown keys at any level throw
// Error(kInvalidArgument). The ablation section, when present, overrides
// the matching model and feature fields.
struct RunConfig {
  model::FeaturePipeline features;
  model::ModelConfig model;
  model::TrainConfig train;
  model::DecodeConfig decode;
  eval::CollarConfig collar;
  RunPaths paths;

  // Sets bins on both the features and the model input.
  void set_bins(int bins);
  // Throws Error(kInvalidArgument) on inconsistent settings.
  void check() const;
  eval::ExperimentConfig experiment() const;
};

nlohmann::json to_json(const RunConfig &c);
RunConfig run_config_from_json(const nlohmann::json &j);
RunConfig read_run_config(const std::string &path);

// The nine splits exp1..exp9 over singer1/singer2 and their ragas.
std::optional<eval::SplitSpec> builtin_split(const std::string &name);

// A path to a split file, a name found as <splits_dir>/<name>.json, or a
// built-in name, in that order.
eval::SplitSpec resolve_split(const std::string &name_or_path, const std::string &splits_dir);

}  // namespace orna::cli

#endif  // ORNA_CLI_RUN_CONFIG_H_
