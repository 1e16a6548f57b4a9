// include/orna/model/config.h

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

#ifndef ORNA_MODEL_CONFIG_H_
#define ORNA_MODEL_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace orna::model {

// ED-TCN architecture. Ablation switches: use_periodic_pad, use_dilation
// (false forces every rate to 1) and use_dont_care (false relabels masked
// spans with the class of the cut event before training).
struct ModelConfig {
  int input_bins = 120;
  int periodic_pad = 2;
  std::vector<int> encoder_filters = {32, 64, 128, 256};
  std::vector<int> decoder_filters = {256, 128, 64, 32};
  int kernel = 5;
  std::vector<int> encoder_dilations = {1, 2, 3, 4};
  std::vector<int> decoder_dilations = {4, 3, 2, 1};
  double dropout = 0.3;
  // Six ornaments plus Background. With 6, Background frames are excluded
  // from the loss and every frame is classified as an ornament.
  int num_classes = 7;
  bool use_periodic_pad = true;
  bool use_dilation = true;
  bool use_dont_care = true;

  int layers() const { return static_cast<int>(encoder_filters.size()); }
  int input_rows() const { return input_bins + (use_periodic_pad ? 2 * periodic_pad : 0); }
  int encoder_dilation(int i) const { return use_dilation ? encoder_dilations[i] : 1; }
  int decoder_dilation(int i) const { return use_dilation ? decoder_dilations[i] : 1; }
  // Frame counts must be a multiple of this.
  int frame_multiple() const { return 1 << layers(); }
  // Throws Error(kInvalidArgument).
  void check() const;
  bool operator==(const ModelConfig &) const = default;
};

struct TrainConfig {
  int epochs = 3000;
  double learning_rate = 1e-3;
  int batch_size = 8;
  std::uint64_t seed = 0;
  int checkpoint_every = 0;  // epochs; 0 disables periodic checkpoints
  std::string checkpoint_dir;
  int early_stop_patience = 0;  // epochs without validation improvement; 0 disables

  void check() const;
  bool operator==(const TrainConfig &) const = default;
};

nlohmann::json to_json(const ModelConfig &c);
nlohmann::json to_json(const TrainConfig &c);
// Missing keys keep defaults; unknown keys throw when `strict`.
ModelConfig model_config_from_json(const nlohmann::json &j, bool strict = true);
TrainConfig train_config_from_json(const nlohmann::json &j, bool strict = true);

}  // namespace orna::model

#endif  // ORNA_MODEL_CONFIG_H_
