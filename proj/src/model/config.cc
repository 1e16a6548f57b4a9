// src/model/config.cc

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

#include "orna/model/config.h"

#include <algorithm>
#include <set>

#include "orna/core/types.h"

namespace orna::model {

using nlohmann::json;

namespace {

void reject_unknown(const json &j, const std::set<std::string> &known, const char *what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key()))
      throw Error(ErrorKind::kInvalidArgument, std::string(what) + ": unknown key '" + it.key() + "'");
  }
}

template <typename T>
void read(const json &j, const char *key, T *out) {
  if (j.contains(key)) *out = j.at(key).get<T>();
}

}  // namespace

void ModelConfig::check() const {
  auto bad = [](const std::string &m) { throw Error(ErrorKind::kInvalidArgument, "model config: " + m); };
  if (input_bins <= 0) bad("input_bins must be positive");
  if (encoder_filters.empty()) bad("need at least one encoder layer");
  if (decoder_filters.size() != encoder_filters.size() ||
      encoder_dilations.size() != encoder_filters.size() ||
      decoder_dilations.size() != encoder_filters.size())
    bad("encoder/decoder filter and dilation lists must have equal length");
  if (!std::equal(encoder_filters.begin(), encoder_filters.end(), decoder_filters.rbegin()))
    bad("decoder filters must mirror the encoder filters");
  for (int f : encoder_filters)
    if (f <= 0) bad("filter counts must be positive");
  for (int r : encoder_dilations)
    if (r < 1) bad("dilation rates must be >= 1");
  for (int r : decoder_dilations)
    if (r < 1) bad("dilation rates must be >= 1");
  if (kernel < 1 || kernel % 2 == 0) bad("kernel size must be odd");
  if (!(dropout >= 0.0 && dropout < 1.0)) bad("dropout must be in [0, 1)");
  if (num_classes != 6 && num_classes != 7) bad("num_classes must be 6 or 7");
  if (use_periodic_pad && (periodic_pad < 0 || periodic_pad >= input_bins))
    bad("periodic_pad must be in [0, input_bins)");
}

void TrainConfig::check() const {
  if (epochs < 0) throw Error(ErrorKind::kInvalidArgument, "train config: epochs must be >= 0");
  if (batch_size < 1) throw Error(ErrorKind::kInvalidArgument, "train config: batch_size must be >= 1");
  if (!(learning_rate > 0.0))
    throw Error(ErrorKind::kInvalidArgument, "train config: learning_rate must be positive");
}

json to_json(const ModelConfig &c) {
  return json{{"input_bins", c.input_bins},
              {"periodic_pad", c.periodic_pad},
              {"encoder_filters", c.encoder_filters},
              {"decoder_filters", c.decoder_filters},
              {"kernel", c.kernel},
              {"encoder_dilations", c.encoder_dilations},
              {"decoder_dilations", c.decoder_dilations},
              {"dropout", c.dropout},
              {"num_classes", c.num_classes},
              {"use_periodic_pad", c.use_periodic_pad},
              {"use_dilation", c.use_dilation},
              {"use_dont_care", c.use_dont_care}};
}

json to_json(const TrainConfig &c) {
  return json{{"epochs", c.epochs},
              {"learning_rate", c.learning_rate},
              {"batch_size", c.batch_size},
              {"seed", c.seed},
              {"checkpoint_every", c.checkpoint_every},
              {"checkpoint_dir", c.checkpoint_dir},
              {"early_stop_patience", c.early_stop_patience}};
}

ModelConfig model_config_from_json(const json &j, bool strict) {
  if (strict) reject_unknown(j, {"input_bins", "periodic_pad", "encoder_filters", "decoder_filters",
                                 "kernel", "encoder_dilations", "decoder_dilations", "dropout",
                                 "num_classes", "use_periodic_pad", "use_dilation", "use_dont_care"},
                             "model config");
  ModelConfig c;
  try {
    read(j, "input_bins", &c.input_bins);
    read(j, "periodic_pad", &c.periodic_pad);
    read(j, "encoder_filters", &c.encoder_filters);
    read(j, "decoder_filters", &c.decoder_filters);
    read(j, "kernel", &c.kernel);
    read(j, "encoder_dilations", &c.encoder_dilations);
    read(j, "decoder_dilations", &c.decoder_dilations);
    read(j, "dropout", &c.dropout);
    read(j, "num_classes", &c.num_classes);
    read(j, "use_periodic_pad", &c.use_periodic_pad);
    read(j, "use_dilation", &c.use_dilation);
    read(j, "use_dont_care", &c.use_dont_care);
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kInvalidArgument, std::string("model config: ") + e.what());
  }
  c.check();
  return c;
}

TrainConfig train_config_from_json(const json &j, bool strict) {
  if (strict) reject_unknown(j, {"epochs", "learning_rate", "batch_size", "seed", "checkpoint_every",
                                 "checkpoint_dir", "early_stop_patience"},
                             "train config");
  TrainConfig c;
  try {
    read(j, "epochs", &c.epochs);
    read(j, "learning_rate", &c.learning_rate);
    read(j, "batch_size", &c.batch_size);
    read(j, "seed", &c.seed);
    read(j, "checkpoint_every", &c.checkpoint_every);
    read(j, "checkpoint_dir", &c.checkpoint_dir);
    read(j, "early_stop_patience", &c.early_stop_patience);
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kInvalidArgument, std::string("train config: ") + e.what());
  }
  c.check();
  return c;
}

}  // namespace orna::model
