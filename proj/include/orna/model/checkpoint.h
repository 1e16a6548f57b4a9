// include/orna/model/checkpoint.h

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

#ifndef ORNA_MODEL_CHECKPOINT_H_
#define ORNA_MODEL_CHECKPOINT_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "orna/model/edtcn.h"

namespace orna::model {

struct CheckpointMeta {
  int epoch = 0;
  double loss = 0.0;
  std::uint64_t seed = 0;
  bool operator==(const CheckpointMeta &) const = default;
};

// A frozen model plus everything needed to apply it to new audio.
// `features` holds the feature pipeline JSON (null when unknown).
struct Checkpoint {
  ModelConfig config;
  EdTcnParams<float> params;
  CheckpointMeta meta;
  nlohmann::json features;
};

// Layout: "ORNA1", u32 header length, header JSON {config, meta, features},
// u32 tensor count, then per tensor: u32 name length, name, u32 rows,
// u32 cols, rows*cols little-endian float32 in column-major order.
std::string encode_checkpoint(const Checkpoint &c);
// Throws Error(kFormat) on a bad magic, truncation or tensor mismatch.
Checkpoint decode_checkpoint(std::string_view bytes);
void save_checkpoint(const std::string &path, const Checkpoint &c);
Checkpoint load_checkpoint(const std::string &path);

Checkpoint make_checkpoint(const EdTcn<float> &model, const CheckpointMeta &meta,
                           const nlohmann::json &features = nullptr);
EdTcn<float> model_from_checkpoint(const Checkpoint &c);

}  // namespace orna::model

#endif  // ORNA_MODEL_CHECKPOINT_H_
