// include/orna/model/inference.h

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

#ifndef ORNA_MODEL_INFERENCE_H_
#define ORNA_MODEL_INFERENCE_H_

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "orna/chunking/chunking.h"
#include "orna/dsp/chroma.h"
#include "orna/model/decode.h"
#include "orna/model/edtcn.h"
#include "orna/model/trainer.h"

namespace orna::model {

// Audio-to-chunk settings shared by training and inference.
struct FeaturePipeline {
  dsp::StftConfig stft;
  dsp::ChromaConfig chroma;
  double chunk_seconds = 10.0;

  void check() const;
  // Frames of one chunk before padding (570 with the defaults).
  int chunk_frames() const;
  bool operator==(const FeaturePipeline &) const = default;
};

nlohmann::json to_json(const FeaturePipeline &p);
FeaturePipeline feature_pipeline_from_json(const nlohmann::json &j, bool strict = true);

dsp::FeatureMatrix extract_features(std::span<const float> samples, const FeaturePipeline &p,
                                    const std::string &clip_id = "");

// Plans the chunks of one clip and cuts its feature matrix accordingly. Each
// chunk starts at the first frame at or after its start time and is padded
// with zero columns and don't-care targets to a multiple of 2^L. With
// use_dont_care off, masked spans carry the class of the cut event.
std::vector<TrainingExample> make_chunk_examples(const dsp::FeatureMatrix &features, double duration,
                                                 const LabelTrack &track, const FeaturePipeline &p,
                                                 const ModelConfig &mcfg,
                                                 std::vector<chunking::ChunkPlan> *plans = nullptr);

// Whole-clip posteriors from overlapping windows of chunk_frames frames with
// a half-window hop; each frame is taken from the window where it sits
// furthest from an edge.
PosteriorGram predict_posteriors(const EdTcn<float> &model, const dsp::FeatureMatrix &features,
                                 const FeaturePipeline &p);

DecodedTrack predict_track(const EdTcn<float> &model, const dsp::FeatureMatrix &features,
                           const FeaturePipeline &p, const DecodeConfig &decode = {});

}  // namespace orna::model

#endif  // ORNA_MODEL_INFERENCE_H_
