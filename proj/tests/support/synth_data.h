// tests/support/synth_data.h

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

#ifndef ORNA_TESTS_SUPPORT_SYNTH_DATA_H_
#define ORNA_TESTS_SUPPORT_SYNTH_DATA_H_

#include <span>
#include <string>
#include <vector>

#include "orna/eval/experiment.h"
#include "orna/synth/synth.h"

namespace orna::testing {

// Synthetic clips loaded in memory with features, as the experiment
// harness would load them from disk.
inline std::vector<eval::LoadedClip> synth_loaded(const synth::DatasetConfig &cfg, const model::FeaturePipeline &p) {
  std::vector<eval::LoadedClip> out;
  for (auto &c : synth::synth_clips(cfg)) {
    eval::LoadedClip l;
    l.entry = c.meta;
    l.duration = static_cast<double>(c.samples.size()) / cfg.tone.sample_rate;
    l.truth = c.track;
    l.features = model::extract_features(c.samples, p, c.meta.clip_id);
    out.push_back(std::move(l));
  }
  return out;
}

// Predicts and scores clips with the given network on the default decode
// and collar.
inline eval::EvalReport score_clips(const model::EdTcn<float> &net, std::span<const eval::LoadedClip> clips,
                                    const model::FeaturePipeline &p) {
  eval::ExperimentConfig cfg;
  cfg.features = p;
  cfg.model = net.config();
  std::vector<eval::ClipPrediction> preds;
  for (const auto &c : clips) preds.push_back(eval::predict_clip(net, c, cfg));
  return eval::evaluate(preds, "test", "", cfg.collar);
}

inline synth::DatasetConfig small_dataset(int n, std::uint64_t seed, const std::string &prefix = "t") {
  synth::DatasetConfig d;
  d.n_clips = n;
  d.seed = seed;
  d.prefix = prefix;
  return d;
}

}  // namespace orna::testing

#endif  // ORNA_TESTS_SUPPORT_SYNTH_DATA_H_
