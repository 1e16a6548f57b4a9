// src/model/inference.cc

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

#include "orna/model/inference.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace orna::model {

using nlohmann::json;

void FeaturePipeline::check() const {
  stft.check();
  chroma.check();
  if (!(chunk_seconds > 0.0)) throw Error(ErrorKind::kInvalidArgument, "chunk_seconds must be positive");
  if (chunk_frames() < 1) throw Error(ErrorKind::kInvalidArgument, "chunk shorter than one frame");
}

int FeaturePipeline::chunk_frames() const {
  return stft.frame_count(static_cast<size_t>(std::llround(chunk_seconds * stft.sample_rate)));
}

json to_json(const FeaturePipeline &p) {
  return json{{"sample_rate", p.stft.sample_rate},
              {"fft_size", p.stft.fft_size},
              {"window_length", p.stft.window_length},
              {"hop", p.stft.hop},
              {"bins", p.chroma.bins},
              {"tuning_a4_hz", p.chroma.tuning_a4_hz},
              {"min_freq_hz", p.chroma.min_freq_hz},
              {"max_freq_hz", p.chroma.max_freq_hz},
              {"chunk_seconds", p.chunk_seconds}};
}

FeaturePipeline feature_pipeline_from_json(const json &j, bool strict) {
  static const std::set<std::string> known = {"sample_rate", "fft_size",    "window_length",
                                              "hop",         "bins",        "tuning_a4_hz",
                                              "min_freq_hz", "max_freq_hz", "chunk_seconds"};
  if (strict) {
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!known.count(it.key()))
        throw Error(ErrorKind::kInvalidArgument, "features config: unknown key '" + it.key() + "'");
  }
  FeaturePipeline p;
  try {
    p.stft.sample_rate = j.value("sample_rate", p.stft.sample_rate);
    p.stft.fft_size = j.value("fft_size", p.stft.fft_size);
    p.stft.window_length = j.value("window_length", p.stft.window_length);
    p.stft.hop = j.value("hop", p.stft.hop);
    p.chroma.bins = j.value("bins", p.chroma.bins);
    p.chroma.tuning_a4_hz = j.value("tuning_a4_hz", p.chroma.tuning_a4_hz);
    p.chroma.min_freq_hz = j.value("min_freq_hz", p.chroma.min_freq_hz);
    p.chroma.max_freq_hz = j.value("max_freq_hz", p.chroma.max_freq_hz);
    p.chunk_seconds = j.value("chunk_seconds", p.chunk_seconds);
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kInvalidArgument, std::string("features config: ") + e.what());
  }
  p.check();
  return p;
}

dsp::FeatureMatrix extract_features(std::span<const float> samples, const FeaturePipeline &p,
                                    const std::string &clip_id) {
  dsp::FeatureMatrix fm = dsp::chromagram(samples, p.stft, p.chroma);
  fm.clip_id = clip_id;
  return fm;
}

std::vector<TrainingExample> make_chunk_examples(const dsp::FeatureMatrix &features, double duration,
                                                 const LabelTrack &track, const FeaturePipeline &p,
                                                 const ModelConfig &mcfg,
                                                 std::vector<chunking::ChunkPlan> *plans_out) {
  if (features.bins() != mcfg.input_bins)
    throw Error(ErrorKind::kShapeMismatch, "feature bins do not match the model input");
  const auto plans = chunking::plan_chunks(duration, track.events, p.chunk_seconds, track.clip_id);
  const int real = p.chunk_frames();
  const int frames = chunking::padded_frame_count(real, mcfg.layers());
  const double hop = features.frame_hop_seconds;
  const double hop_samples = static_cast<double>(p.stft.hop) / p.stft.sample_rate;
  std::vector<TrainingExample> out;
  for (const auto &plan : plans) {
    const int k0 = static_cast<int>(std::ceil(plan.start / hop_samples - 1e-9));
    const int avail = std::clamp(features.frames() - k0, 0, real);
    TrainingExample ex;
    ex.id = track.clip_id + "#" + std::to_string(plan.index);
    ex.features = nn::Tensor2<float>::Zero(features.bins(), frames);
    if (avail > 0) ex.features.leftCols(avail) = features.values.middleCols(k0, avail);
    chunking::FrameGrid grid;
    grid.hop_seconds = hop;
    grid.origin_seconds = features.frame_origin_seconds + k0 * hop - plan.start;
    grid.valid_frames = avail;
    ex.labels = chunking::rasterize(plan, grid, frames, mcfg.use_dont_care);
    out.push_back(std::move(ex));
  }
  if (plans_out) *plans_out = plans;
  return out;
}

PosteriorGram predict_posteriors(const EdTcn<float> &model, const dsp::FeatureMatrix &features,
                                 const FeaturePipeline &p) {
  const ModelConfig &mc = model.config();
  if (features.bins() != mc.input_bins)
    throw Error(ErrorKind::kShapeMismatch, "feature bins do not match the model input");
  const int total = features.frames();
  const int window = p.chunk_frames();
  const int padded = chunking::padded_frame_count(window, mc.layers());
  const int step = std::max(1, window / 2);

  PosteriorGram pg;
  pg.frame_hop_seconds = features.frame_hop_seconds;
  pg.frame_origin_seconds = features.frame_origin_seconds;
  pg.probs = Eigen::MatrixXf::Zero(mc.num_classes, total);
  std::vector<int> best(total, -1);
  for (int start = 0; start < total; start += step) {
    const int n = std::min(window, total - start);
    nn::Tensor2<float> x = nn::Tensor2<float>::Zero(mc.input_bins, padded);
    x.leftCols(n) = features.values.middleCols(start, n);
    const auto probs = model.forward(x, Mode::kEval, nullptr);
    for (int i = 0; i < n; ++i) {
      const int centrality = std::min(i, window - 1 - i);
      if (centrality > best[start + i]) {
        best[start + i] = centrality;
        pg.probs.col(start + i) = probs.col(i);
      }
    }
    if (start + window >= total) break;
  }
  return pg;
}

DecodedTrack predict_track(const EdTcn<float> &model, const dsp::FeatureMatrix &features,
                           const FeaturePipeline &p, const DecodeConfig &decode) {
  return decode_events(predict_posteriors(model, features, p), decode, features.clip_id);
}

}  // namespace orna::model
