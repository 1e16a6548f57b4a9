// src/eval/experiment.cc

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

#include "orna/eval/experiment.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <set>

#include "orna/core/file_io.h"
#include "orna/core/label_io.h"
#include "orna/core/wav.h"

namespace orna::eval {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string lower(std::string s) {
  for (auto &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool any_of_ci(const std::vector<std::string> &list, const std::string &v) {
  if (list.empty()) return true;
  const std::string lv = lower(v);
  return std::any_of(list.begin(), list.end(), [&](const std::string &s) { return lower(s) == lv; });
}

json filter_json(const ClipFilter &f) { return {{"singer", f.singers}, {"raga", f.ragas}}; }

ClipFilter filter_from_json(const json &j) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "singer" && it.key() != "raga")
      throw Error(ErrorKind::kInvalidArgument, "split filter: unknown key '" + it.key() + "'");
  auto list = [&](const char *key) {
    std::vector<std::string> out;
    if (!j.contains(key)) return out;
    if (j.at(key).is_string()) return std::vector<std::string>{j.at(key).get<std::string>()};
    return j.at(key).get<std::vector<std::string>>();
  };
  return {list("singer"), list("raga")};
}

std::vector<std::string> pool(const Manifest &m, const ClipFilter &f) {
  std::vector<std::string> ids;
  for (const auto &c : m.clips)
    if (f.matches(c)) ids.push_back(c.clip_id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

int portion(size_t n, double fraction) { return static_cast<int>(std::llround(n * fraction)); }

}  // namespace

bool ClipFilter::matches(const ClipManifestEntry &e) const {
  return any_of_ci(singers, e.singer) && any_of_ci(ragas, e.raga);
}

json to_json(const SplitSpec &s) {
  return {{"name", s.name},
          {"description", s.description},
          {"mode", s.mode == SplitMode::kRandom ? "random" : "disjoint"},
          {"train", filter_json(s.train)},
          {"test", filter_json(s.test)},
          {"fractions", {s.train_fraction, s.test_fraction, s.validation_fraction}},
          {"seed", s.seed}};
}

SplitSpec split_spec_from_json(const json &j) {
  static const std::set<std::string> known = {"name", "description", "mode", "train", "test", "fractions", "seed"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw Error(ErrorKind::kInvalidArgument, "split: unknown key '" + it.key() + "'");
  SplitSpec s;
  try {
    s.name = j.at("name").get<std::string>();
    s.description = j.value("description", "");
    const std::string mode = j.value("mode", "random");
    if (mode == "random")
      s.mode = SplitMode::kRandom;
    else if (mode == "disjoint")
      s.mode = SplitMode::kDisjoint;
    else
      throw Error(ErrorKind::kInvalidArgument, "split: mode must be random or disjoint");
    if (j.contains("train")) s.train = filter_from_json(j.at("train"));
    s.test = j.contains("test") ? filter_from_json(j.at("test")) : s.train;
    if (j.contains("fractions")) {
      const auto f = j.at("fractions").get<std::vector<double>>();
      if (f.size() != 3) throw Error(ErrorKind::kInvalidArgument, "split: fractions needs [train, test, validation]");
      s.train_fraction = f[0];
      s.test_fraction = f[1];
      s.validation_fraction = f[2];
    }
    s.seed = j.value("seed", std::uint64_t{0});
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kInvalidArgument, std::string("split: ") + e.what());
  }
  if (s.train_fraction < 0 || s.test_fraction < 0 || s.validation_fraction < 0)
    throw Error(ErrorKind::kInvalidArgument, "split: fractions must be non-negative");
  return s;
}

SplitSpec read_split_spec(const std::string &path) {
  try {
    return split_spec_from_json(json::parse(read_file(path)));
  } catch (const json::parse_error &e) {
    throw Error(ErrorKind::kInvalidArgument, path + ": " + e.what());
  }
}

Partition materialize(const Manifest &manifest, const SplitSpec &spec) {
  Partition p;
  Rng rng(spec.seed);
  if (spec.mode == SplitMode::kRandom) {
    std::vector<std::string> ids = pool(manifest, spec.train);
    rng.shuffle(std::span<std::string>(ids));
    const double total = spec.train_fraction + spec.test_fraction + spec.validation_fraction;
    const size_t n = ids.size();
    int n_test = total > 0 ? portion(n, spec.test_fraction / total) : 0;
    int n_val = total > 0 ? portion(n, spec.validation_fraction / total) : 0;
    if (n >= 2 && n_test == 0 && spec.test_fraction > 0) n_test = 1;
    while (n_val > 0 && static_cast<int>(n) - n_test - n_val < 1) --n_val;
    p.test.assign(ids.begin(), ids.begin() + std::min<size_t>(n_test, n));
    p.validation.assign(ids.begin() + p.test.size(), ids.begin() + std::min<size_t>(p.test.size() + n_val, n));
    p.train.assign(ids.begin() + p.test.size() + p.validation.size(), ids.end());
  } else {
    std::vector<std::string> train = pool(manifest, spec.train);
    p.test = pool(manifest, spec.test);
    std::vector<std::string> both;
    std::set_intersection(train.begin(), train.end(), p.test.begin(), p.test.end(), std::back_inserter(both));
    if (!both.empty())
      throw Error(ErrorKind::kInvalidArgument, "split " + spec.name + ": train and test pools share clip " + both[0]);
    rng.shuffle(std::span<std::string>(train));
    int n_val = portion(train.size(), spec.validation_fraction);
    while (n_val > 0 && static_cast<int>(train.size()) - n_val < 1) --n_val;
    p.validation.assign(train.begin(), train.begin() + n_val);
    p.train.assign(train.begin() + n_val, train.end());
  }
  std::sort(p.train.begin(), p.train.end());
  std::sort(p.test.begin(), p.test.end());
  std::sort(p.validation.begin(), p.validation.end());
  if (p.train.empty()) throw Error(ErrorKind::kEmptyPartition, "split " + spec.name + ": empty training partition");
  if (p.test.empty()) throw Error(ErrorKind::kEmptyPartition, "split " + spec.name + ": empty test partition");
  return p;
}

json to_json(const ExperimentConfig &c) {
  return {{"features", model::to_json(c.features)},
          {"model", model::to_json(c.model)},
          {"train", model::to_json(c.train)},
          {"decode", {{"median_width", c.decode.median_width}, {"min_event_frames", c.decode.min_event_frames}}},
          {"collar", {{"collar", c.collar.collar}, {"onset_only", c.collar.onset_only}}}};
}

LoadedClip load_clip(const Manifest &manifest, const ClipManifestEntry &entry, const model::FeaturePipeline &p) {
  LoadedClip c;
  c.entry = entry;
  const WavData wav = read_wav(manifest.resolve(entry.wav_path));
  if (wav.sample_rate != p.stft.sample_rate)
    throw Error(ErrorKind::kFormat, entry.clip_id + ": sample rate " + std::to_string(wav.sample_rate) +
                                        " does not match the pipeline " + std::to_string(p.stft.sample_rate));
  c.duration = wav.duration_seconds();
  c.truth.clip_id = entry.clip_id;
  if (!entry.label_path.empty()) c.truth = read_label_file(manifest.resolve(entry.label_path), entry.clip_id);
  c.features = model::extract_features(wav.samples, p, entry.clip_id);
  return c;
}

std::vector<LoadedClip> load_clips(const Manifest &manifest, std::span<const std::string> ids,
                                   const model::FeaturePipeline &p) {
  std::vector<LoadedClip> out;
  for (const auto &id : ids) {
    const ClipManifestEntry *e = manifest.find(id);
    if (!e) throw Error(ErrorKind::kInvalidArgument, "unknown clip " + id);
    out.push_back(load_clip(manifest, *e, p));
  }
  return out;
}

std::vector<model::TrainingExample> build_examples(std::span<const LoadedClip> clips,
                                                   const model::FeaturePipeline &p,
                                                   const model::ModelConfig &mcfg) {
  std::vector<model::TrainingExample> out;
  for (const auto &c : clips) {
    auto ex = model::make_chunk_examples(c.features, c.duration, c.truth, p, mcfg);
    for (auto &e : ex) out.push_back(std::move(e));
  }
  return out;
}

ClipPrediction predict_clip(const model::EdTcn<float> &net, const LoadedClip &clip, const ExperimentConfig &cfg) {
  ClipPrediction out;
  out.clip_id = clip.entry.clip_id;
  out.truth = clip.truth;
  out.decoded = model::predict_track(net, clip.features, cfg.features, cfg.decode);
  chunking::FrameGrid grid;
  grid.hop_seconds = clip.features.frame_hop_seconds;
  grid.origin_seconds = clip.features.frame_origin_seconds;
  out.pred_frames = chunking::rasterize_track(out.decoded.track, grid, clip.features.frames());
  out.truth_frames = chunking::rasterize_track(clip.truth, grid, clip.features.frames());
  return out;
}

EvalReport evaluate(std::span<const ClipPrediction> preds, const std::string &split,
                    const std::string &config_hash, const CollarConfig &collar) {
  EvalReport r;
  r.split = split;
  r.config_hash = config_hash;
  r.collar_seconds = collar.collar;
  CollarConfig zero = collar;
  zero.collar = 0.0;
  for (const auto &p : preds) {
    add_frame_counts(p.pred_frames, p.truth_frames, &r.frame);
    add_event_counts(p.decoded.track, p.truth, collar, &r.event_collar);
    add_event_counts(p.decoded.track, p.truth, zero, &r.event_zero_collar);
    add_confusion(p.pred_frames, p.truth_frames, &r.confusion);
  }
  r.frame.finalize();
  r.event_collar.finalize();
  r.event_zero_collar.finalize();
  return r;
}

ExperimentResult run_experiment(const Manifest &manifest, const SplitSpec &split, const ExperimentConfig &cfg,
                                const std::string &out_dir, const ExperimentHooks &hooks) {
  cfg.features.check();
  cfg.model.check();
  cfg.train.check();
  if (cfg.features.chroma.bins != cfg.model.input_bins)
    throw Error(ErrorKind::kInvalidArgument, "chroma bins and model input_bins differ");
  auto say = [&](const std::string &m) {
    if (hooks.on_message) hooks.on_message(m);
  };

  ExperimentResult res;
  res.partition = materialize(manifest, split);
  say("split " + split.name + ": " + std::to_string(res.partition.train.size()) + " train, " +
      std::to_string(res.partition.test.size()) + " test, " + std::to_string(res.partition.validation.size()) +
      " validation clips");

  const auto train_clips = load_clips(manifest, res.partition.train, cfg.features);
  const auto val_clips = load_clips(manifest, res.partition.validation, cfg.features);
  const auto train_ex = build_examples(train_clips, cfg.features, cfg.model);
  const auto val_ex = build_examples(val_clips, cfg.features, cfg.model);
  say("training on " + std::to_string(train_ex.size()) + " chunks");

  model::TrainOptions opts;
  opts.validation = val_ex;
  opts.on_epoch = hooks.on_epoch;
  opts.on_message = hooks.on_message;
  opts.features = model::to_json(cfg.features);
  model::TrainConfig tcfg = cfg.train;
  if (!out_dir.empty() && tcfg.checkpoint_every > 0 && tcfg.checkpoint_dir.empty())
    tcfg.checkpoint_dir = (fs::path(out_dir) / "checkpoints").string();
  const model::EdTcn<float> net = model::train_new(cfg.model, tcfg, train_ex, opts, &res.training);
  const double last = res.training.loss_curve.empty() ? 0.0 : res.training.loss_curve.back();
  res.checkpoint = model::make_checkpoint(net, {res.training.epochs_run, last, tcfg.seed}, opts.features);

  const auto test_clips = load_clips(manifest, res.partition.test, cfg.features);
  for (const auto &c : test_clips) res.predictions.push_back(predict_clip(net, c, cfg));

  json hash_doc = to_json(cfg);
  hash_doc["split"] = to_json(split);
  res.report = evaluate(res.predictions, split.name, fnv1a_hex(hash_doc.dump()), cfg.collar);

  if (!out_dir.empty()) {
    fs::create_directories(fs::path(out_dir) / "predictions");
    write_file((fs::path(out_dir) / "report.json").string(), to_json(res.report).dump(2) + "\n");
    write_file((fs::path(out_dir) / "confusion.csv").string(), confusion_csv(res.report.confusion));
    const json part = {{"train", res.partition.train},
                       {"test", res.partition.test},
                       {"validation", res.partition.validation}};
    write_file((fs::path(out_dir) / "partition.json").string(), part.dump(2) + "\n");
    model::save_checkpoint((fs::path(out_dir) / "model.orna").string(), res.checkpoint);
    for (const auto &p : res.predictions)
      write_label_file((fs::path(out_dir) / "predictions" / (p.clip_id + ".tsv")).string(), p.decoded.track);
  }
  return res;
}

}  // namespace orna::eval
