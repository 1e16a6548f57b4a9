// src/cli/run_config.cc

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

#include "orna/cli/run_config.h"

#include <filesystem>
#include <set>

#include "orna/core/file_io.h"

namespace orna::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void reject_unknown(const json &j, const std::set<std::string> &known, const std::string &where) {
  if (!j.is_object()) throw Error(ErrorKind::kInvalidArgument, where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw Error(ErrorKind::kInvalidArgument, where + ": unknown key '" + it.key() + "'");
}

template <typename T>
void read(const json &j, const char *key, T *out) {
  if (j.contains(key)) *out = j.at(key).get<T>();
}

eval::SplitSpec random_split(const std::string &name, const std::string &description,
                             std::vector<std::string> singers) {
  eval::SplitSpec s;
  s.name = name;
  s.description = description;
  s.mode = eval::SplitMode::kRandom;
  s.train.singers = singers;
  s.test.singers = std::move(singers);
  return s;
}

eval::SplitSpec disjoint_split(const std::string &name, const std::string &description, eval::ClipFilter train,
                               eval::ClipFilter test) {
  eval::SplitSpec s;
  s.name = name;
  s.description = description;
  s.mode = eval::SplitMode::kDisjoint;
  s.train = std::move(train);
  s.test = std::move(test);
  s.train_fraction = 0.9;
  s.test_fraction = 0.0;
  s.validation_fraction = 0.1;
  return s;
}

}  // namespace

void RunConfig::set_bins(int bins) {
  features.chroma.bins = bins;
  model.input_bins = bins;
}

void RunConfig::check() const {
  features.check();
  model.check();
  train.check();
  if (model.input_bins != features.chroma.bins)
    throw Error(ErrorKind::kInvalidArgument, "run config: model.input_bins (" + std::to_string(model.input_bins) +
                                                 ") differs from features.bins (" +
                                                 std::to_string(features.chroma.bins) + ")");
  if (decode.median_width < 1 || decode.median_width % 2 == 0)
    throw Error(ErrorKind::kInvalidArgument, "run config: decode.median_width must be odd and positive");
  if (decode.min_event_frames < 1)
    throw Error(ErrorKind::kInvalidArgument, "run config: decode.min_event_frames must be at least 1");
  if (!(collar.collar >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "run config: collar.seconds must be >= 0");
}

eval::ExperimentConfig RunConfig::experiment() const {
  eval::ExperimentConfig e;
  e.features = features;
  e.model = model;
  e.train = train;
  e.decode = decode;
  e.collar = collar;
  return e;
}

json to_json(const RunConfig &c) {
  return {{"features", model::to_json(c.features)},
          {"model", model::to_json(c.model)},
          {"train", model::to_json(c.train)},
          {"decode", {{"median_width", c.decode.median_width}, {"min_event_frames", c.decode.min_event_frames}}},
          {"collar", {{"seconds", c.collar.collar}, {"onset_only", c.collar.onset_only}}},
          {"paths",
           {{"manifest", c.paths.manifest},
            {"out", c.paths.out},
            {"checkpoint", c.paths.checkpoint},
            {"splits_dir", c.paths.splits_dir}}}};
}

RunConfig run_config_from_json(const json &j) {
  reject_unknown(j, {"features", "model", "train", "decode", "collar", "ablation", "paths"}, "run config");
  RunConfig c;
  if (j.contains("features")) c.features = model::feature_pipeline_from_json(j.at("features"));
  if (j.contains("model")) c.model = model::model_config_from_json(j.at("model"));
  if (j.contains("train")) c.train = model::train_config_from_json(j.at("train"));
  try {
    if (j.contains("decode")) {
      const json &d = j.at("decode");
      reject_unknown(d, {"median_width", "min_event_frames"}, "decode");
      read(d, "median_width", &c.decode.median_width);
      read(d, "min_event_frames", &c.decode.min_event_frames);
    }
    if (j.contains("collar")) {
      const json &d = j.at("collar");
      reject_unknown(d, {"seconds", "onset_only"}, "collar");
      read(d, "seconds", &c.collar.collar);
      read(d, "onset_only", &c.collar.onset_only);
    }
    if (j.contains("ablation")) {
      const json &d = j.at("ablation");
      reject_unknown(d, {"dont_care", "periodic_pad", "dilation", "bins"}, "ablation");
      read(d, "dont_care", &c.model.use_dont_care);
      read(d, "periodic_pad", &c.model.use_periodic_pad);
      read(d, "dilation", &c.model.use_dilation);
      if (d.contains("bins")) c.set_bins(d.at("bins").get<int>());
    }
    if (j.contains("paths")) {
      const json &d = j.at("paths");
      reject_unknown(d, {"manifest", "out", "checkpoint", "splits_dir"}, "paths");
      read(d, "manifest", &c.paths.manifest);
      read(d, "out", &c.paths.out);
      read(d, "checkpoint", &c.paths.checkpoint);
      read(d, "splits_dir", &c.paths.splits_dir);
    }
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kInvalidArgument, std::string("run config: ") + e.what());
  }
  const bool model_sets_bins = j.contains("model") && j.at("model").contains("input_bins");
  const bool ablation_sets_bins = j.contains("ablation") && j.at("ablation").contains("bins");
  if (!model_sets_bins && !ablation_sets_bins) c.model.input_bins = c.features.chroma.bins;
  c.check();
  return c;
}

RunConfig read_run_config(const std::string &path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error &e) {
    throw Error(ErrorKind::kInvalidArgument, path + ": " + e.what());
  }
  return run_config_from_json(j);
}

std::optional<eval::SplitSpec> builtin_split(const std::string &name) {
  const auto s1 = [](std::vector<std::string> ragas) { return eval::ClipFilter{{"singer1"}, std::move(ragas)}; };
  const auto s2 = [](std::vector<std::string> ragas) { return eval::ClipFilter{{"singer2"}, std::move(ragas)}; };
  if (name == "exp1") return random_split(name, "General: both singers, random 70/20/10", {});
  if (name == "exp2") return random_split(name, "Intra-singer: singer1, random 70/20/10", {"singer1"});
  if (name == "exp3") return random_split(name, "Intra-singer: singer2, random 70/20/10", {"singer2"});
  if (name == "exp4") return disjoint_split(name, "Inter-singer: train singer1, test singer2", s1({}), s2({}));
  if (name == "exp5") return disjoint_split(name, "Inter-singer: train singer2, test singer1", s2({}), s1({}));
  if (name == "exp6")
    return disjoint_split(name, "Raga-specific: singer1 Bageshree to Bhoopali", s1({"Bageshree"}), s1({"Bhoopali"}));
  if (name == "exp7")
    return disjoint_split(name, "Raga-specific: singer1 Bhoopali to Bageshree", s1({"Bhoopali"}), s1({"Bageshree"}));
  if (name == "exp8")
    return disjoint_split(name, "Raga-specific: singer2 Bhairav to Bhoopali", s2({"Bhairav"}), s2({"Bhoopali"}));
  if (name == "exp9")
    return disjoint_split(name, "Raga-specific: singer2 Bhoopali to Bhairav", s2({"Bhoopali"}), s2({"Bhairav"}));
  return std::nullopt;
}

eval::SplitSpec resolve_split(const std::string &name_or_path, const std::string &splits_dir) {
  if (fs::is_regular_file(name_or_path)) return eval::read_split_spec(name_or_path);
  if (!splits_dir.empty()) {
    const fs::path p = fs::path(splits_dir) / (name_or_path + ".json");
    if (fs::is_regular_file(p)) return eval::read_split_spec(p.string());
  }
  if (auto s = builtin_split(name_or_path)) return *s;
  throw Error(ErrorKind::kInvalidArgument, "unknown split '" + name_or_path + "'");
}

}  // namespace orna::cli
