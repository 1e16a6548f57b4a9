// include/orna/service/project.h

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

#ifndef ORNA_SERVICE_PROJECT_H_
#define ORNA_SERVICE_PROJECT_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "orna/core/manifest.h"
#include "orna/core/rules.h"
#include "orna/dsp/pitch.h"
#include "orna/eval/experiment.h"
#include "orna/model/checkpoint.h"

namespace orna::service {

// On-disk layout:
//   project.json                 manifest path, active checkpoint, configs
//   labels/<clip>/vNNNN.tsv      one file per saved version
//   labels/<clip>/history.json   [{version, author, timestamp, file}]
//   checkpoints/<id>.orna
struct ProjectSettings {
  std::string manifest_path;  // relative to the project directory or absolute
  std::string active_checkpoint;
  model::FeaturePipeline features;
  model::ModelConfig model;
  model::DecodeConfig decode;
};

nlohmann::json to_json(const ProjectSettings &s);
ProjectSettings project_settings_from_json(const nlohmann::json &j);

struct LabelVersion {
  int version = 0;  // 0 = nothing saved yet
  std::string author;
  std::string timestamp;
  LabelTrack track;
};

enum class SaveStatus { kSaved, kConflict, kRejected };

struct SaveResult {
  SaveStatus status = SaveStatus::kSaved;
  int version = 0;  // new version when saved, current version otherwise
  std::vector<Violation> violations;
};

class Project {
 public:
  // Creates the layout, copies nothing: the manifest is referenced. Label
  // files named by the manifest become version 1 (author "import"). An
  // initial checkpoint, when given, is registered and made active.
  static void init(const std::string &dir, const std::string &manifest_path,
                   const ProjectSettings &settings = {}, const std::string &checkpoint_path = "");

  explicit Project(const std::string &dir);

  const std::string &dir() const { return dir_; }
  const Manifest &manifest() const { return manifest_; }
  ProjectSettings settings() const;
  const ClipManifestEntry *find(const std::string &clip_id) const { return manifest_.find(clip_id); }

  LabelVersion latest_labels(const std::string &clip_id) const;
  std::vector<LabelVersion> history(const std::string &clip_id) const;

  // Optimistic save: kConflict unless base_version is the current version;
  // kRejected when the track breaks the duration rules and !force.
  SaveResult save_labels(const std::string &clip_id, LabelTrack track, int base_version,
                         const std::string &author, bool force);

  std::vector<std::string> checkpoint_ids() const;
  std::string active_checkpoint() const;
  void set_active_checkpoint(const std::string &id);
  std::string add_checkpoint(const model::Checkpoint &c);
  std::shared_ptr<const model::Checkpoint> checkpoint(const std::string &id) const;

  double duration(const std::string &clip_id) const;
  std::string audio_bytes(const std::string &clip_id) const;
  // Cached per (clip, bins).
  std::shared_ptr<const dsp::FeatureMatrix> chroma(const std::string &clip_id, int bins) const;
  std::shared_ptr<const dsp::PitchTrack> pitch(const std::string &clip_id) const;

 private:
  std::mutex &clip_mutex(const std::string &clip_id) const;
  void write_settings() const;
  std::string label_dir(const std::string &clip_id) const;

  std::string dir_;
  Manifest manifest_;
  ProjectSettings settings_;
  mutable std::mutex mu_;  // settings, checkpoint cache, feature caches, clip mutex map
  mutable std::map<std::string, std::unique_ptr<std::mutex>> clip_mu_;
  mutable std::map<std::string, std::shared_ptr<const model::Checkpoint>> ckpt_cache_;
  mutable std::map<std::pair<std::string, int>, std::shared_ptr<const dsp::FeatureMatrix>> chroma_cache_;
  mutable std::map<std::string, std::shared_ptr<const dsp::PitchTrack>> pitch_cache_;
  mutable std::map<std::string, double> duration_cache_;
};

}  // namespace orna::service

#endif  // ORNA_SERVICE_PROJECT_H_
