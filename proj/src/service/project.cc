// src/service/project.cc

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

#include "orna/service/project.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>

#include "orna/core/file_io.h"
#include "orna/core/label_io.h"
#include "orna/core/wav.h"

namespace orna::service {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(now.time_since_epoch()).count() % 1000000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%06lldZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<long long>(us));
  return buf;
}

std::string version_file(int version) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "v%04d.tsv", version);
  return buf;
}

json read_json_file(const std::string &path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error &e) {
    throw Error(ErrorKind::kFormat, path + ": " + e.what());
  }
}

std::string manifest_location(const std::string &dir, const std::string &manifest_path) {
  if (fs::path(manifest_path).is_absolute()) return manifest_path;
  return (fs::path(dir) / manifest_path).string();
}

}  // namespace

json to_json(const ProjectSettings &s) {
  return {{"manifest", s.manifest_path},
          {"active_checkpoint", s.active_checkpoint},
          {"features", model::to_json(s.features)},
          {"model", model::to_json(s.model)},
          {"decode", {{"median_width", s.decode.median_width}, {"min_event_frames", s.decode.min_event_frames}}}};
}

ProjectSettings project_settings_from_json(const json &j) {
  ProjectSettings s;
  try {
    s.manifest_path = j.at("manifest").get<std::string>();
    s.active_checkpoint = j.value("active_checkpoint", "");
    if (j.contains("features")) s.features = model::feature_pipeline_from_json(j.at("features"));
    if (j.contains("model")) s.model = model::model_config_from_json(j.at("model"));
    if (j.contains("decode")) {
      s.decode.median_width = j.at("decode").value("median_width", s.decode.median_width);
      s.decode.min_event_frames = j.at("decode").value("min_event_frames", s.decode.min_event_frames);
    }
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kFormat, std::string("project.json: ") + e.what());
  }
  return s;
}

void Project::init(const std::string &dir, const std::string &manifest_path, const ProjectSettings &settings,
                   const std::string &checkpoint_path) {
  fs::create_directories(fs::path(dir) / "labels");
  fs::create_directories(fs::path(dir) / "checkpoints");
  ProjectSettings s = settings;
  s.manifest_path = fs::absolute(manifest_path).lexically_normal().string();
  s.active_checkpoint.clear();
  write_file((fs::path(dir) / "project.json").string(), to_json(s).dump(2) + "\n");

  Project p(dir);
  for (const auto &clip : p.manifest().clips) {
    if (clip.label_path.empty() || p.latest_labels(clip.clip_id).version > 0) continue;
    const std::string path = p.manifest().resolve(clip.label_path);
    if (!fs::exists(path)) continue;
    p.save_labels(clip.clip_id, read_label_file(path, clip.clip_id), 0, "import", true);
  }
  if (!checkpoint_path.empty()) p.set_active_checkpoint(p.add_checkpoint(model::load_checkpoint(checkpoint_path)));
}

Project::Project(const std::string &dir) : dir_(dir) {
  settings_ = project_settings_from_json(read_json_file((fs::path(dir) / "project.json").string()));
  manifest_ = read_manifest_file(manifest_location(dir, settings_.manifest_path));
}

ProjectSettings Project::settings() const {
  std::lock_guard<std::mutex> lock(mu_);
  return settings_;
}

void Project::write_settings() const {
  write_file((fs::path(dir_) / "project.json").string(), to_json(settings_).dump(2) + "\n");
}

std::string Project::label_dir(const std::string &clip_id) const {
  return (fs::path(dir_) / "labels" / clip_id).string();
}

std::mutex &Project::clip_mutex(const std::string &clip_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto &slot = clip_mu_[clip_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

std::vector<LabelVersion> Project::history(const std::string &clip_id) const {
  std::lock_guard<std::mutex> lock(clip_mutex(clip_id));
  std::vector<LabelVersion> out;
  const fs::path hist = fs::path(label_dir(clip_id)) / "history.json";
  if (!fs::exists(hist)) return out;
  for (const auto &h : read_json_file(hist.string())) {
    LabelVersion v;
    v.version = h.at("version").get<int>();
    v.author = h.value("author", "");
    v.timestamp = h.value("timestamp", "");
    v.track = read_label_file((fs::path(label_dir(clip_id)) / h.at("file").get<std::string>()).string(), clip_id);
    out.push_back(std::move(v));
  }
  return out;
}

LabelVersion Project::latest_labels(const std::string &clip_id) const {
  auto h = history(clip_id);
  if (h.empty()) {
    LabelVersion v;
    v.track.clip_id = clip_id;
    return v;
  }
  return h.back();
}

SaveResult Project::save_labels(const std::string &clip_id, LabelTrack track, int base_version,
                                const std::string &author, bool force) {
  if (!find(clip_id)) throw Error(ErrorKind::kInvalidArgument, "unknown clip " + clip_id);
  track.clip_id = clip_id;
  // Rounded to the label file resolution.
  track = parse_label_track(write_label_track(track), clip_id);
  normalize_track(&track);

  std::lock_guard<std::mutex> lock(clip_mutex(clip_id));
  const fs::path dir = label_dir(clip_id);
  const fs::path hist_path = dir / "history.json";
  json hist = fs::exists(hist_path) ? read_json_file(hist_path.string()) : json::array();
  const int current = hist.empty() ? 0 : hist.back().at("version").get<int>();

  SaveResult r;
  r.version = current;
  if (base_version != current) {
    r.status = SaveStatus::kConflict;
    return r;
  }
  r.violations = validate_events(track, DurationRules::defaults());
  if (!r.violations.empty() && !force) {
    r.status = SaveStatus::kRejected;
    return r;
  }
  fs::create_directories(dir);
  const int version = current + 1;
  write_label_file((dir / version_file(version)).string(), track);
  hist.push_back({{"version", version}, {"author", author}, {"timestamp", utc_timestamp()},
                  {"file", version_file(version)}});
  write_file(hist_path.string(), hist.dump(2) + "\n");
  r.status = SaveStatus::kSaved;
  r.version = version;
  return r;
}

std::vector<std::string> Project::checkpoint_ids() const {
  std::vector<std::string> ids;
  const fs::path dir = fs::path(dir_) / "checkpoints";
  if (!fs::exists(dir)) return ids;
  for (const auto &e : fs::directory_iterator(dir))
    if (e.path().extension() == ".orna") ids.push_back(e.path().stem().string());
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string Project::active_checkpoint() const {
  std::lock_guard<std::mutex> lock(mu_);
  return settings_.active_checkpoint;
}

void Project::set_active_checkpoint(const std::string &id) {
  if (!checkpoint(id)) throw Error(ErrorKind::kInvalidArgument, "unknown checkpoint " + id);
  std::lock_guard<std::mutex> lock(mu_);
  settings_.active_checkpoint = id;
  write_settings();
}

std::string Project::add_checkpoint(const model::Checkpoint &c) {
  std::lock_guard<std::mutex> lock(mu_);
  const fs::path dir = fs::path(dir_) / "checkpoints";
  fs::create_directories(dir);
  std::string id;
  for (int n = 1;; ++n) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "ckpt-%04d", n);
    if (!fs::exists(dir / (std::string(buf) + ".orna"))) {
      id = buf;
      break;
    }
  }
  model::save_checkpoint((dir / (id + ".orna")).string(), c);
  ckpt_cache_[id] = std::make_shared<model::Checkpoint>(c);
  return id;
}

std::shared_ptr<const model::Checkpoint> Project::checkpoint(const std::string &id) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (auto it = ckpt_cache_.find(id); it != ckpt_cache_.end()) return it->second;
  if (id.empty() || id.find('/') != std::string::npos || id.find("..") != std::string::npos) return nullptr;
  const fs::path path = fs::path(dir_) / "checkpoints" / (id + ".orna");
  if (!fs::exists(path)) return nullptr;
  auto c = std::make_shared<const model::Checkpoint>(model::load_checkpoint(path.string()));
  ckpt_cache_[id] = c;
  return c;
}

double Project::duration(const std::string &clip_id) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = duration_cache_.find(clip_id); it != duration_cache_.end()) return it->second;
  }
  const double d = decode_wav(audio_bytes(clip_id)).duration_seconds();
  std::lock_guard<std::mutex> lock(mu_);
  duration_cache_[clip_id] = d;
  return d;
}

std::string Project::audio_bytes(const std::string &clip_id) const {
  const ClipManifestEntry *e = find(clip_id);
  if (!e) throw Error(ErrorKind::kInvalidArgument, "unknown clip " + clip_id);
  return read_file(manifest_.resolve(e->wav_path));
}

std::shared_ptr<const dsp::FeatureMatrix> Project::chroma(const std::string &clip_id, int bins) const {
  const auto key = std::make_pair(clip_id, bins);
  model::FeaturePipeline p;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = chroma_cache_.find(key); it != chroma_cache_.end()) return it->second;
    p = settings_.features;
  }
  p.chroma.bins = bins;
  p.check();
  const WavData wav = decode_wav(audio_bytes(clip_id));
  auto fm = std::make_shared<const dsp::FeatureMatrix>(model::extract_features(wav.samples, p, clip_id));
  std::lock_guard<std::mutex> lock(mu_);
  chroma_cache_[key] = fm;
  return fm;
}

std::shared_ptr<const dsp::PitchTrack> Project::pitch(const std::string &clip_id) const {
  dsp::StftConfig stft;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = pitch_cache_.find(clip_id); it != pitch_cache_.end()) return it->second;
    stft = settings_.features.stft;
  }
  const WavData wav = decode_wav(audio_bytes(clip_id));
  auto pt = std::make_shared<const dsp::PitchTrack>(dsp::pitch_track(wav.samples, stft));
  std::lock_guard<std::mutex> lock(mu_);
  pitch_cache_[clip_id] = pt;
  return pt;
}

}  // namespace orna::service
