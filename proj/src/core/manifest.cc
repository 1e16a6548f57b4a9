// src/core/manifest.cc

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

#include "orna/core/manifest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace orna {

using nlohmann::json;
namespace fs = std::filesystem;

const ClipManifestEntry *Manifest::find(const std::string &clip_id) const {
  for (const auto &c : clips)
    if (c.clip_id == clip_id) return &c;
  return nullptr;
}

std::string Manifest::resolve(const std::string &path) const {
  if (path.empty() || base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).string();
}

Manifest parse_manifest(const std::string &json_text, const std::string &base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw Error(ErrorKind::kFormat, std::string("manifest: ") + e.what());
  }
  const json &list = doc.is_array() ? doc : doc.at("clips");
  Manifest m;
  m.base_dir = base_dir;
  std::set<std::string> seen;
  try {
    for (const auto &j : list) {
      ClipManifestEntry e;
      e.clip_id = j.at("clip_id").get<std::string>();
      e.wav_path = j.at("wav_path").get<std::string>();
      e.label_path = j.value("label_path", std::string());
      e.singer = j.value("singer", std::string());
      e.raga = j.value("raga", std::string());
      if (j.contains("tonic") && !j["tonic"].is_null()) e.tonic_hz = j["tonic"].get<double>();
      if (j.contains("tala") && !j["tala"].is_null()) e.tala = j["tala"].get<std::string>();
      if (j.contains("bpm") && !j["bpm"].is_null()) e.bpm = j["bpm"].get<double>();
      e.split_tag = j.value("split_tag", std::string());
      if (!seen.insert(e.clip_id).second)
        throw Error(ErrorKind::kFormat, "manifest: duplicate clip_id " + e.clip_id);
      m.clips.push_back(std::move(e));
    }
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kFormat, std::string("manifest: ") + e.what());
  }
  return m;
}

std::string write_manifest(const Manifest &m) {
  json list = json::array();
  for (const auto &c : m.clips) {
    json j;
    j["clip_id"] = c.clip_id;
    j["wav_path"] = c.wav_path;
    if (!c.label_path.empty()) j["label_path"] = c.label_path;
    j["singer"] = c.singer;
    j["raga"] = c.raga;
    if (c.tonic_hz) j["tonic"] = *c.tonic_hz;
    if (c.tala) j["tala"] = *c.tala;
    if (c.bpm) j["bpm"] = *c.bpm;
    j["split_tag"] = c.split_tag;
    list.push_back(std::move(j));
  }
  return json{{"clips", list}}.dump(2) + "\n";
}

Manifest read_manifest_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open manifest " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), fs::path(path).parent_path().string());
}

void write_manifest_file(const std::string &path, const Manifest &m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write manifest " + path);
  out << write_manifest(m);
}

}  // namespace orna
