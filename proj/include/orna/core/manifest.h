// include/orna/core/manifest.h

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

#ifndef ORNA_CORE_MANIFEST_H_
#define ORNA_CORE_MANIFEST_H_

#include <optional>
#include <string>
#include <vector>

#include "orna/core/types.h"

namespace orna {

struct ClipManifestEntry {
  std::string clip_id;
  std::string wav_path;
  std::string label_path;  // empty when the clip is unlabelled
  std::string singer;
  std::string raga;
  std::optional<double> tonic_hz;
  std::optional<std::string> tala;
  std::optional<double> bpm;
  std::string split_tag;

  bool operator==(const ClipManifestEntry &) const = default;
};

struct Manifest {
  std::vector<ClipManifestEntry> clips;
  // Directory relative paths are resolved against; empty means cwd.
  std::string base_dir;

  const ClipManifestEntry *find(const std::string &clip_id) const;
  std::string resolve(const std::string &path) const;
};

// JSON document {"clips": [...]}. Throws Error on duplicate ids or missing
// required fields.
Manifest parse_manifest(const std::string &json_text, const std::string &base_dir = "");
std::string write_manifest(const Manifest &m);
Manifest read_manifest_file(const std::string &path);
void write_manifest_file(const std::string &path, const Manifest &m);

}  // namespace orna

#endif  // ORNA_CORE_MANIFEST_H_
