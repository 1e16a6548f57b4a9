// src/dsp/feature_cache.cc

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

#include "orna/dsp/feature_cache.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "orna/core/types.h"

namespace orna::dsp {

namespace {

static_assert(std::endian::native == std::endian::little, "little-endian host required");

template <typename T>
void put(std::string *s, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  s->append(buf, sizeof(T));
}

template <typename T>
T get(std::string_view bytes, size_t *pos) {
  if (*pos + sizeof(T) > bytes.size()) throw Error(ErrorKind::kFormat, "feature cache: truncated");
  T v;
  std::memcpy(&v, bytes.data() + *pos, sizeof(T));
  *pos += sizeof(T);
  return v;
}

}  // namespace

std::string encode_feature_cache(const FeatureMatrix &fm) {
  std::string s = "ORNF";
  put<std::uint32_t>(&s, kFeatureCacheVersion);
  put<std::uint32_t>(&s, static_cast<std::uint32_t>(fm.bins()));
  put<std::uint32_t>(&s, static_cast<std::uint32_t>(fm.frames()));
  put<double>(&s, fm.frame_hop_seconds);
  for (int f = 0; f < fm.bins(); ++f)
    for (int t = 0; t < fm.frames(); ++t) put<float>(&s, fm.values(f, t));
  return s;
}

FeatureMatrix decode_feature_cache(std::string_view bytes) {
  if (bytes.size() < 4 || bytes.substr(0, 4) != "ORNF")
    throw Error(ErrorKind::kFormat, "feature cache: bad magic");
  size_t pos = 4;
  const auto version = get<std::uint32_t>(bytes, &pos);
  if (version != kFeatureCacheVersion)
    throw Error(ErrorKind::kFormat, "feature cache: unsupported version " + std::to_string(version));
  const auto bins = get<std::uint32_t>(bytes, &pos);
  const auto frames = get<std::uint32_t>(bytes, &pos);
  FeatureMatrix fm;
  fm.frame_hop_seconds = get<double>(bytes, &pos);
  fm.frame_origin_seconds = StftConfig{}.origin_seconds();
  if (bytes.size() - pos != size_t(bins) * frames * sizeof(float))
    throw Error(ErrorKind::kFormat, "feature cache: payload size mismatch");
  fm.values.resize(bins, frames);
  for (std::uint32_t f = 0; f < bins; ++f)
    for (std::uint32_t t = 0; t < frames; ++t) fm.values(f, t) = get<float>(bytes, &pos);
  return fm;
}

void write_feature_cache(const std::string &path, const FeatureMatrix &fm) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  const std::string s = encode_feature_cache(fm);
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

FeatureMatrix read_feature_cache(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return decode_feature_cache(ss.str());
}

}  // namespace orna::dsp
