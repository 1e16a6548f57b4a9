// include/orna/dsp/feature_cache.h

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

#ifndef ORNA_DSP_FEATURE_CACHE_H_
#define ORNA_DSP_FEATURE_CACHE_H_

#include <string>
#include <string_view>

#include "orna/dsp/chroma.h"

namespace orna::dsp {

// Layout: "ORNF", u32 version, u32 F, u32 T, f64 hop seconds, then F*T
// little-endian float32 values in row-major order.
inline constexpr std::uint32_t kFeatureCacheVersion = 1;

std::string encode_feature_cache(const FeatureMatrix &fm);
// Restores values and hop; the frame origin is not stored and is left at
// the default half-window of the standard configuration.
FeatureMatrix decode_feature_cache(std::string_view bytes);

void write_feature_cache(const std::string &path, const FeatureMatrix &fm);
FeatureMatrix read_feature_cache(const std::string &path);

}  // namespace orna::dsp

#endif  // ORNA_DSP_FEATURE_CACHE_H_
