// include/orna/core/wav.h

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

#ifndef ORNA_CORE_WAV_H_
#define ORNA_CORE_WAV_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace orna {

struct WavData {
  int sample_rate = 44100;
  std::vector<float> samples;  // mono, in [-1, 1]

  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

// Accepts mono RIFF/WAVE with 16/24/32-bit PCM or 32-bit IEEE float
// (plain or WAVE_FORMAT_EXTENSIBLE). Throws Error(kFormat) otherwise.
WavData decode_wav(std::string_view bytes);
WavData read_wav(const std::string &path);

// 16-bit PCM, samples clipped to [-1, 1].
std::string encode_wav_pcm16(const WavData &wav);
void write_wav_pcm16(const std::string &path, const WavData &wav);

}  // namespace orna

#endif  // ORNA_CORE_WAV_H_
