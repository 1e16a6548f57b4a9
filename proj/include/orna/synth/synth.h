// include/orna/synth/synth.h

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

#ifndef ORNA_SYNTH_SYNTH_H_
#define ORNA_SYNTH_SYNTH_H_

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "orna/core/manifest.h"
#include "orna/core/rules.h"
#include "orna/core/types.h"

namespace orna::synth {

// Pitch parameters of one rendered ornament. Unused fields are ignored by
// classes that do not need them (e.g. rate for Meend).
struct OrnamentSpec {
  Ornament cls = Ornament::kNyas;
  double duration = 1.0;
  double base_hz = 261.63;
  double target_hz = 0.0;  // Meend glide target, Kan touch note; 0 picks a neighbour
  double rate_hz = 0.0;    // Andolan / Gamak oscillation, Murki note rate
  double depth_semitones = 0.0;
};

struct ToneConfig {
  int sample_rate = 44100;
  double amplitude = 0.25;
  std::array<double, 3> partials = {1.0, 0.5, 0.3};
  double noise = 0.002;  // white noise standard deviation
};

struct Rendered {
  std::vector<float> samples;
  Event event;  // exact span of the ornament within `samples`
};

// Renders a single ornament with short fades. Throws Error(kRuleViolation)
// if the duration breaks `rules` and Error(kInvalidArgument) on bad pitch
// parameters.
Rendered synth_ornament(const OrnamentSpec &spec, std::uint64_t seed, const ToneConfig &tone = {},
                        const DurationRules &rules = DurationRules::defaults());

struct SingerProfile {
  std::string name;
  double tonic_hz = 146.83;
  std::vector<std::string> ragas;
  std::pair<double, double> andolan_rate_hz;
  std::pair<double, double> gamak_rate_hz;
  double tonic_jitter_semitones = 0.0;  // per-clip tonic drawn within +-this
};

// Two pseudo-singers differing in tonic and oscillation rates.
const std::vector<SingerProfile> &default_singers();

// Semitone offsets from the tonic of a raga's scale within one octave.
const std::vector<int> &raga_scale(const std::string &raga);

// Relative class frequencies, indexed by Ornament.
struct ClassMix {
  std::array<double, kNumOrnaments> weights = {1, 1, 1, 1, 1, 1};
  // "uniform", a single class code ("G"), or "K=1,G=2" style weights.
  static ClassMix parse(const std::string &text);
};

struct DatasetConfig {
  int n_clips = 40;
  double clip_seconds = 10.0;
  ClassMix mix;
  std::uint64_t seed = 0;
  std::string prefix = "syn";
  double tonic_shift_semitones = 0.0;  // added to every singer's tonic
  ToneConfig tone;
};

struct SynthClip {
  ClipManifestEntry meta;
  std::vector<float> samples;
  LabelTrack track;
};

// Clips alternate between the pseudo-singers. Each interleaves plain notes
// (Background) with ornaments whose classes are drawn to track the mix
// across the whole dataset. Deterministic per config.
std::vector<SynthClip> synth_clips(const DatasetConfig &cfg);

// Writes wav/<id>.wav (16-bit PCM), labels/<id>.tsv and manifest.json with
// paths relative to out_dir.
Manifest synth_dataset(const DatasetConfig &cfg, const std::string &out_dir);

}  // namespace orna::synth

#endif  // ORNA_SYNTH_SYNTH_H_
