// src/synth/synth.cc

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

#include "orna/synth/synth.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "orna/core/label_io.h"
#include "orna/core/wav.h"
#include "orna/nn/random.h"

namespace orna::synth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Contour of one ornament in semitones relative to the tonic.
struct Shape {
  Ornament cls = Ornament::kNyas;
  double base = 0.0;
  double target = 0.0;     // Meend end note, Kan touch note
  double rate = 0.0;       // Hz; notes per second for Murki
  double depth = 0.0;      // semitones
  double touch = 0.3;      // Kan: fraction of the event spent on the touch note
  std::vector<double> cluster;  // Murki notes in playing order
};

double semitone_value(const Shape &s, double tau, double duration) {
  switch (s.cls) {
    case Ornament::kKan:
      return tau < s.touch * duration ? s.target : s.base;
    case Ornament::kMeend:
      return s.base + (s.target - s.base) * 0.5 * (1.0 - std::cos(std::numbers::pi * tau / duration));
    case Ornament::kMurki: {
      const size_t k = static_cast<size_t>(tau * s.rate);
      return s.cluster[k % s.cluster.size()];
    }
    case Ornament::kNyas:
      return s.base;
    case Ornament::kAndolan:
      return s.base - s.depth * 0.5 * (1.0 - std::cos(kTwoPi * s.rate * tau));
    case Ornament::kGamak:
      return s.base + s.depth * 0.5 * (1.0 - std::cos(kTwoPi * s.rate * tau));
  }
  return s.base;
}

void append_shape(std::vector<double> *semis, const Shape &s, int n, int sr) {
  const double duration = static_cast<double>(n) / sr;
  for (int i = 0; i < n; ++i) semis->push_back(semitone_value(s, static_cast<double>(i) / sr, duration));
}

void append_flat(std::vector<double> *semis, double semitone, int n) { semis->insert(semis->end(), n, semitone); }

// Additive tone with phase-continuous pitch, fades of 10 ms at both ends.
std::vector<float> render(const std::vector<double> &semis, double ref_hz, const ToneConfig &tone, Rng *rng) {
  const int sr = tone.sample_rate;
  double norm = 0.0;
  for (double a : tone.partials) norm += a;
  const size_t n = semis.size();
  const size_t fade = std::min<size_t>(n / 2, static_cast<size_t>(0.01 * sr));
  std::vector<float> out(n);
  double phase = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double f = ref_hz * std::exp2(semis[i] / 12.0);
    double v = 0.0;
    for (size_t k = 0; k < tone.partials.size(); ++k) v += tone.partials[k] * std::sin((k + 1) * phase);
    double env = 1.0;
    if (i < fade) env = static_cast<double>(i) / fade;
    if (n - 1 - i < fade) env = std::min(env, static_cast<double>(n - 1 - i) / fade);
    out[i] = static_cast<float>(tone.amplitude * env * v / norm + tone.noise * rng->normal());
    phase += kTwoPi * f / sr;
    if (phase > kTwoPi) phase -= kTwoPi;
  }
  return out;
}

double semitones_between(double from_hz, double to_hz) { return 12.0 * std::log2(to_hz / from_hz); }

int samples_for(double seconds, int sr) { return static_cast<int>(std::llround(seconds * sr)); }

std::string lower(std::string s) {
  for (auto &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Archetype duration ranges, inside the annotation rules.
std::pair<double, double> duration_range(Ornament o) {
  switch (o) {
    case Ornament::kKan: return {0.15, 0.30};
    case Ornament::kMeend: return {0.50, 1.20};
    case Ornament::kMurki: return {0.45, 0.95};
    case Ornament::kNyas: return {0.80, 1.80};
    case Ornament::kAndolan: return {1.10, 2.20};
    case Ornament::kGamak: return {0.80, 1.60};
  }
  return {0.5, 1.0};
}

// Notes available to a raga: its scale from the lower fifth to an octave
// and a third above the tonic.
std::vector<double> note_pool(const std::string &raga) {
  std::vector<double> pool;
  for (int oct = -1; oct <= 1; ++oct)
    for (int s : raga_scale(raga)) {
      const int v = s + 12 * oct;
      if (v >= -5 && v <= 16) pool.push_back(v);
    }
  std::sort(pool.begin(), pool.end());
  return pool;
}

// Each raga favours two scale degrees of the middle octave for each
// ornament; returns their indices into note_pool(raga).
std::array<std::vector<int>, kNumOrnaments> idiomatic_notes(const std::string &raga) {
  const auto &scale = raga_scale(raga);
  const auto pool = note_pool(raga);
  const int n = static_cast<int>(scale.size());
  std::array<std::vector<int>, kNumOrnaments> out;
  for (int k = 0; k < kNumOrnaments; ++k)
    for (int d : {(2 * k) % n, (2 * k + 3) % n}) {
      const auto it = std::find(pool.begin(), pool.end(), static_cast<double>(scale[d]));
      out[k].push_back(static_cast<int>(it - pool.begin()));
    }
  return out;
}

constexpr double kIdiomRate = 0.85;

// Clip-level state while composing a melody.
struct Composer {
  const SingerProfile &singer;
  std::vector<double> pool;
  std::array<std::vector<int>, kNumOrnaments> idioms;
  Rng &rng;
  int sr;
  std::vector<double> semis;
  int note = 0;  // index into pool

  int clamp_index(int i) const { return std::clamp(i, 0, static_cast<int>(pool.size()) - 1); }

  // A different scale note within three steps.
  int step_from(int i) {
    for (;;) {
      const int j = clamp_index(i + static_cast<int>(rng.below(7)) - 3);
      if (j != i) return j;
    }
  }

  void background(int notes) {
    for (int k = 0; k < notes; ++k) {
      note = step_from(note);
      append_flat(&semis, pool[note], samples_for(rng.uniform(0.3, 0.5), sr));
    }
  }

  // Appends an ornament of `n` samples starting at the current end.
  void ornament(Ornament cls, int n) {
    Shape s;
    s.cls = cls;
    if (rng.bernoulli(kIdiomRate)) {
      const auto &ids = idioms[index_of(cls)];
      note = ids[rng.below(ids.size())];
    } else {
      note = step_from(note);
    }
    s.base = pool[note];
    switch (cls) {
      case Ornament::kKan: {
        const int up = rng.bernoulli(0.7) ? 1 : -1;
        const int touch = clamp_index(note + up) == note ? clamp_index(note - up) : clamp_index(note + up);
        s.target = pool[touch];
        s.touch = rng.uniform(0.25, 0.45);
        break;
      }
      case Ornament::kMeend: {
        const int dir = rng.bernoulli(0.5) ? 1 : -1;
        int end = clamp_index(note + dir * static_cast<int>(2 + rng.below(3)));
        if (std::abs(end - note) < 2) end = clamp_index(note - dir * static_cast<int>(2 + rng.below(3)));
        s.target = pool[end];
        note = end;
        break;
      }
      case Ornament::kMurki: {
        const int a = note, b = clamp_index(note + 1) == note ? note - 1 : note + 1;
        if (rng.bernoulli(0.5)) {
          s.cluster = {pool[b], pool[a], pool[b], pool[a]};
        } else {
          const int c = clamp_index(note - 1) == note ? clamp_index(note + 2) : note - 1;
          s.cluster = {pool[b], pool[a], pool[c], pool[a]};
        }
        s.rate = rng.uniform(10.0, 14.0);
        break;
      }
      case Ornament::kNyas:
        break;
      case Ornament::kAndolan:
        s.rate = rng.uniform(singer.andolan_rate_hz.first, singer.andolan_rate_hz.second);
        s.depth = rng.uniform(0.4, 0.9);
        break;
      case Ornament::kGamak:
        s.rate = rng.uniform(singer.gamak_rate_hz.first, singer.gamak_rate_hz.second);
        s.depth = rng.uniform(2.0, 3.0);
        break;
    }
    append_shape(&semis, s, n, sr);
  }
};

}  // namespace

const std::vector<SingerProfile> &default_singers() {
  static const std::vector<SingerProfile> singers = {
      {"singer1", 146.83, {"Bageshree", "Bhoopali"}, {1.0, 2.0}, {5.0, 6.5}},
      {"singer2", 220.00, {"Bhairav", "Bhoopali", "Darbari"}, {2.0, 3.0}, {6.5, 8.0}},
  };
  return singers;
}

const std::vector<int> &raga_scale(const std::string &raga) {
  static const std::vector<int> bhoopali = {0, 2, 4, 7, 9};
  static const std::vector<int> bageshree = {0, 2, 3, 5, 7, 9, 10};
  static const std::vector<int> bhairav = {0, 1, 4, 5, 7, 8, 11};
  static const std::vector<int> darbari = {0, 2, 3, 5, 7, 8, 10};
  static const std::vector<int> chromatic = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  const std::string r = lower(raga);
  if (r == "bhoopali" || r == "bhupali") return bhoopali;
  if (r == "bageshree" || r == "bageshri") return bageshree;
  if (r == "bhairav") return bhairav;
  if (r == "darbari") return darbari;
  return chromatic;
}

ClassMix ClassMix::parse(const std::string &text) {
  ClassMix m;
  if (text.empty() || lower(text) == "uniform") return m;
  m.weights.fill(0.0);
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const size_t eq = item.find('=');
    const std::string code = item.substr(0, eq);
    const auto cls = parse_ornament(code);
    if (!cls) throw Error(ErrorKind::kUnknownClass, "class mix: unknown class '" + code + "'");
    double w = 1.0;
    if (eq != std::string::npos) {
      try {
        w = std::stod(item.substr(eq + 1));
      } catch (const std::exception &) {
        throw Error(ErrorKind::kInvalidArgument, "class mix: bad weight in '" + item + "'");
      }
    }
    if (!(w >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "class mix: weights must be non-negative");
    m.weights[index_of(*cls)] = w;
    pos = comma + 1;
  }
  double total = 0.0;
  for (double w : m.weights) total += w;
  if (!(total > 0.0)) throw Error(ErrorKind::kInvalidArgument, "class mix: all weights are zero");
  return m;
}

Rendered synth_ornament(const OrnamentSpec &spec, std::uint64_t seed, const ToneConfig &tone,
                        const DurationRules &rules) {
  if (!rules.allows(spec.cls, spec.duration))
    throw Error(ErrorKind::kRuleViolation, std::string(full_name(spec.cls)) + " of " +
                                               std::to_string(spec.duration) + " s breaks the duration rules");
  if (!(spec.base_hz > 0.0)) throw Error(ErrorKind::kInvalidArgument, "base_hz must be positive");
  Rng rng(seed);
  Shape s;
  s.cls = spec.cls;
  const double ref = spec.base_hz;
  const double target = spec.target_hz > 0.0 ? semitones_between(ref, spec.target_hz) : 0.0;
  switch (spec.cls) {
    case Ornament::kKan:
      s.target = spec.target_hz > 0.0 ? target : 2.0;
      s.touch = 0.35;
      break;
    case Ornament::kMeend:
      s.target = spec.target_hz > 0.0 ? target : 4.0;
      break;
    case Ornament::kMurki:
      s.cluster = {2.0, 0.0, -1.0, 0.0};
      s.rate = spec.rate_hz > 0.0 ? spec.rate_hz : 12.0;
      break;
    case Ornament::kNyas:
      break;
    case Ornament::kAndolan:
      s.rate = spec.rate_hz > 0.0 ? spec.rate_hz : 1.5;
      s.depth = spec.depth_semitones > 0.0 ? spec.depth_semitones : 0.6;
      break;
    case Ornament::kGamak:
      s.rate = spec.rate_hz > 0.0 ? spec.rate_hz : 6.5;
      s.depth = spec.depth_semitones > 0.0 ? spec.depth_semitones : 2.5;
      break;
  }
  const int n = samples_for(spec.duration, tone.sample_rate);
  std::vector<double> semis;
  append_shape(&semis, s, n, tone.sample_rate);
  Rendered out;
  out.samples = render(semis, ref, tone, &rng);
  out.event = {0.0, static_cast<double>(n) / tone.sample_rate, spec.cls};
  return out;
}

std::vector<SynthClip> synth_clips(const DatasetConfig &cfg) {
  if (cfg.n_clips < 1) throw Error(ErrorKind::kInvalidArgument, "synth: need at least one clip");
  if (!(cfg.clip_seconds >= 2.0)) throw Error(ErrorKind::kInvalidArgument, "synth: clips must be >= 2 s");
  double weight_total = 0.0;
  for (double w : cfg.mix.weights) weight_total += w;
  if (!(weight_total > 0.0)) throw Error(ErrorKind::kInvalidArgument, "synth: empty class mix");

  const int sr = cfg.tone.sample_rate;
  const auto &singers = default_singers();
  std::array<long, kNumOrnaments> counts{};
  long placed = 0;
  Rng root(cfg.seed);
  std::vector<SynthClip> clips;
  for (int c = 0; c < cfg.n_clips; ++c) {
    Rng rng = root.split();
    const SingerProfile &singer = singers[c % singers.size()];
    const std::string raga = singer.ragas[(c / singers.size()) % singer.ragas.size()];
    const double shift = cfg.tonic_shift_semitones + rng.uniform(-1.0, 1.0) * singer.tonic_jitter_semitones;
    const double tonic = singer.tonic_hz * std::exp2(shift / 12.0);

    Composer comp{singer, note_pool(raga), idiomatic_notes(raga), rng, sr, {}, 0};
    comp.note = static_cast<int>(std::find(comp.pool.begin(), comp.pool.end(), 0.0) - comp.pool.begin());
    const int total = samples_for(cfg.clip_seconds, sr);
    const int tail = samples_for(0.3, sr);
    LabelTrack track;
    char id[64];
    std::snprintf(id, sizeof(id), "%s_%04d", cfg.prefix.c_str(), c);
    track.clip_id = id;

    comp.background(1 + static_cast<int>(rng.below(2)));
    for (;;) {
      // Most under-represented class relative to the mix, ties broken at random.
      int best = -1;
      double best_gap = -1e300;
      for (int k = 0; k < kNumOrnaments; ++k) {
        if (cfg.mix.weights[k] <= 0.0) continue;
        const double gap = cfg.mix.weights[k] / weight_total * (placed + 1) - counts[k] + 1e-6 * rng.uniform();
        if (gap > best_gap) {
          best_gap = gap;
          best = k;
        }
      }
      const Ornament cls = static_cast<Ornament>(best);
      const auto [lo, hi] = duration_range(cls);
      const int n = samples_for(rng.uniform(lo, hi), sr);
      const int onset = static_cast<int>(comp.semis.size());
      if (onset + n + tail > total) break;
      comp.ornament(cls, n);
      track.events.push_back({static_cast<double>(onset) / sr, static_cast<double>(onset + n) / sr, cls});
      ++counts[best];
      ++placed;
      comp.background(1 + static_cast<int>(rng.below(3)));
      if (static_cast<int>(comp.semis.size()) >= total) break;
    }
    while (static_cast<int>(comp.semis.size()) < total) comp.background(1);
    comp.semis.resize(total);

    SynthClip clip;
    clip.samples = render(comp.semis, tonic, cfg.tone, &rng);
    clip.track = std::move(track);
    clip.meta.clip_id = id;
    clip.meta.wav_path = "wav/" + std::string(id) + ".wav";
    clip.meta.label_path = "labels/" + std::string(id) + ".tsv";
    clip.meta.singer = singer.name;
    clip.meta.raga = raga;
    clip.meta.tonic_hz = tonic;
    clips.push_back(std::move(clip));
  }
  return clips;
}

Manifest synth_dataset(const DatasetConfig &cfg, const std::string &out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(out_dir) / "wav");
  fs::create_directories(fs::path(out_dir) / "labels");
  Manifest m;
  m.base_dir = out_dir;
  for (auto &clip : synth_clips(cfg)) {
    WavData wav;
    wav.sample_rate = cfg.tone.sample_rate;
    wav.samples = std::move(clip.samples);
    write_wav_pcm16((fs::path(out_dir) / clip.meta.wav_path).string(), wav);
    write_label_file((fs::path(out_dir) / clip.meta.label_path).string(), clip.track);
    m.clips.push_back(clip.meta);
  }
  write_manifest_file((fs::path(out_dir) / "manifest.json").string(), m);
  return m;
}

}  // namespace orna::synth
