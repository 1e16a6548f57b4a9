// src/chunking/chunking.cc

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

#include "orna/chunking/chunking.h"

#include <algorithm>
#include <cstdio>

#include "json.hpp"

namespace orna::chunking {

namespace {
// Absorbs rounding in start + length so an event of exactly chunk length
// fits the chunk that starts at its onset.
constexpr double kFitTolerance = 1e-9;
}  // namespace

std::vector<ChunkPlan> plan_chunks(double duration, std::span<const Event> events,
                                   double length, const std::string &clip_id) {
  if (!(length > 0.0)) throw Error(ErrorKind::kInvalidArgument, "chunk length must be positive");
  if (!(duration > 0.0)) throw Error(ErrorKind::kInvalidArgument, "clip duration must be positive");
  std::vector<Event> ev(events.begin(), events.end());
  std::sort(ev.begin(), ev.end(), [](const Event &a, const Event &b) { return a.onset < b.onset; });
  for (const auto &e : ev) {
    if (e.offset > duration + 1e-9)
      throw Error(ErrorKind::kInvalidArgument, "event offset beyond clip duration");
  }

  std::vector<ChunkPlan> plans;
  double start = 0.0;
  size_t first = 0;  // first event that may still overlap the current chunk
  while (true) {
    ChunkPlan plan;
    plan.clip_id = clip_id;
    plan.index = static_cast<int>(plans.size());
    plan.start = start;
    plan.length = length;
    const double end = start + length;
    plan.audio_end = std::min(end, duration);
    double next = end;

    while (first < ev.size() && ev[first].offset <= start) ++first;
    for (size_t i = first; i < ev.size() && ev[i].onset < end; ++i) {
      const Event &e = ev[i];
      if (e.offset <= end + kFitTolerance) {
        plan.events.push_back({std::max(e.onset, start), std::min(e.offset, end), e.cls});
      } else if (e.onset > start && e.duration() <= length + kFitTolerance) {
        plan.dont_care_spans.push_back({e.onset, end, e.cls});
        next = e.onset;
      } else {
        plan.events.push_back({std::max(e.onset, start), end, e.cls});
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "event %.3f-%.3f (%s) is longer than the %.3f s chunk; kept labelled up to %.3f",
                      e.onset, e.offset, std::string(full_name(e.cls)).c_str(), length, end);
        plan.warnings.push_back({e, buf});
      }
    }
    plans.push_back(std::move(plan));
    if (end >= duration) break;
    start = next;
  }
  return plans;
}

FrameLabels rasterize(const ChunkPlan &chunk, const FrameGrid &grid, int frames,
                      bool use_dont_care) {
  FrameLabels y(frames, FrameSymbol::kBackground);
  const int valid = grid.valid_frames < 0 ? frames : std::min(grid.valid_frames, frames);
  for (int i = 0; i < frames; ++i) {
    const double c = chunk.start + grid.origin_seconds + i * grid.hop_seconds;
    if (i >= valid || c >= chunk.audio_end || c >= chunk.end()) {
      y[i] = FrameSymbol::kDontCare;
      continue;
    }
    for (const auto &span : chunk.dont_care_spans) {
      if (c >= span.start && c < span.end) {
        y[i] = use_dont_care ? FrameSymbol::kDontCare : to_symbol(span.cls);
        break;
      }
    }
    if (y[i] != FrameSymbol::kBackground) continue;
    for (const auto &e : chunk.events) {
      if (c >= e.onset && c < e.offset) {
        y[i] = to_symbol(e.cls);
        break;
      }
    }
  }
  return y;
}

FrameLabels rasterize_track(const LabelTrack &track, const FrameGrid &grid, int frames) {
  FrameLabels y(frames, FrameSymbol::kBackground);
  const int valid = grid.valid_frames < 0 ? frames : std::min(grid.valid_frames, frames);
  size_t j = 0;
  const auto &ev = track.events;
  for (int i = 0; i < frames; ++i) {
    if (i >= valid) {
      y[i] = FrameSymbol::kDontCare;
      continue;
    }
    const double c = grid.origin_seconds + i * grid.hop_seconds;
    while (j < ev.size() && ev[j].offset <= c) ++j;
    if (j < ev.size() && c >= ev[j].onset) y[i] = to_symbol(ev[j].cls);
  }
  return y;
}

int padded_frame_count(int frames, int layers) {
  const int m = 1 << layers;
  return (frames + m - 1) / m * m;
}

std::string chunk_plans_to_json(std::span<const ChunkPlan> plans) {
  using nlohmann::json;
  json out = json::array();
  for (const auto &p : plans) {
    json spans = json::array(), classes = json::array(), events = json::array(),
         warnings = json::array();
    for (const auto &s : p.dont_care_spans) {
      spans.push_back({s.start, s.end});
      classes.push_back(std::string(short_code(s.cls)));
    }
    for (const auto &e : p.events)
      events.push_back({{"onset", e.onset}, {"offset", e.offset}, {"label", std::string(short_code(e.cls))}});
    for (const auto &w : p.warnings) warnings.push_back(w.message);
    out.push_back({{"clip_id", p.clip_id},
                   {"k", p.index},
                   {"start", p.start},
                   {"length", p.length},
                   {"dont_care_spans", spans},
                   {"dont_care_classes", classes},
                   {"events", events},
                   {"warnings", warnings}});
  }
  return out.dump(2) + "\n";
}

}  // namespace orna::chunking
