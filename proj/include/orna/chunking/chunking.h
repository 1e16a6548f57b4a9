// include/orna/chunking/chunking.h

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

#ifndef ORNA_CHUNKING_CHUNKING_H_
#define ORNA_CHUNKING_CHUNKING_H_

#include <span>
#include <string>
#include <vector>

#include "orna/core/types.h"

namespace orna::chunking {

// [start, end) masked because an event is cut by the chunk's right edge.
// `cls` is the class of the cut event, kept for the no-mask ablation.
struct DontCareSpan {
  double start = 0.0;
  double end = 0.0;
  Ornament cls = Ornament::kKan;
  bool operator==(const DontCareSpan &) const = default;
};

// An event longer than the chunk length could not be kept whole anywhere.
struct ChunkWarning {
  Event event;
  std::string message;
  bool operator==(const ChunkWarning &) const = default;
};

struct ChunkPlan {
  std::string clip_id;
  int index = 0;
  double start = 0.0;
  double length = 10.0;
  double audio_end = 0.0;  // min(start + length, clip duration)
  std::vector<DontCareSpan> dont_care_spans;
  std::vector<Event> events;  // class-labelled parts, clipped to the chunk
  std::vector<ChunkWarning> warnings;

  double end() const { return start + length; }
  bool operator==(const ChunkPlan &) const = default;
};

// Boundary-preserving chunking. A chunk that would cut an event starting
// inside it ends in a don't-care span and the next chunk starts at that
// event's onset. Events longer than `length` keep their class up to the
// chunk edge and the next chunk starts at the edge (with a warning), which
// guarantees progress. An event whose onset equals the chunk end belongs to
// the next chunk. Events must be valid with offsets <= duration.
std::vector<ChunkPlan> plan_chunks(double duration, std::span<const Event> events,
                                   double length, const std::string &clip_id = "");

struct FrameGrid {
  double hop_seconds = 772.0 / 44100.0;
  double origin_seconds = 772.0 / 44100.0;  // centre of frame 0 after the chunk start
  int valid_frames = -1;                    // frames backed by audio; -1 = all
};

// Per-frame targets for one chunk: a frame whose centre lies in a
// class-labelled event gets its class, inside a don't-care span gets the
// don't-care mark (or the cut event's class when use_dont_care is false),
// otherwise Background. Frames past the audio, past the chunk end or past
// valid_frames are always don't-care.
FrameLabels rasterize(const ChunkPlan &chunk, const FrameGrid &grid, int frames,
                      bool use_dont_care = true);

// Whole-clip targets on a uniform grid (no masking).
FrameLabels rasterize_track(const LabelTrack &track, const FrameGrid &grid, int frames);

// Smallest multiple of 2^layers that is >= frames.
int padded_frame_count(int frames, int layers);

std::string chunk_plans_to_json(std::span<const ChunkPlan> plans);

}  // namespace orna::chunking

#endif  // ORNA_CHUNKING_CHUNKING_H_
