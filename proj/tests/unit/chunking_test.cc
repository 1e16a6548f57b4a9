// tests/unit/chunking_test.cc

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

#include "doctest.h"
#include "json.hpp"
#include "orna/chunking/chunking.h"
#include "support/chunk_oracle.h"
#include "support/oracles.h"

using namespace orna;
using namespace orna::chunking;

namespace {

constexpr double kHop = 772.0 / 44100.0;

std::vector<ChunkPlan> plan(double duration, std::vector<Event> ev, double t = 10.0) {
  return plan_chunks(duration, ev, t, "c");
}

}  // namespace

TEST_CASE("no events gives fixed chunks") {
  const auto p = plan(20, {});
  REQUIRE(p.size() == 2);
  CHECK(p[0].start == 0.0);
  CHECK(p[1].start == 10.0);
  CHECK(p[1].audio_end == 20.0);
}

TEST_CASE("straddling event is masked then restarted") {
  const auto p = plan(20, {{9.2, 11.0, Ornament::kAndolan}});
  REQUIRE(p.size() >= 2);
  CHECK(p[0].start == 0.0);
  REQUIRE(p[0].dont_care_spans.size() == 1);
  CHECK(p[0].dont_care_spans[0] == DontCareSpan{9.2, 10.0, Ornament::kAndolan});
  CHECK(p[0].events.empty());
  CHECK(p[1].start == doctest::Approx(9.2));
  REQUIRE(p[1].events.size() == 1);
  CHECK(p[1].events[0] == Event{9.2, 11.0, Ornament::kAndolan});
}

TEST_CASE("event longer than a chunk breaks the loop with a warning") {
  const auto p = plan(20, {{0.5, 12.0, Ornament::kNyas}});
  REQUIRE(p.size() >= 2);
  REQUIRE(p[0].events.size() == 1);
  CHECK(p[0].events[0] == Event{0.5, 10.0, Ornament::kNyas});
  CHECK(p[0].warnings.size() == 1);
  CHECK(p[1].start == 10.0);
  REQUIRE(p[1].events.size() == 1);
  CHECK(p[1].events[0] == Event{10.0, 12.0, Ornament::kNyas});
}

TEST_CASE("onset at the chunk end belongs to the next chunk") {
  const auto p = plan(25, {{10.0, 11.0, Ornament::kGamak}});
  CHECK(p[0].events.empty());
  CHECK(p[0].dont_care_spans.empty());
  CHECK(p[1].start == 10.0);
  CHECK(p[1].events.size() == 1);
}

TEST_CASE("rasterization") {
  const FrameGrid grid{kHop, kHop, -1};
  SUBCASE("empty chunk is background apart from pads") {
    ChunkPlan c;
    c.length = 10;
    c.audio_end = 10;
    const auto y = rasterize(c, {kHop, kHop, 570}, 576);
    for (int i = 0; i < 570; ++i) CHECK(y[i] == FrameSymbol::kBackground);
    for (int i = 570; i < 576; ++i) CHECK(y[i] == FrameSymbol::kDontCare);
  }
  SUBCASE("event covering the whole chunk") {
    ChunkPlan c;
    c.length = 10;
    c.audio_end = 10;
    c.events = {{0.0, 10.0, Ornament::kNyas}};
    const auto y = rasterize(c, grid, 570);
    for (auto s : y) CHECK(s == FrameSymbol::kNyas);
  }
  SUBCASE("truncated event frames are masked by centre time") {
    const auto p = plan(20, {{9.2, 11.0, Ornament::kAndolan}});
    const auto y = rasterize(p[0], grid, 576);
    const auto y_off = rasterize(p[0], grid, 576, false);
    for (int i = 0; i < 576; ++i) {
      const double centre = kHop + i * kHop;
      const bool in_span = centre >= 9.2 && centre < 10.0;
      if (in_span) {
        CHECK(y[i] == FrameSymbol::kDontCare);
        CHECK(y_off[i] == FrameSymbol::kAndolan);
      } else if (centre < 9.2) {
        CHECK(y[i] == FrameSymbol::kBackground);
      } else {
        CHECK(y[i] == FrameSymbol::kDontCare);
      }
    }
  }
  SUBCASE("valid_frames and audio end") {
    ChunkPlan c;
    c.length = 10;
    c.audio_end = 5;
    const auto y = rasterize(c, FrameGrid{kHop, kHop, 100}, 576);
    CHECK(y[99] == FrameSymbol::kBackground);
    CHECK(y[100] == FrameSymbol::kDontCare);
  }
}

TEST_CASE("rasterize_track paints events at frame centres") {
  LabelTrack t;
  t.events = {{0.1, 0.2, Ornament::kKan}};
  const auto y = rasterize_track(t, FrameGrid{0.01, 0.005, -1}, 30);
  for (int i = 0; i < 30; ++i) {
    const double c = 0.005 + i * 0.01;
    CHECK((y[i] == FrameSymbol::kKan) == (c >= 0.1 && c < 0.2));
  }
}

TEST_CASE("padded frame count") {
  CHECK(padded_frame_count(570, 4) == 576);
  CHECK(padded_frame_count(576, 4) == 576);
  CHECK(padded_frame_count(1, 2) == 4);
}

TEST_CASE("chunking contract over random tracks") {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const double duration = rng.uniform(30, 120);
    const double t = rng.bernoulli(0.2) ? rng.uniform(2, 9) : 10.0;
    const auto ev = testing::random_events(&rng, duration, 0.1, 3.0, 2.0);
    const auto p = plan_chunks(duration, ev, t, "r");
    INFO("case " << i);
    CHECK(testing::chunk_plan_breach(duration, ev, t, p) == "");
    CHECK(plan_chunks(duration, ev, t, "r") == p);
  }
}

TEST_CASE("chunk plans serialise to JSON") {
  const auto p = plan(20, {{9.2, 11.0, Ornament::kAndolan}});
  const auto j = nlohmann::json::parse(chunk_plans_to_json(p));
  REQUIRE(j.size() == p.size());
  CHECK(j[0]["k"] == 0);
  CHECK(j[0]["dont_care_spans"][0][0].get<double>() == doctest::Approx(9.2));
  CHECK(j[1]["events"][0]["label"] == "An");
}

TEST_CASE("invalid chunking inputs") {
  CHECK_THROWS_AS(plan_chunks(0, {}, 10), Error);
  CHECK_THROWS_AS(plan_chunks(10, {}, 0), Error);
  std::vector<Event> ev = {{5, 12, Ornament::kNyas}};
  CHECK_THROWS_AS(plan_chunks(10, ev, 10), Error);
}
