// tests/unit/core_test.cc

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

#include <algorithm>
#include <filesystem>
#include <map>

#include "doctest.h"
#include "orna/core/label_io.h"
#include "orna/core/manifest.h"
#include "orna/core/rules.h"
#include "orna/core/wav.h"
#include "support/oracles.h"

using namespace orna;

namespace {

ErrorKind parse_error_kind(std::string_view text, int *line = nullptr) {
  try {
    parse_label_track(text);
  } catch (const Error &e) {
    if (line) *line = e.line();
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::kIo;
}

std::map<std::pair<int, size_t>, int> violation_multiset(const std::vector<Violation> &vs) {
  std::map<std::pair<int, size_t>, int> m;
  for (const auto &v : vs) ++m[{static_cast<int>(v.type), v.event_index}];
  return m;
}

}  // namespace

TEST_CASE("label parsing") {
  const LabelTrack t = parse_label_track("0.500000\t0.800000\tK\n");
  REQUIRE(t.events.size() == 1);
  CHECK(t.events[0] == Event{0.5, 0.8, Ornament::kKan});
  CHECK(parse_label_track("").events.empty());

  int line = 0;
  CHECK(parse_error_kind("1.0\t0.9\tG", &line) == ErrorKind::kOffsetBeforeOnset);
  CHECK(line == 1);
  CHECK(parse_error_kind("0.1\t0.2\tK\n0.5\t0.7\tX\n", &line) == ErrorKind::kUnknownClass);
  CHECK(line == 2);
  CHECK(parse_error_kind("0.1\t0.2\n") == ErrorKind::kMalformedLine);
  CHECK(parse_error_kind("0.1\tabc\tK\n") == ErrorKind::kMalformedLine);
  CHECK(parse_error_kind("0.0\t1.0\tK\n0.5\t1.5\tG\n", &line) == ErrorKind::kOverlap);
  CHECK(line == 2);
}

TEST_CASE("label parsing accepts long names, CRLF and Audacity frequency lines") {
  const LabelTrack t = parse_label_track("0.1\t0.2\tKan\r\n\\\t100\t200\n1.0\t2.5\tAndolan\n");
  REQUIRE(t.events.size() == 2);
  CHECK(t.events[0].cls == Ornament::kKan);
  CHECK(t.events[1].cls == Ornament::kAndolan);
}

TEST_CASE("label writing") {
  LabelTrack t;
  t.events = {{0.5, 0.8, Ornament::kKan}};
  CHECK(write_label_track(t) == "0.500000\t0.800000\tK\n");
  CHECK(write_label_track(LabelTrack{}).empty());
  t.events = {{2.0, 3.5, Ornament::kNyas}, {0.5, 0.8, Ornament::kKan}};
  CHECK(write_label_track(t) == "0.500000\t0.800000\tK\n2.000000\t3.500000\tH\n");
}

TEST_CASE("label round trip over random tracks") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    LabelTrack t;
    t.events = testing::random_events(&rng, rng.uniform(5, 60), 0.05, 3.0, 1.0);
    // Label files carry microseconds.
    for (auto &e : t.events) {
      e.onset = std::round(e.onset * 1e6) / 1e6;
      e.offset = std::round(e.offset * 1e6) / 1e6;
    }
    CHECK(parse_label_track(write_label_track(t)) == t);
  }
}

TEST_CASE("duration rules") {
  const DurationRules r = DurationRules::defaults();
  auto check = [&](double d, Ornament o) {
    LabelTrack t;
    t.events = {{1.0, 1.0 + d, o}};
    return validate_events(t, r);
  };
  CHECK(check(0.30, Ornament::kKan).empty());
  const auto too_long = check(0.40, Ornament::kKan);
  REQUIRE(too_long.size() == 1);
  CHECK(too_long[0].type == ViolationType::kTooLong);
  const auto too_short = check(0.8, Ornament::kAndolan);
  REQUIRE(too_short.size() == 1);
  CHECK(too_short[0].type == ViolationType::kTooShort);
  CHECK(check(1.0, Ornament::kAndolan).empty());
}

TEST_CASE("overlap and order-insensitivity of validation") {
  LabelTrack t;
  t.events = {{0.0, 1.2, Ornament::kAndolan}, {1.0, 1.3, Ornament::kKan}};
  const auto vs = validate_events(t, DurationRules::defaults());
  CHECK(std::any_of(vs.begin(), vs.end(), [](const Violation &v) { return v.type == ViolationType::kOverlap; }));

  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    LabelTrack a;
    a.events = testing::random_events(&rng, 40, 0.1, 2.5, 0.5);
    LabelTrack b = a;
    rng.shuffle(std::span<Event>(b.events));
    CHECK(violation_multiset(validate_events(a, DurationRules::defaults())) ==
          violation_multiset(validate_events(b, DurationRules::defaults())));
  }
}

TEST_CASE("normalize_track sorts and rejects overlap") {
  LabelTrack t;
  t.events = {{2, 3, Ornament::kNyas}, {0, 1, Ornament::kKan}, {1, 2, Ornament::kMeend}};
  normalize_track(&t);
  CHECK(t.events[0].onset == 0);
  CHECK(t.events[2].onset == 2);
  t.events.push_back({2.5, 4, Ornament::kGamak});
  CHECK_THROWS_AS(normalize_track(&t), Error);
}

TEST_CASE("manifest round trip and duplicates") {
  const std::string text = R"({"clips": [
    {"clip_id": "a", "wav_path": "wav/a.wav", "label_path": "labels/a.tsv", "singer": "singer1",
     "raga": "Bhoopali", "tonic": 146.83, "split_tag": "train"},
    {"clip_id": "b", "wav_path": "/abs/b.wav", "singer": "singer2", "raga": "Bhairav", "tala": "teental",
     "bpm": 80, "split_tag": ""}]})";
  const Manifest m = parse_manifest(text, "/data");
  REQUIRE(m.clips.size() == 2);
  CHECK(m.clips[0].tonic_hz.value() == doctest::Approx(146.83));
  CHECK(m.clips[1].tala.value() == "teental");
  CHECK(m.resolve("wav/a.wav") == "/data/wav/a.wav");
  CHECK(m.resolve("/abs/b.wav") == "/abs/b.wav");
  CHECK(m.find("b") != nullptr);
  CHECK(m.find("zzz") == nullptr);
  CHECK(parse_manifest(write_manifest(m), "/data").clips == m.clips);
  CHECK_THROWS_AS(parse_manifest(R"({"clips": [{"clip_id": "a", "wav_path": "x"}, {"clip_id": "a", "wav_path": "y"}]})"),
                  Error);
  CHECK_THROWS_AS(parse_manifest("{not json"), Error);
}

TEST_CASE("wav round trip") {
  WavData w;
  w.samples = testing::sine(440, 0.1);
  const WavData r = decode_wav(encode_wav_pcm16(w));
  CHECK(r.sample_rate == 44100);
  REQUIRE(r.samples.size() == w.samples.size());
  double worst = 0;
  for (size_t i = 0; i < w.samples.size(); ++i) worst = std::max(worst, double(std::abs(r.samples[i] - w.samples[i])));
  CHECK(worst < 1.0 / 16384);
  CHECK_THROWS_AS(decode_wav("RIFF"), Error);
}
