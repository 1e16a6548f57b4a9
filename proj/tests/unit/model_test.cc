// tests/unit/model_test.cc

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

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "orna/chunking/chunking.h"
#include "orna/model/checkpoint.h"
#include "orna/model/decode.h"
#include "orna/model/inference.h"
#include "orna/model/loss.h"
#include "orna/model/trainer.h"
#include "support/gradcheck.h"
#include "support/oracles.h"
#include "support/synth_data.h"

using namespace orna;
using namespace orna::model;
using orna::testing::random_matrix;

namespace {

ModelConfig small_model() {
  ModelConfig c;
  c.encoder_filters = {8, 16};
  c.decoder_filters = {16, 8};
  c.encoder_dilations = {1, 2};
  c.decoder_dilations = {2, 1};
  return c;
}

Eigen::MatrixXf uniform_probs(int c, int t) { return Eigen::MatrixXf::Constant(c, t, 1.0f / c); }

std::vector<TrainingExample> synth_examples(int n, std::uint64_t seed, const ModelConfig &mc,
                                            const FeaturePipeline &p = {}, double shift = 0.0) {
  auto d = orna::testing::small_dataset(n, seed);
  d.tonic_shift_semitones = shift;
  std::vector<TrainingExample> out;
  for (const auto &c : orna::testing::synth_loaded(d, p)) {
    auto ex = make_chunk_examples(c.features, c.duration, c.truth, p, mc);
    out.insert(out.end(), ex.begin(), ex.end());
  }
  return out;
}

}  // namespace

TEST_CASE("forward keeps T, normalises columns and halves T per pool") {
  ModelConfig mc;
  EdTcn<float> net(mc);
  Rng rng(3);
  net.initialize(&rng);
  const Eigen::MatrixXf x = random_matrix(&rng, 120, 576, 0, 1).cast<float>();
  ForwardCache<float> cache;
  const auto probs = net.forward(x, Mode::kEval, nullptr, &cache);
  CHECK(probs.rows() == 7);
  CHECK(probs.cols() == 576);
  CHECK(cache.encoder_frames == std::vector<int>{288, 144, 72, 36});
  for (int t = 0; t < probs.cols(); ++t) CHECK(probs.col(t).sum() == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("forward is deterministic and rejects bad shapes") {
  ModelConfig mc = small_model();
  mc.dropout = 0.0;
  EdTcn<float> net(mc);
  Rng rng(4);
  net.initialize(&rng);
  const Eigen::MatrixXf x = random_matrix(&rng, 120, 64, 0, 1).cast<float>();
  Rng a(9), b(9);
  const Eigen::MatrixXf p1 = net.forward(x, Mode::kTrain, &a);
  const Eigen::MatrixXf p2 = net.forward(x, Mode::kTrain, &b);
  CHECK(p1 == p2);
  CHECK(net.forward(x, Mode::kEval, nullptr) == net.forward(x, Mode::kEval, nullptr));

  const Eigen::MatrixXf odd = random_matrix(&rng, 120, 66, 0, 1).cast<float>();
  CHECK_THROWS_AS(net.forward(odd, Mode::kEval, nullptr), Error);
  const Eigen::MatrixXf narrow = random_matrix(&rng, 12, 64, 0, 1).cast<float>();
  CHECK_THROWS_AS(net.forward(narrow, Mode::kEval, nullptr), Error);
}

TEST_CASE("masked cross-entropy closed forms") {
  SUBCASE("uniform over seven classes, one valid frame") {
    FrameLabels y = {FrameSymbol::kMeend, FrameSymbol::kDontCare, FrameSymbol::kDontCare};
    const auto r = masked_cross_entropy<float>(uniform_probs(7, 3), y);
    CHECK(r.loss == doctest::Approx(std::log(7.0)).epsilon(1e-6));
    CHECK(r.valid_frames == 1);
  }
  SUBCASE("all frames masked") {
    FrameLabels y(4, FrameSymbol::kDontCare);
    try {
      masked_cross_entropy<float>(uniform_probs(7, 4), y);
      FAIL("expected NoValidFrames");
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::kNoValidFrames);
    }
  }
  SUBCASE("two valid frames at 0.5 and 0.25") {
    Eigen::MatrixXd p = Eigen::MatrixXd::Constant(7, 2, 0.5 / 6);
    p(2, 0) = 0.5;
    p.col(1).setConstant(0.75 / 6);
    p(5, 1) = 0.25;
    const FrameLabels y = {FrameSymbol::kMeend, FrameSymbol::kAndolan};
    const auto r = masked_cross_entropy<double>(p, y);
    CHECK(r.loss == doctest::Approx((std::log(2.0) + std::log(4.0)) / 2).epsilon(1e-12));
    CHECK(r.loss == doctest::Approx(1.03972).epsilon(1e-5));
  }
  SUBCASE("shape mismatch") {
    CHECK_THROWS_AS(masked_cross_entropy<float>(uniform_probs(7, 3), FrameLabels(4)), Error);
  }
}

TEST_CASE("masked frames are gradient-blind") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int t_len = 8 + static_cast<int>(rng.below(20));
    const Eigen::MatrixXd z = random_matrix(&rng, 7, t_len, -3, 3);
    const Eigen::MatrixXd p = nn::softmax_frames(z);
    const FrameLabels y = orna::testing::random_labels(&rng, t_len, 0.4);
    const auto r = masked_cross_entropy<double>(p, y);
    double expect = 0.0;
    int valid = 0;
    for (int t = 0; t < t_len; ++t) {
      if (y[t] == FrameSymbol::kDontCare) {
        CHECK(r.dlogits.col(t).isZero(0.0));
        continue;
      }
      expect -= std::log(p(static_cast<int>(y[t]), t));
      ++valid;
    }
    CHECK(r.loss == doctest::Approx(expect / valid).epsilon(1e-12));
  }
}

TEST_CASE("the class under a mask never reaches parameter gradients") {
  const ModelConfig mc = orna::testing::tiny_config();
  EdTcn<double> net(mc);
  Rng rng(21);
  net.initialize(&rng);
  const Eigen::MatrixXd x = random_matrix(&rng, 12, 16, 0, 1);
  chunking::ChunkPlan plan;
  plan.length = 16 * 0.05;
  plan.audio_end = plan.length;
  plan.events = {{0.0, 0.3, Ornament::kNyas}};
  plan.dont_care_spans = {{0.5, 0.8, Ornament::kGamak}};
  chunking::FrameGrid grid;
  grid.hop_seconds = 0.05;
  grid.origin_seconds = 0.025;
  auto grads_for = [&](Ornament masked) {
    plan.dont_care_spans[0].cls = masked;
    const FrameLabels y = chunking::rasterize(plan, grid, 16);
    ForwardCache<double> cache;
    const auto probs = net.forward(x, Mode::kEval, nullptr, &cache);
    EdTcnParams<double> g = net.zeros_like();
    net.backward(cache, masked_cross_entropy<double>(probs, y).dlogits, &g);
    return g;
  };
  const auto base = grads_for(Ornament::kGamak);
  for (Ornament o : all_ornaments()) CHECK(grads_for(o) == base);
}

TEST_CASE("without masked frames the loss equals plain cross-entropy") {
  Rng rng(5);
  const Eigen::MatrixXd p = nn::softmax_frames(random_matrix(&rng, 7, 30, -2, 2));
  const FrameLabels y = orna::testing::random_frames(&rng, 30, false);
  double ce = 0.0;
  for (int t = 0; t < 30; ++t) ce -= std::log(p(static_cast<int>(y[t]), t));
  CHECK(masked_cross_entropy<double>(p, y).loss == doctest::Approx(ce / 30).epsilon(1e-12));
}

TEST_CASE("full network gradient matches finite differences") {
  for (const auto &r : orna::testing::edtcn_gradient_check(17)) {
    INFO(r.name);
    CHECK(r.rel_error < 1e-4);
  }
}

TEST_CASE("checkpoint round trip is bit exact") {
  const ModelConfig mc = small_model();
  EdTcn<float> net(mc);
  Rng rng(8);
  net.initialize(&rng);
  const auto ck = make_checkpoint(net, {12, 0.25, 99}, to_json(FeaturePipeline{}));
  const std::string bytes = encode_checkpoint(ck);
  CHECK(encode_checkpoint(ck) == bytes);
  const auto back = decode_checkpoint(bytes);
  CHECK(back.config == mc);
  CHECK(back.meta == ck.meta);
  CHECK(back.params == ck.params);
  CHECK(back.features == ck.features);

  const std::string dir = orna::testing::scratch_dir("ckpt");
  save_checkpoint(dir + "/m.orna", ck);
  const auto net2 = model_from_checkpoint(load_checkpoint(dir + "/m.orna"));
  const Eigen::MatrixXf x = random_matrix(&rng, 120, 32, 0, 1).cast<float>();
  CHECK(net2.forward(x, Mode::kEval, nullptr) == net.forward(x, Mode::kEval, nullptr));

  CHECK_THROWS_AS(decode_checkpoint("ORNB" + bytes.substr(4)), Error);
  CHECK_THROWS_AS(decode_checkpoint(bytes.substr(0, bytes.size() - 3)), Error);
  CHECK_THROWS_AS(decode_checkpoint(bytes + "x"), Error);
  CHECK_THROWS_AS(decode_checkpoint(""), Error);
  CHECK_THROWS_AS(load_checkpoint(dir + "/missing.orna"), Error);
}

TEST_CASE("training memorises a single chunk and is reproducible") {
  ModelConfig mc;
  mc.dropout = 0.0;
  auto data = synth_examples(1, 31, mc);
  data.resize(1);
  TrainConfig tc;
  tc.epochs = 200;
  tc.seed = 2;
  TrainResult r1, r2;
  train_new(mc, tc, data, {}, &r1);
  train_new(mc, tc, data, {}, &r2);
  REQUIRE(r1.loss_curve.size() == 200);
  CHECK(r1.loss_curve.back() < 0.05);
  CHECK(r1.loss_curve == r2.loss_curve);
}

TEST_CASE("chunks without valid frames are skipped") {
  const ModelConfig mc = small_model();
  auto data = synth_examples(1, 31, mc);
  TrainingExample blank = data[0];
  std::fill(blank.labels.begin(), blank.labels.end(), FrameSymbol::kDontCare);
  data.push_back(blank);
  TrainConfig tc;
  tc.epochs = 2;
  TrainResult r;
  train_new(mc, tc, data, {}, &r);
  CHECK(r.skipped_chunks == 1);
  std::vector<TrainingExample> only{blank};
  CHECK_THROWS_AS(train_new(mc, tc, only), Error);
}

TEST_CASE("disabling the mask relabels truncated spans with their class") {
  ModelConfig on = small_model(), off = small_model();
  off.use_dont_care = false;
  const FeaturePipeline p;
  const auto clips = orna::testing::synth_loaded(orna::testing::small_dataset(1, 41), p);
  // Five-second chunks, so the event straddles the boundary.
  LabelTrack truth{clips[0].truth.clip_id, {{4.0, 6.5, Ornament::kAndolan}}};
  FeaturePipeline p5 = p;
  p5.chunk_seconds = 5.0;
  const auto masked = make_chunk_examples(clips[0].features, clips[0].duration, truth, p5, on);
  const auto plain = make_chunk_examples(clips[0].features, clips[0].duration, truth, p5, off);
  REQUIRE(masked.size() == plain.size());
  int relabelled = 0;
  for (size_t k = 0; k < masked.size(); ++k) {
    CHECK(masked[k].features == plain[k].features);
    for (size_t t = 0; t < masked[k].labels.size(); ++t) {
      if (masked[k].labels[t] == plain[k].labels[t]) continue;
      CHECK(masked[k].labels[t] == FrameSymbol::kDontCare);
      CHECK(plain[k].labels[t] == FrameSymbol::kAndolan);
      ++relabelled;
    }
  }
  CHECK(relabelled > 0);
}

TEST_CASE("full-batch loss does not depend on chunk order") {
  ModelConfig mc = small_model();
  mc.dropout = 0.0;
  auto data = synth_examples(2, 51, mc);
  auto rev = data;
  std::reverse(rev.begin(), rev.end());
  TrainConfig tc;
  tc.epochs = 5;
  tc.batch_size = static_cast<int>(data.size());
  TrainResult a, b;
  train_new(mc, tc, data, {}, &a);
  train_new(mc, tc, rev, {}, &b);
  REQUIRE(a.loss_curve.size() == b.loss_curve.size());
  for (size_t e = 0; e < a.loss_curve.size(); ++e)
    CHECK(a.loss_curve[e] == doctest::Approx(b.loss_curve[e]).epsilon(1e-4));
}

TEST_CASE("fine-tuning freezes the encoder") {
  const ModelConfig mc = small_model();
  const auto data = synth_examples(2, 61, mc);
  TrainConfig tc;
  tc.epochs = 3;
  const auto base = make_checkpoint(train_new(mc, tc, data), {3, 0.0, 0});

  TrainConfig none = tc;
  none.epochs = 0;
  CHECK(encode_checkpoint(fine_tune(base, data, none)) == encode_checkpoint(base));

  TrainConfig ten = tc;
  ten.epochs = 10;
  const auto tuned = fine_tune(base, data, ten);
  for (size_t i = 0; i < base.params.encoder.size(); ++i) {
    CHECK(tuned.params.encoder[i].weight == base.params.encoder[i].weight);
    CHECK(tuned.params.encoder[i].bias == base.params.encoder[i].bias);
  }
  CHECK(!(tuned.params.decoder[0].weight == base.params.decoder[0].weight));
  CHECK(!(tuned.params.classifier.weight == base.params.classifier.weight));
}

TEST_CASE("fine-tuning on shifted-tonic clips improves their accuracy") {
  const ModelConfig mc;
  const FeaturePipeline p;
  TrainConfig tc;
  tc.epochs = 100;
  const auto base_net = train_new(mc, tc, synth_examples(8, 71, mc));
  const auto base = make_checkpoint(base_net, {100, 0.0, 0});

  auto d = orna::testing::small_dataset(5, 72, "shift");
  d.tonic_shift_semitones = 3.0;
  const auto shifted = orna::testing::synth_loaded(d, p);
  std::vector<TrainingExample> ex;
  for (const auto &c : shifted) {
    auto e = make_chunk_examples(c.features, c.duration, c.truth, p, mc);
    ex.insert(ex.end(), e.begin(), e.end());
  }
  TrainConfig ft = tc;
  ft.epochs = 40;
  const auto tuned = model_from_checkpoint(fine_tune(base, ex, ft));
  const double before = orna::testing::score_clips(base_net, shifted, p).frame.accuracy;
  const double after = orna::testing::score_clips(tuned, shifted, p).frame.accuracy;
  INFO("before " << before << " after " << after);
  CHECK(after > before);
}

TEST_CASE("decode examples") {
  SUBCASE("all Background") {
    PosteriorGram pg;
    pg.probs = Eigen::MatrixXf::Zero(7, 40);
    pg.probs.row(0).setOnes();
    CHECK(decode_events(pg).track.events.empty());
  }
  SUBCASE("sixty Gamak frames") {
    PosteriorGram pg;
    pg.probs = Eigen::MatrixXf::Zero(7, 80);
    pg.probs.row(0).setOnes();
    pg.probs.block(0, 10, 7, 60).setZero();
    pg.probs.block(6, 10, 1, 60).setConstant(0.9f);
    pg.probs.block(0, 10, 1, 60).setConstant(0.1f);
    const auto d = decode_events(pg);
    REQUIRE(d.track.events.size() == 1);
    CHECK(d.track.events[0].cls == Ornament::kGamak);
    CHECK(d.track.events[0].duration() == doctest::Approx(60 * 772.0 / 44100.0).epsilon(1e-9));
    CHECK(d.track.events[0].duration() == doctest::Approx(1.05).epsilon(0.01));
    CHECK(d.confidence[0] == doctest::Approx(0.9).epsilon(1e-6));
  }
  SUBCASE("K K B K K merges into one Kan run") {
    const FrameLabels y = {FrameSymbol::kKan, FrameSymbol::kKan, FrameSymbol::kBackground, FrameSymbol::kKan,
                           FrameSymbol::kKan};
    CHECK(median_smooth(y, 5) == FrameLabels(5, FrameSymbol::kKan));
    PosteriorGram pg;
    pg.probs = Eigen::MatrixXf::Zero(7, 5);
    for (int t = 0; t < 5; ++t) pg.probs(static_cast<int>(y[t]), t) = 1.0f;
    const auto d = decode_events(pg);
    REQUIRE(d.track.events.size() == 1);
    CHECK(d.track.events[0].cls == Ornament::kKan);
    CHECK(d.track.events[0].onset == doctest::Approx(0.5 * pg.frame_hop_seconds));
    CHECK(d.track.events[0].offset == doctest::Approx(5.5 * pg.frame_hop_seconds));
  }
  SUBCASE("runs shorter than the minimum vanish") {
    PosteriorGram pg;
    pg.probs = Eigen::MatrixXf::Zero(7, 30);
    pg.probs.row(0).setOnes();
    pg.probs.block(0, 10, 1, 2).setZero();
    pg.probs.block(1, 10, 1, 2).setOnes();
    CHECK(decode_events(pg, {1, 3}).track.events.empty());
    CHECK(decode_events(pg, {1, 2}).track.events.size() == 1);
  }
  CHECK_THROWS_AS(median_smooth(FrameLabels(3), 4), Error);
}

TEST_CASE("whole-clip inference covers every frame") {
  const ModelConfig mc = small_model();
  EdTcn<float> net(mc);
  Rng rng(6);
  net.initialize(&rng);
  const FeaturePipeline p;
  auto d = orna::testing::small_dataset(1, 81);
  d.clip_seconds = 23.0;
  const auto clip = orna::testing::synth_loaded(d, p)[0];
  const auto pg = predict_posteriors(net, clip.features, p);
  CHECK(pg.frames() == clip.features.frames());
  CHECK(pg.num_classes() == 7);
  for (int t = 0; t < pg.frames(); ++t) CHECK(pg.probs.col(t).sum() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(pg.frame_hop_seconds == clip.features.frame_hop_seconds);
}
