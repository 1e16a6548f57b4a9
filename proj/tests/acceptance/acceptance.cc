// tests/acceptance/acceptance.cc

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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orna/chunking/chunking.h"
#include "orna/eval/kappa.h"
#include "orna/eval/metrics.h"
#include "orna/eval/report.h"
#include "orna/model/checkpoint.h"
#include "orna/model/inference.h"
#include "orna/model/loss.h"
#include "orna/model/trainer.h"
#include "support/chunk_oracle.h"
#include "support/gradcheck.h"
#include "support/nn_props.h"
#include "support/oracles.h"
#include "support/synth_data.h"

using namespace orna;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<model::TrainingExample> examples_of(std::span<const eval::LoadedClip> clips, const model::FeaturePipeline &p,
                                                const model::ModelConfig &mc) {
  std::vector<model::TrainingExample> out;
  for (const auto &c : clips) {
    auto ex = model::make_chunk_examples(c.features, c.duration, c.truth, p, mc);
    out.insert(out.end(), ex.begin(), ex.end());
  }
  return out;
}

Outcome chunking_oracle() {
  const auto t0 = Clock::now();
  Rng rng(2024);
  int breaches = 0;
  std::string first;
  for (int i = 0; i < 1000; ++i) {
    const double duration = rng.uniform(30, 120);
    const auto ev = testing::random_events(&rng, duration, 0.1, 3.0, 2.0);
    const auto plans = chunking::plan_chunks(duration, ev, 10.0, "a");
    const std::string b = testing::chunk_plan_breach(duration, ev, 10.0, plans);
    if (!b.empty() && breaches++ == 0) first = fmt("case %d: %s", i, b.c_str());
  }
  const double secs = seconds_since(t0);
  return {breaches == 0 && secs < 5.0,
          fmt("1000 cases, %d breaches, %.2f s%s%s", breaches, secs, first.empty() ? "" : "; ", first.c_str())};
}

Outcome masking() {
  const model::ModelConfig mc = testing::tiny_config();
  Rng rng(31);
  int grad_breaches = 0, trials = 0;
  for (int trial = 0; trial < 20; ++trial) {
    model::EdTcn<double> net(mc);
    net.initialize(&rng);
    const int frames = 16;
    const Eigen::MatrixXd x = testing::random_matrix(&rng, mc.input_bins, frames, 0, 1);
    chunking::FrameGrid grid;
    grid.hop_seconds = 0.05;
    grid.origin_seconds = 0.025;
    chunking::ChunkPlan plan;
    plan.length = frames * grid.hop_seconds;
    plan.audio_end = plan.length;
    const double cut = rng.uniform(0.1, 0.4);
    plan.dont_care_spans = {{0.0, cut, testing::random_class(&rng)}};
    plan.events = {{cut + 0.05, plan.length, testing::random_class(&rng)}};
    auto grads_for = [&](Ornament hidden) {
      plan.dont_care_spans[0].cls = hidden;
      const FrameLabels y = chunking::rasterize(plan, grid, frames);
      model::ForwardCache<double> cache;
      Rng r(trial);
      const auto probs = net.forward(x, nn::Mode::kTrain, &r, &cache);
      model::EdTcnParams<double> g = net.zeros_like();
      net.backward(cache, model::masked_cross_entropy<double>(probs, y).dlogits, &g);
      return g;
    };
    const auto base = grads_for(Ornament::kKan);
    for (Ornament o : all_ornaments()) {
      grad_breaches += !(grads_for(o) == base);
      ++trials;
    }
  }
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int t_len = 4 + static_cast<int>(rng.below(60));
    const Eigen::MatrixXd p = nn::softmax_frames(testing::random_matrix(&rng, 7, t_len, -4, 4));
    const FrameLabels y = testing::random_frames(&rng, t_len, false);
    double ce = 0.0;
    for (int t = 0; t < t_len; ++t) ce -= std::log(p(static_cast<int>(y[t]), t));
    ce /= t_len;
    worst = std::max(worst, std::abs(model::masked_cross_entropy<double>(p, y).loss - ce));
  }
  return {grad_breaches == 0 && worst <= 1e-12,
          fmt("%d/%d hidden-class swaps changed a gradient; max |loss - CE| = %.2e", grad_breaches, trials, worst)};
}

Outcome gradient_suite() {
  const auto t0 = Clock::now();
  auto reports = testing::kernel_gradient_suite(1);
  for (const auto &r : testing::edtcn_gradient_check(2)) reports.push_back(r);
  double worst = 0.0;
  std::string worst_name;
  for (const auto &r : reports)
    if (!(r.rel_error <= worst)) {
      worst = r.rel_error;
      worst_name = r.name;
    }
  const double secs = seconds_since(t0);
  return {worst < 1e-4 && secs < 60.0,
          fmt("%zu tensors, max rel error %.2e (%s), %.1f s", reports.size(), worst, worst_name.c_str(), secs)};
}

Outcome padding_and_dilation() {
  const std::string pad = testing::periodic_pad_breach(16), dil = testing::dilation_impulse_breach(4);
  return {pad.empty() && dil.empty(), "pad: " + (pad.empty() ? std::string("ok") : pad) +
                                          "; dilation: " + (dil.empty() ? std::string("ok") : dil)};
}

bool f1_identity(const eval::MetricSet &m) {
  for (const auto &s : m.per_class) {
    const double expect = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    if (std::abs(s.f1 - expect) > 1e-12) return false;
  }
  return true;
}

Outcome metric_oracles() {
  Rng rng(505);
  int mismatches = 0, identity_breaches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto draw = [&] {
      const int n = 1 + static_cast<int>(rng.below(6 * kNumOrnaments));
      auto ev = testing::random_event_cloud(&rng, n, rng.uniform(1.0, 8.0), 0.05, 1.0);
      std::vector<int> per(kNumOrnaments, 0);
      std::vector<Event> kept;
      for (const auto &e : ev)
        if (per[index_of(e.cls)]++ < 6) kept.push_back(e);
      return kept;
    };
    const auto truth = draw(), pred = draw();
    LabelTrack tp{"c", pred}, tt{"c", truth};
    const auto m = eval::event_metrics(tp, tt, {0.2, false});
    for (Ornament cls : all_ornaments())
      mismatches += m.counts[index_of(cls)].tp != testing::optimal_event_tp(pred, truth, cls, 0.2);
    identity_breaches += !f1_identity(m);

    eval::ClipPrediction cp;
    cp.clip_id = "c";
    cp.truth = tt;
    cp.decoded.track = tp;
    const int frames = 20 + static_cast<int>(rng.below(200));
    cp.truth_frames = testing::random_frames(&rng, frames, true);
    cp.pred_frames = testing::random_frames(&rng, frames, false);
    const std::vector<eval::ClipPrediction> one{cp};
    const auto r = eval::evaluate(one, "t", "", {});
    identity_breaches += !f1_identity(r.frame) + !f1_identity(r.event_collar) + !f1_identity(r.event_zero_collar);
  }
  using S = FrameSymbol;
  const double k_hand = eval::cohen_kappa({S::kKan, S::kKan, S::kBackground, S::kBackground},
                                          {S::kKan, S::kBackground, S::kBackground, S::kBackground});
  const auto a = testing::random_frames(&rng, 500, true);
  const double k_self = eval::cohen_kappa(a, a);
  return {mismatches == 0 && identity_breaches == 0 && std::abs(k_hand - 0.5) < 1e-12 && k_self == 1.0,
          fmt("%d matching mismatches over 500 cases, %d F1 identity breaches, kappa example %.6f, self %.6f",
              mismatches, identity_breaches, k_hand, k_self)};
}

struct SynthSetup {
  model::FeaturePipeline pipeline;
  std::vector<eval::LoadedClip> train, held;
  double feature_seconds = 0.0;
};

SynthSetup &synth_setup() {
  static SynthSetup s = [] {
    const auto t0 = Clock::now();
    SynthSetup r;
    synth::DatasetConfig d;
    d.n_clips = 40;
    d.seed = 7;
    r.train = testing::synth_loaded(d, r.pipeline);
    r.held = testing::synth_loaded(testing::small_dataset(10, 1007, "held"), r.pipeline);
    r.feature_seconds = seconds_since(t0);
    return r;
  }();
  return s;
}

model::TrainConfig desk_train(std::uint64_t seed) {
  model::TrainConfig tc;
  tc.epochs = 500;
  tc.learning_rate = 1e-3;
  tc.batch_size = 8;
  tc.seed = seed;
  return tc;
}

Outcome end_to_end() {
  const auto t0 = Clock::now();
  const auto &s = synth_setup();
  const model::ModelConfig mc;
  const auto data = examples_of(s.train, s.pipeline, mc);
  const auto net = model::train_new(mc, desk_train(0), data);
  const auto train_rep = testing::score_clips(net, s.train, s.pipeline);
  const double held = testing::score_clips(net, s.held, s.pipeline).event_collar.macro.f1;
  const double secs = seconds_since(t0) + s.feature_seconds;
  const double acc = train_rep.frame.accuracy, f1 = train_rep.event_collar.macro.f1;
  return {acc >= 0.95 && f1 >= 0.90 && held >= 0.75 && secs <= 900.0,
          fmt("train frame acc %.3f, train event F1 %.3f, held-out event F1 %.3f, %.0f s", acc, f1, held, secs)};
}

// Clips longer than a chunk, so that chunking cuts events and the two
// conditions see different targets.
Outcome ablation() {
  const model::FeaturePipeline p;
  auto dataset = [](int n, std::uint64_t seed, const std::string &prefix) {
    auto d = testing::small_dataset(n, seed, prefix);
    d.clip_seconds = 30.0;
    return d;
  };
  const auto train = testing::synth_loaded(dataset(14, 7, "syn"), p);
  const auto held = testing::synth_loaded(dataset(10, 1007, "held"), p);
  model::ModelConfig on, off;
  off.use_dont_care = false;
  const auto data_on = examples_of(train, p, on), data_off = examples_of(train, p, off);
  long masked = 0, relabelled = 0;
  for (size_t i = 0; i < data_on.size(); ++i)
    for (size_t t = 0; t < data_on[i].labels.size(); ++t)
      if (data_on[i].labels[t] == FrameSymbol::kDontCare) {
        ++masked;
        relabelled += data_off[i].labels[t] != FrameSymbol::kDontCare;
      }
  std::string detail = fmt("%zu chunks, %ld of %ld masked frames relabelled; ", data_on.size(), relabelled, masked);
  double sum = 0.0;
  int positive = 0;
  const std::vector<std::uint64_t> seeds = {0, 1, 2};
  for (std::uint64_t seed : seeds) {
    model::TrainConfig tc = desk_train(seed);
    tc.epochs = 300;
    auto f1 = [&](const model::ModelConfig &mc, const std::vector<model::TrainingExample> &data) {
      return testing::score_clips(model::train_new(mc, tc, data), held, p).event_collar.macro.f1;
    };
    const double with = f1(on, data_on), without = f1(off, data_off);
    sum += with - without;
    positive += with > without;
    detail += fmt("seed %llu: %.3f vs %.3f; ", static_cast<unsigned long long>(seed), with, without);
    std::fprintf(stderr, "ablation %s\n", detail.c_str());
  }
  const double mean = sum / seeds.size();
  return {relabelled > 0 && mean > 0.0, detail + fmt("mean margin %+.3f, %d/%zu seeds positive", mean, positive, seeds.size())};
}

Outcome determinism() {
  synth::DatasetConfig d;
  d.n_clips = 4;
  d.seed = 9;
  d.clip_seconds = 8.0;
  const model::FeaturePipeline p;
  const model::ModelConfig mc;
  model::TrainConfig tc = desk_train(5);
  tc.epochs = 3;
  auto run = [&] {
    const auto clips = testing::synth_loaded(d, p);
    const auto net = model::train_new(mc, tc, examples_of(clips, p, mc));
    const std::string ckpt = model::encode_checkpoint(model::make_checkpoint(net, {}, model::to_json(p)));
    auto rep = testing::score_clips(net, clips, p);
    rep.config_hash = eval::fnv1a_hex(ckpt);
    return std::pair{ckpt, eval::to_json(rep).dump()};
  };
  const auto a = run(), b = run();
  return {a.first == b.first && a.second == b.second,
          fmt("checkpoints %s (%zu bytes), reports %s", a.first == b.first ? "identical" : "differ", a.first.size(),
              a.second == b.second ? "identical" : "differ")};
}

}  // namespace

int main(int argc, char **argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"chunking_oracle", chunking_oracle},
      {"masking", masking},
      {"gradient_suite", gradient_suite},
      {"periodic_padding_and_dilation", padding_and_dilation},
      {"metric_oracles", metric_oracles},
      {"end_to_end_overfit", end_to_end},
      {"ablation_dont_care", ablation},
      {"determinism", determinism},
  };
  CLI::App app{"Runs the acceptance criteria"};
  std::vector<std::string> only;
  app.add_option("--only", only, "Criteria to run (default all)");
  CLI11_PARSE(app, argc, argv);
  std::set<std::string> known;
  for (const auto &[name, fn] : criteria) known.insert(name);
  for (const auto &o : only)
    if (!known.count(o)) {
      std::fprintf(stderr, "unknown criterion %s\n", o.c_str());
      return 1;
    }

  int failed = 0;
  for (const auto &[name, fn] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception &e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
