// src/eval/metrics.cc

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

#include "orna/eval/metrics.h"

#include <algorithm>
#include <cmath>
#include <functional>

namespace orna::eval {

namespace {

constexpr double kTimeEps = 1e-9;

void require_same_length(const FrameLabels &a, const FrameLabels &b) {
  if (a.size() != b.size()) throw Error(ErrorKind::kShapeMismatch, "prediction and truth lengths differ");
}

bool compatible(const Event &p, const Event &t, const CollarConfig &cfg) {
  if (std::abs(p.onset - t.onset) > cfg.collar + kTimeEps) return false;
  return cfg.onset_only || std::abs(p.offset - t.offset) <= cfg.collar + kTimeEps;
}

}  // namespace

Prf score(const ClassCounts &c) {
  Prf s;
  if (c.tp + c.fp > 0) s.precision = static_cast<double>(c.tp) / (c.tp + c.fp);
  if (c.tp + c.fn > 0) s.recall = static_cast<double>(c.tp) / (c.tp + c.fn);
  if (s.precision + s.recall > 0) s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

void MetricSet::finalize() {
  macro = {};
  macro_classes = 0;
  for (int c = 0; c < kNumOrnaments; ++c) {
    per_class[c] = score(counts[c]);
    if (!counts[c].present()) continue;
    ++macro_classes;
    macro.precision += per_class[c].precision;
    macro.recall += per_class[c].recall;
    macro.f1 += per_class[c].f1;
  }
  if (macro_classes > 0) {
    macro.precision /= macro_classes;
    macro.recall /= macro_classes;
    macro.f1 /= macro_classes;
  }
  accuracy = scored > 0 ? static_cast<double>(correct) / scored : 0.0;
}

void add_frame_counts(const FrameLabels &pred, const FrameLabels &truth, MetricSet *m) {
  require_same_length(pred, truth);
  for (size_t i = 0; i < truth.size(); ++i) {
    const FrameSymbol t = truth[i];
    if (t == FrameSymbol::kDontCare) continue;
    const FrameSymbol p = pred[i] == FrameSymbol::kDontCare ? FrameSymbol::kBackground : pred[i];
    ++m->scored;
    if (p == t) ++m->correct;
    if (is_ornament(t) && p == t) {
      ++m->counts[index_of(to_ornament(t))].tp;
      continue;
    }
    if (is_ornament(t)) ++m->counts[index_of(to_ornament(t))].fn;
    if (is_ornament(p)) ++m->counts[index_of(to_ornament(p))].fp;
  }
}

MetricSet frame_metrics(std::span<const FrameLabels> pred, std::span<const FrameLabels> truth) {
  if (pred.size() != truth.size()) throw Error(ErrorKind::kShapeMismatch, "clip counts differ");
  MetricSet m;
  for (size_t i = 0; i < pred.size(); ++i) add_frame_counts(pred[i], truth[i], &m);
  m.finalize();
  return m;
}

// A greedy pass in truth onset order, each truth taking the free
// compatible prediction with the nearest onset, followed by augmenting
// paths until no unmatched truth can be reached.
std::vector<std::pair<int, int>> match_events(std::span<const Event> pred, std::span<const Event> truth,
                                              const CollarConfig &cfg) {
  const int np = static_cast<int>(pred.size()), nt = static_cast<int>(truth.size());
  std::vector<int> p_order(np), t_order(nt);
  for (int i = 0; i < np; ++i) p_order[i] = i;
  for (int i = 0; i < nt; ++i) t_order[i] = i;
  auto by_onset = [](std::span<const Event> ev) {
    return [ev](int a, int b) {
      if (ev[a].onset != ev[b].onset) return ev[a].onset < ev[b].onset;
      return ev[a].offset < ev[b].offset;
    };
  };
  std::stable_sort(p_order.begin(), p_order.end(), by_onset(pred));
  std::stable_sort(t_order.begin(), t_order.end(), by_onset(truth));

  std::vector<std::vector<int>> adj(nt);
  for (int ti : t_order) {
    const Event &t = truth[ti];
    for (int pi : p_order) {
      if (pred[pi].onset > t.onset + cfg.collar + kTimeEps) break;
      if (pred[pi].cls == t.cls && compatible(pred[pi], t, cfg)) adj[ti].push_back(pi);
    }
    std::stable_sort(adj[ti].begin(), adj[ti].end(), [&](int a, int b) {
      return std::abs(pred[a].onset - t.onset) < std::abs(pred[b].onset - t.onset);
    });
  }

  std::vector<int> owner(np, -1), partner(nt, -1);
  for (int ti : t_order)
    for (int pi : adj[ti])
      if (owner[pi] < 0) {
        owner[pi] = ti;
        partner[ti] = pi;
        break;
      }

  std::vector<char> seen(np);
  std::function<bool(int)> augment = [&](int ti) {
    for (int pi : adj[ti]) {
      if (seen[pi]) continue;
      seen[pi] = 1;
      if (owner[pi] < 0 || augment(owner[pi])) {
        owner[pi] = ti;
        partner[ti] = pi;
        return true;
      }
    }
    return false;
  };
  for (int ti : t_order) {
    if (partner[ti] >= 0 || adj[ti].empty()) continue;
    std::fill(seen.begin(), seen.end(), 0);
    augment(ti);
  }

  std::vector<std::pair<int, int>> out;
  for (int ti : t_order)
    if (partner[ti] >= 0) out.emplace_back(partner[ti], ti);
  return out;
}

void add_event_counts(const LabelTrack &pred, const LabelTrack &truth, const CollarConfig &cfg, MetricSet *m) {
  const auto matches = match_events(pred.events, truth.events, cfg);
  std::vector<char> p_hit(pred.events.size(), 0), t_hit(truth.events.size(), 0);
  for (const auto &[p, t] : matches) {
    p_hit[p] = t_hit[t] = 1;
    ++m->counts[index_of(truth.events[t].cls)].tp;
  }
  for (size_t i = 0; i < pred.events.size(); ++i)
    if (!p_hit[i]) ++m->counts[index_of(pred.events[i].cls)].fp;
  for (size_t i = 0; i < truth.events.size(); ++i)
    if (!t_hit[i]) ++m->counts[index_of(truth.events[i].cls)].fn;
}

MetricSet event_metrics(const LabelTrack &pred, const LabelTrack &truth, const CollarConfig &cfg) {
  MetricSet m;
  add_event_counts(pred, truth, cfg, &m);
  m.finalize();
  return m;
}

void add_confusion(const FrameLabels &pred, const FrameLabels &truth, Confusion *c) {
  require_same_length(pred, truth);
  for (size_t i = 0; i < truth.size(); ++i) {
    if (!is_ornament(truth[i]) || !is_ornament(pred[i])) continue;
    ++(*c)[index_of(to_ornament(truth[i]))][index_of(to_ornament(pred[i]))];
  }
}

Confusion confusion_matrix(const FrameLabels &pred, const FrameLabels &truth) {
  Confusion c{};
  add_confusion(pred, truth, &c);
  return c;
}

}  // namespace orna::eval
