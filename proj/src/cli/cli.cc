// src/cli/cli.cc

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

#include "orna/cli/cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "orna/chunking/chunking.h"
#include "orna/cli/run_config.h"
#include "orna/core/file_io.h"
#include "orna/core/label_io.h"
#include "orna/core/wav.h"
#include "orna/dsp/feature_cache.h"
#include "orna/eval/kappa.h"
#include "orna/service/service.h"
#include "orna/synth/synth.h"

namespace orna::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  CLI::Option *seed_opt = nullptr;
  CLI::Option *out_opt = nullptr;
};

struct Ablation {
  bool no_dont_care = false;
  bool no_periodic_pad = false;
  bool no_dilation = false;
  int bins = 0;

  void add_to(CLI::App *sub) {
    sub->add_flag("--no-dont-care", no_dont_care, "Relabel don't-care spans with the cut event's class");
    sub->add_flag("--no-periodic-pad", no_periodic_pad, "Feed the chromagram without cyclic row padding");
    sub->add_flag("--no-dilation", no_dilation, "Use dilation rate 1 in every layer");
    sub->add_option("--bins", bins, "Chroma bins per octave (12 or 120)")->check(CLI::IsMember({12, 120}));
  }
  void apply(RunConfig *c) const {
    if (no_dont_care) c->model.use_dont_care = false;
    if (no_periodic_pad) c->model.use_periodic_pad = false;
    if (no_dilation) c->model.use_dilation = false;
    if (bins > 0) c->set_bins(bins);
  }
};

RunConfig load_config(const Common &common) {
  RunConfig c = common.config.empty() ? RunConfig{} : read_run_config(common.config);
  if (common.seed_opt->count() > 0) c.train.seed = common.seed;
  if (common.out_opt->count() > 0) c.paths.out = common.out;
  return c;
}

std::string require(const std::string &value, const std::string &what) {
  if (value.empty()) throw Error(ErrorKind::kInvalidArgument, what + " is required");
  return value;
}

std::string clip_id_of(const std::string &path) { return fs::path(path).stem().string(); }

Manifest load_manifest(const std::string &path) { return read_manifest_file(require(path, "--manifest")); }

std::vector<std::string> all_ids(const Manifest &m) {
  std::vector<std::string> ids;
  for (const auto &c : m.clips) ids.push_back(c.clip_id);
  return ids;
}

WavData load_audio(const std::string &path, const model::FeaturePipeline &p) {
  WavData wav = read_wav(path);
  if (wav.sample_rate != p.stft.sample_rate)
    throw Error(ErrorKind::kInvalidArgument, path + ": sample rate " + std::to_string(wav.sample_rate) +
                                                 " Hz, expected " + std::to_string(p.stft.sample_rate));
  return wav;
}

std::function<void(const model::EpochLog &)> progress_printer(std::ostream &err, int epochs, std::ofstream *log) {
  const int step = std::max(1, epochs / 20);
  return [&err, step, epochs, log](const model::EpochLog &e) {
    if (log) {
      json line = {{"epoch", e.epoch}, {"mean_loss", e.mean_loss}, {"chunks", e.chunks},
                   {"wall_seconds", e.wall_seconds}};
      if (e.validation_loss >= 0) line["validation_loss"] = e.validation_loss;
      *log << line.dump() << "\n";
    }
    if (e.epoch % step == 0 || e.epoch == epochs) {
      err << "epoch " << e.epoch << "/" << epochs << " loss " << e.mean_loss;
      if (e.validation_loss >= 0) err << " val " << e.validation_loss;
      err << "\n";
    }
  };
}

int frames_for(double duration, const dsp::StftConfig &stft) {
  const auto samples = static_cast<size_t>(std::llround(std::max(0.0, duration) * stft.sample_rate));
  return std::max(1, stft.frame_count(samples));
}

double track_end(const LabelTrack &t) {
  double end = 0.0;
  for (const auto &e : t.events) end = std::max(end, e.offset);
  return end;
}

// (pred, truth) label files, paired by file name when both are directories.
std::vector<std::pair<std::string, std::string>> pair_label_files(const std::string &pred, const std::string &truth) {
  std::vector<std::pair<std::string, std::string>> pairs;
  if (!fs::is_directory(truth)) {
    pairs.emplace_back(pred, truth);
    return pairs;
  }
  if (!fs::is_directory(pred))
    throw Error(ErrorKind::kInvalidArgument, "--pred must be a directory when --truth is one");
  std::vector<std::string> names;
  for (const auto &e : fs::directory_iterator(truth))
    if (e.is_regular_file() && e.path().extension() == ".tsv") names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  for (const auto &n : names) pairs.emplace_back((fs::path(pred) / n).string(), (fs::path(truth) / n).string());
  return pairs;
}

LabelTrack read_or_empty(const std::string &path, const std::string &clip_id) {
  if (!fs::exists(path)) {
    LabelTrack t;
    t.clip_id = clip_id;
    return t;
  }
  return read_label_file(path, clip_id);
}

void write_text(const std::string &path, const std::string &text) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  write_file(path, text);
}

int cmd_features(const RunConfig &cfg, const std::vector<std::string> &audio, const std::string &manifest_path,
                 std::ostream &err) {
  const std::string out = require(cfg.paths.out, "--out");
  fs::create_directories(out);
  std::vector<std::pair<std::string, std::string>> inputs;  // (clip id, wav path)
  if (!manifest_path.empty()) {
    const Manifest m = read_manifest_file(manifest_path);
    for (const auto &c : m.clips) inputs.emplace_back(c.clip_id, m.resolve(c.wav_path));
  }
  for (const auto &a : audio) inputs.emplace_back(clip_id_of(a), a);
  if (inputs.empty()) throw Error(ErrorKind::kInvalidArgument, "give --audio files or --manifest");
  for (const auto &[id, path] : inputs) {
    const WavData wav = load_audio(path, cfg.features);
    const dsp::FeatureMatrix fm = model::extract_features(wav.samples, cfg.features, id);
    dsp::write_feature_cache((fs::path(out) / (id + ".chroma")).string(), fm);
    err << id << ": " << fm.bins() << " x " << fm.frames() << "\n";
  }
  return kExitOk;
}

int cmd_chunk(const RunConfig &cfg, const std::string &labels, const std::string &audio, double duration,
              const std::string &manifest_path, std::ostream &out) {
  std::vector<chunking::ChunkPlan> plans;
  const double length = cfg.features.chunk_seconds;
  if (!manifest_path.empty()) {
    const Manifest m = read_manifest_file(manifest_path);
    for (const auto &c : m.clips) {
      if (c.label_path.empty()) continue;
      const LabelTrack t = read_label_file(m.resolve(c.label_path), c.clip_id);
      const double d = read_wav(m.resolve(c.wav_path)).duration_seconds();
      for (auto &p : chunking::plan_chunks(d, t.events, length, c.clip_id)) plans.push_back(std::move(p));
    }
  } else {
    const std::string id = clip_id_of(require(labels, "--labels"));
    const LabelTrack t = read_label_file(labels, id);
    double d = duration;
    if (!audio.empty()) d = read_wav(audio).duration_seconds();
    if (!(d > 0)) d = track_end(t);
    plans = chunking::plan_chunks(d, t.events, length, id);
  }
  const std::string text = chunking::chunk_plans_to_json(plans);
  if (cfg.paths.out.empty())
    out << text << "\n";
  else
    write_text(cfg.paths.out, text + "\n");
  return kExitOk;
}

int cmd_synth(const RunConfig &cfg, const Common &common, int n, double clip_seconds, const std::string &mix,
              const std::string &prefix, std::ostream &err) {
  synth::DatasetConfig d;
  d.n_clips = n;
  d.clip_seconds = clip_seconds;
  d.mix = synth::ClassMix::parse(mix);
  d.seed = common.seed_opt->count() > 0 ? common.seed : 0;
  d.prefix = prefix;
  const std::string out = require(cfg.paths.out, "--out");
  const Manifest m = synth::synth_dataset(d, out);
  err << "wrote " << m.clips.size() << " clips to " << (fs::path(out) / "manifest.json").string() << "\n";
  return kExitOk;
}

int cmd_train(RunConfig cfg, const std::string &init, const std::string &split_name, std::ostream &err) {
  const std::string out = require(cfg.paths.out, "--out");
  const Manifest manifest = load_manifest(cfg.paths.manifest);
  std::optional<model::Checkpoint> base;
  if (!init.empty()) {
    base = model::load_checkpoint(init);
    cfg.model = base->config;
    if (!base->features.is_null()) cfg.features = model::feature_pipeline_from_json(base->features);
  }
  cfg.check();

  std::vector<std::string> train_ids = all_ids(manifest);
  std::vector<std::string> val_ids;
  if (!split_name.empty()) {
    const eval::Partition part = eval::materialize(manifest, resolve_split(split_name, cfg.paths.splits_dir));
    train_ids = part.train;
    val_ids = part.validation;
  }
  const auto clips = eval::load_clips(manifest, train_ids, cfg.features);
  const auto data = eval::build_examples(clips, cfg.features, cfg.model);
  const auto val_clips = eval::load_clips(manifest, val_ids, cfg.features);
  const auto val = eval::build_examples(val_clips, cfg.features, cfg.model);
  err << "training on " << clips.size() << " clips (" << data.size() << " chunks)";
  if (!val.empty()) err << ", validating on " << val_clips.size() << " clips";
  err << "\n";

  fs::create_directories(out);
  if (cfg.train.checkpoint_every > 0 && cfg.train.checkpoint_dir.empty())
    cfg.train.checkpoint_dir = (fs::path(out) / "checkpoints").string();
  std::ofstream log(fs::path(out) / "train_log.jsonl");
  model::TrainOptions opts;
  opts.validation = val;
  opts.features = model::to_json(cfg.features);
  opts.on_epoch = progress_printer(err, cfg.train.epochs, &log);
  opts.on_message = [&err](const std::string &m) { err << m << "\n"; };

  model::Checkpoint ckpt;
  if (base) {
    ckpt = model::fine_tune(*base, data, cfg.train, opts);
  } else {
    model::TrainResult r;
    const auto net = model::train_new(cfg.model, cfg.train, data, opts, &r);
    ckpt = model::make_checkpoint(net, {r.epochs_run, r.loss_curve.empty() ? 0.0 : r.loss_curve.back(), cfg.train.seed},
                                  opts.features);
  }
  const std::string path = (fs::path(out) / "model.orna").string();
  model::save_checkpoint(path, ckpt);
  err << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_predict(const RunConfig &cfg, const std::vector<std::string> &audio, std::ostream &err) {
  const std::string out = require(cfg.paths.out, "--out");
  const model::Checkpoint ckpt = model::load_checkpoint(require(cfg.paths.checkpoint, "--checkpoint"));
  const model::FeaturePipeline p =
      ckpt.features.is_null() ? cfg.features : model::feature_pipeline_from_json(ckpt.features);
  const auto net = model::model_from_checkpoint(ckpt);
  std::vector<std::pair<std::string, std::string>> inputs;
  if (!cfg.paths.manifest.empty()) {
    const Manifest m = read_manifest_file(cfg.paths.manifest);
    for (const auto &c : m.clips) inputs.emplace_back(c.clip_id, m.resolve(c.wav_path));
  }
  for (const auto &a : audio) inputs.emplace_back(clip_id_of(a), a);
  if (inputs.empty()) throw Error(ErrorKind::kInvalidArgument, "give --audio files or --manifest");
  fs::create_directories(out);
  for (const auto &[id, path] : inputs) {
    const WavData wav = load_audio(path, p);
    const auto fm = model::extract_features(wav.samples, p, id);
    model::DecodedTrack d = model::predict_track(net, fm, p, cfg.decode);
    d.track.clip_id = id;
    write_label_file((fs::path(out) / (id + ".tsv")).string(), d.track);
    err << id << ": " << d.track.events.size() << " events\n";
  }
  return kExitOk;
}

int cmd_eval(const RunConfig &cfg, const std::string &pred, const std::string &truth, double duration,
             std::ostream &out) {
  const auto pairs = pair_label_files(require(pred, "--pred"), require(truth, "--truth"));
  const dsp::StftConfig &stft = cfg.features.stft;
  const chunking::FrameGrid grid{stft.hop_seconds(), stft.origin_seconds(), -1};
  std::vector<eval::ClipPrediction> preds;
  for (const auto &[p, t] : pairs) {
    eval::ClipPrediction cp;
    cp.clip_id = clip_id_of(t);
    cp.truth = read_label_file(t, cp.clip_id);
    cp.decoded.track = read_or_empty(p, cp.clip_id);
    const double d = duration > 0 ? duration : std::max(track_end(cp.truth), track_end(cp.decoded.track));
    const int frames = frames_for(d, stft);
    cp.truth_frames = chunking::rasterize_track(cp.truth, grid, frames);
    cp.pred_frames = chunking::rasterize_track(cp.decoded.track, grid, frames);
    preds.push_back(std::move(cp));
  }
  const std::string hash = eval::fnv1a_hex(eval::to_json(cfg.experiment()).dump() + "eval");
  const eval::EvalReport report = eval::evaluate(preds, "eval", hash, cfg.collar);
  const std::string text = eval::to_json(report).dump(2);
  out << text << "\n";
  if (!cfg.paths.out.empty()) write_text(cfg.paths.out, text + "\n");
  return kExitOk;
}

int cmd_kappa(const RunConfig &cfg, const std::string &a, const std::string &b, double duration, std::ostream &out) {
  const auto pairs = pair_label_files(require(a, "--a"), require(b, "--b"));
  const dsp::StftConfig &stft = cfg.features.stft;
  const chunking::FrameGrid grid{stft.hop_seconds(), stft.origin_seconds(), -1};
  FrameLabels fa, fb;
  for (const auto &[pa, pb] : pairs) {
    const std::string id = clip_id_of(pb);
    const LabelTrack ta = read_or_empty(pa, id);
    const LabelTrack tb = read_label_file(pb, id);
    const int frames = frames_for(duration > 0 ? duration : std::max(track_end(ta), track_end(tb)), stft);
    const FrameLabels ra = chunking::rasterize_track(ta, grid, frames);
    const FrameLabels rb = chunking::rasterize_track(tb, grid, frames);
    fa.insert(fa.end(), ra.begin(), ra.end());
    fb.insert(fb.end(), rb.begin(), rb.end());
  }
  const json result = {{"kappa", eval::cohen_kappa(fa, fb)}, {"frames", fa.size()}, {"clips", pairs.size()}};
  out << result.dump(2) << "\n";
  if (!cfg.paths.out.empty()) write_text(cfg.paths.out, result.dump(2) + "\n");
  return kExitOk;
}

int cmd_experiment(RunConfig cfg, const std::string &split_name, std::ostream &out, std::ostream &err) {
  const eval::SplitSpec split = resolve_split(require(split_name, "--split"), cfg.paths.splits_dir);
  const Manifest manifest = load_manifest(cfg.paths.manifest);
  const std::string dir = cfg.paths.out.empty() ? (fs::path("runs") / split.name).string() : cfg.paths.out;
  cfg.check();
  eval::ExperimentHooks hooks;
  hooks.on_epoch = progress_printer(err, cfg.train.epochs, nullptr);
  hooks.on_message = [&err](const std::string &m) { err << m << "\n"; };
  const eval::ExperimentResult r = eval::run_experiment(manifest, split, cfg.experiment(), dir, hooks);
  out << eval::to_json(r.report).dump(2) << "\n";
  err << "wrote " << (fs::path(dir) / "report.json").string() << "\n";
  return kExitOk;
}

int cmd_serve(const RunConfig &cfg, const std::string &project_dir, const std::string &host, int port,
              int fine_tune_epochs, std::ostream &err) {
  require(project_dir, "--project");
  if (!fs::exists(fs::path(project_dir) / "project.json")) {
    if (cfg.paths.manifest.empty())
      throw Error(ErrorKind::kInvalidArgument, project_dir + " is not a project; pass --manifest to create it");
    service::ProjectSettings s;
    s.features = cfg.features;
    s.model = cfg.model;
    s.decode = cfg.decode;
    service::Project::init(project_dir, cfg.paths.manifest, s, cfg.paths.checkpoint);
    err << "initialised project " << project_dir << "\n";
  }
  service::Project project(project_dir);
  service::ServiceOptions opts;
  opts.fine_tune = cfg.train;
  opts.fine_tune.epochs = fine_tune_epochs;
  service::AnnotationService svc(&project, opts);
  const int bound = svc.bind(host, port);
  if (bound < 0) throw Error(ErrorKind::kIo, "cannot bind " + host + ":" + std::to_string(port));
  err << "serving " << project_dir << " on http://" << host << ":" << bound << "\n";
  svc.serve();
  return kExitOk;
}

int exit_code_for(const Error &e) {
  switch (e.kind()) {
    case ErrorKind::kIo:
    case ErrorKind::kNonFiniteGradient:
    case ErrorKind::kNonFiniteLoss:
      return kExitRuntime;
    default:
      return kExitValidation;
  }
}

}  // namespace

int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Ornament detection toolkit", "orna"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--config", common.config, "Run configuration JSON");
  common.seed_opt = app.add_option("--seed", common.seed, "Random seed");
  common.out_opt = app.add_option("--out", common.out, "Output file or directory");

  std::vector<std::string> audio;
  std::string manifest, checkpoint, labels, pred, truth, a_path, b_path, split, init, mix = "uniform", prefix = "syn";
  std::string project, host = "127.0.0.1";
  double duration = 0.0, clip_seconds = 10.0, collar = -1.0, chunk_seconds = 0.0, lr = 0.0;
  int n = 40, epochs = -1, batch = 0, port = 8080, ft_epochs = 20, checkpoint_every = -1;
  bool onset_only = false;
  Ablation ablation;

  auto *features = app.add_subcommand("features", "Extract chromagram caches");
  features->add_option("--audio", audio, "WAV files")->check(CLI::ExistingFile);
  features->add_option("--manifest", manifest, "Dataset manifest");
  features->add_option("--bins", ablation.bins, "Chroma bins per octave")->check(CLI::PositiveNumber);

  auto *chunk = app.add_subcommand("chunk", "Print chunk plans as JSON");
  chunk->add_option("--labels", labels, "Label track")->check(CLI::ExistingFile);
  chunk->add_option("--audio", a_path, "WAV giving the clip duration")->check(CLI::ExistingFile);
  chunk->add_option("--duration", duration, "Clip duration in seconds");
  chunk->add_option("--manifest", manifest, "Dataset manifest");
  chunk->add_option("--length", chunk_seconds, "Chunk length in seconds")->check(CLI::PositiveNumber);

  auto *synth = app.add_subcommand("synth", "Generate a synthetic ornament dataset");
  synth->add_option("--n", n, "Number of clips")->check(CLI::PositiveNumber);
  synth->add_option("--clip-seconds", clip_seconds, "Clip length")->check(CLI::PositiveNumber);
  synth->add_option("--mix", mix, "Class mix: uniform, one code, or K=1,G=2");
  synth->add_option("--prefix", prefix, "Clip id prefix");

  auto *train = app.add_subcommand("train", "Train or fine-tune an ED-TCN");
  train->add_option("--manifest", manifest, "Dataset manifest");
  train->add_option("--split", split, "Train on the split's training partition");
  train->add_option("--init", init, "Fine-tune the decoder and classifier of this checkpoint")
      ->check(CLI::ExistingFile);
  train->add_option("--epochs", epochs, "Epochs")->check(CLI::NonNegativeNumber);
  train->add_option("--learning-rate", lr, "Adam learning rate")->check(CLI::PositiveNumber);
  train->add_option("--batch-size", batch, "Chunks per batch")->check(CLI::PositiveNumber);
  train->add_option("--checkpoint-every", checkpoint_every, "Write a checkpoint every N epochs");
  ablation.add_to(train);

  auto *predict = app.add_subcommand("predict", "Write a label track per clip");
  predict->add_option("--checkpoint", checkpoint, "Model checkpoint")->check(CLI::ExistingFile);
  predict->add_option("--audio", audio, "WAV files")->check(CLI::ExistingFile);
  predict->add_option("--manifest", manifest, "Dataset manifest");

  auto *evalc = app.add_subcommand("eval", "Score predicted label tracks");
  evalc->add_option("--pred", pred, "Predicted track or directory")->required();
  evalc->add_option("--truth", truth, "Reference track or directory")->required()->check(CLI::ExistingPath);
  evalc->add_option("--collar", collar, "Boundary collar in seconds")->check(CLI::NonNegativeNumber);
  evalc->add_flag("--onset-only", onset_only, "Match onsets only");
  evalc->add_option("--duration", duration, "Clip duration in seconds");

  auto *kappa = app.add_subcommand("kappa", "Frame-level Cohen's kappa between two annotators");
  kappa->add_option("--a", a_path, "First annotator's track or directory")->required();
  kappa->add_option("--b", b_path, "Second annotator's track or directory")->required()->check(CLI::ExistingPath);
  kappa->add_option("--duration", duration, "Clip duration in seconds");

  auto *experiment = app.add_subcommand("experiment", "Run one train/test split end to end");
  experiment->add_option("--split", split, "exp1..exp9 or a split JSON file")->required();
  experiment->add_option("--manifest", manifest, "Dataset manifest");
  experiment->add_option("--epochs", epochs, "Epochs")->check(CLI::NonNegativeNumber);
  ablation.add_to(experiment);

  auto *serve = app.add_subcommand("serve", "Serve the annotation API");
  serve->add_option("--project", project, "Project directory")->required();
  serve->add_option("--manifest", manifest, "Manifest to create the project from");
  serve->add_option("--checkpoint", checkpoint, "Initial checkpoint for a new project")->check(CLI::ExistingFile);
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve->add_option("--fine-tune-epochs", ft_epochs, "Epochs per fine-tune job")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    RunConfig cfg = load_config(common);
    if (!manifest.empty()) cfg.paths.manifest = manifest;
    if (!checkpoint.empty()) cfg.paths.checkpoint = checkpoint;
    if (epochs >= 0) cfg.train.epochs = epochs;
    if (lr > 0) cfg.train.learning_rate = lr;
    if (batch > 0) cfg.train.batch_size = batch;
    if (checkpoint_every >= 0) cfg.train.checkpoint_every = checkpoint_every;
    if (chunk_seconds > 0) cfg.features.chunk_seconds = chunk_seconds;
    if (collar >= 0) cfg.collar.collar = collar;
    if (onset_only) cfg.collar.onset_only = true;
    ablation.apply(&cfg);
    cfg.check();

    if (features->parsed()) return cmd_features(cfg, audio, cfg.paths.manifest, err);
    if (chunk->parsed()) return cmd_chunk(cfg, labels, a_path, duration, manifest, out);
    if (synth->parsed()) return cmd_synth(cfg, common, n, clip_seconds, mix, prefix, err);
    if (train->parsed()) return cmd_train(cfg, init, split, err);
    if (predict->parsed()) return cmd_predict(cfg, audio, err);
    if (evalc->parsed()) return cmd_eval(cfg, pred, truth, duration, out);
    if (kappa->parsed()) return cmd_kappa(cfg, a_path, b_path, duration, out);
    if (experiment->parsed()) return cmd_experiment(cfg, split, out, err);
    if (serve->parsed()) return cmd_serve(cfg, project, host, port, ft_epochs, err);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  err << app.help();
  return kExitValidation;
}

}  // namespace orna::cli
