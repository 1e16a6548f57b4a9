// src/service/service.cc

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

#include "orna/service/service.h"

#include <cstdio>
#include <filesystem>

#include "httplib.h"
#include "orna/core/label_io.h"
#include "orna/model/inference.h"

namespace orna::service {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void send_json(httplib::Response &res, int status, const json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response &res, int status, const std::string &message) {
  send_json(res, status, {{"error", message}});
}

json event_json(const Event &e) {
  return {{"onset", e.onset}, {"offset", e.offset}, {"label", std::string(short_code(e.cls))}};
}

json track_json(const LabelTrack &t) {
  json ev = json::array();
  for (const auto &e : t.events) ev.push_back(event_json(e));
  return ev;
}

LabelTrack track_from_json(const json &events, const std::string &clip_id) {
  if (!events.is_array()) throw Error(ErrorKind::kInvalidArgument, "events must be an array");
  LabelTrack t;
  t.clip_id = clip_id;
  for (const auto &e : events) {
    if (!e.is_object() || !e.contains("onset") || !e.contains("offset") || !e.contains("label"))
      throw Error(ErrorKind::kInvalidArgument, "each event needs onset, offset and label");
    if (!e.at("onset").is_number() || !e.at("offset").is_number() || !e.at("label").is_string())
      throw Error(ErrorKind::kInvalidArgument, "event fields have the wrong type");
    const auto cls = parse_ornament(e.at("label").get<std::string>());
    if (!cls) throw Error(ErrorKind::kUnknownClass, "unknown class '" + e.at("label").get<std::string>() + "'");
    t.events.push_back({e.at("onset").get<double>(), e.at("offset").get<double>(), *cls});
  }
  return t;
}

json violations_json(const std::vector<Violation> &vs, const LabelTrack &track) {
  LabelTrack sorted = track;
  std::stable_sort(sorted.events.begin(), sorted.events.end(),
                   [](const Event &a, const Event &b) { return a.onset < b.onset; });
  json out = json::array();
  for (const auto &v : vs) {
    json j = {{"type", std::string(violation_name(v.type))},
              {"event_index", v.event_index},
              {"duration", v.duration},
              {"message", v.describe()}};
    if (v.event_index < sorted.events.size()) j["label"] = std::string(short_code(sorted.events[v.event_index].cls));
    out.push_back(j);
  }
  return out;
}

bool truthy(const std::string &v) { return v == "1" || v == "true" || v == "yes"; }

model::FeaturePipeline pipeline_for(const model::Checkpoint *ckpt, const ProjectSettings &s) {
  if (ckpt && !ckpt->features.is_null()) return model::feature_pipeline_from_json(ckpt->features);
  return s.features;
}

}  // namespace

std::string_view job_state_name(JobState s) {
  switch (s) {
    case JobState::kQueued: return "queued";
    case JobState::kRunning: return "running";
    case JobState::kDone: return "done";
    case JobState::kFailed: return "failed";
  }
  return "unknown";
}

json to_json(const Job &j) {
  json out = {{"id", j.id},
              {"kind", j.kind},
              {"state", std::string(job_state_name(j.state))},
              {"progress", j.progress},
              {"result_checkpoint", j.result_checkpoint}};
  if (!j.error.empty()) out["error"] = j.error;
  return out;
}

AnnotationService::AnnotationService(Project *project, ServiceOptions options)
    : project_(project), options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  routes();
}

AnnotationService::~AnnotationService() { stop(); }

int AnnotationService::bind(const std::string &host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

void AnnotationService::serve() { server_->listen_after_bind(); }

int AnnotationService::start(const std::string &host, int port) {
  const int bound = bind(host, port);
  if (bound < 0) return -1;
  server_thread_ = std::thread([this] { serve(); });
  server_->wait_until_ready();
  return bound;
}

void AnnotationService::stop() {
  if (server_) server_->stop();
  if (server_thread_.joinable()) server_thread_.join();
  std::vector<std::thread> workers;
  {
    std::lock_guard<std::mutex> lock(jobs_mu_);
    workers.swap(workers_);
  }
  for (auto &w : workers)
    if (w.joinable()) w.join();
}

Job AnnotationService::job(const std::string &id) const {
  std::lock_guard<std::mutex> lock(jobs_mu_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) throw Error(ErrorKind::kInvalidArgument, "unknown job " + id);
  return it->second;
}

Job AnnotationService::wait(const std::string &id) const {
  std::unique_lock<std::mutex> lock(jobs_mu_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) throw Error(ErrorKind::kInvalidArgument, "unknown job " + id);
  jobs_cv_.wait(lock, [&] { return it->second.state == JobState::kDone || it->second.state == JobState::kFailed; });
  return it->second;
}

void AnnotationService::update(const std::string &id, const std::function<void(Job &)> &fn) {
  {
    std::lock_guard<std::mutex> lock(jobs_mu_);
    Job &j = jobs_.at(id);
    fn(j);
    if ((j.state == JobState::kDone || j.state == JobState::kFailed) && j.kind == "fine_tune") training_ = false;
  }
  jobs_cv_.notify_all();
}

std::string AnnotationService::submit(const std::string &kind, json params) {
  std::string id;
  {
    std::lock_guard<std::mutex> lock(jobs_mu_);
    if (kind == "fine_tune") {
      if (training_) return "";
      training_ = true;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "job-%04d", next_job_++);
    id = buf;
    jobs_[id] = Job{id, kind, JobState::kQueued, 0.0, "", ""};
    workers_.emplace_back([this, id, kind, params = std::move(params)] {
      update(id, [](Job &j) { j.state = JobState::kRunning; });
      try {
        if (kind == "fine_tune")
          run_fine_tune(id, params);
        else
          run_predict_all(id, params);
      } catch (const std::exception &e) {
        const std::string msg = e.what();
        update(id, [&](Job &j) {
          j.state = JobState::kFailed;
          j.error = msg;
        });
      }
    });
  }
  return id;
}

void AnnotationService::run_fine_tune(const std::string &id, const json &params) {
  const ProjectSettings settings = project_->settings();
  const std::string base_id = params.value("base_checkpoint", project_->active_checkpoint());
  std::shared_ptr<const model::Checkpoint> base;
  if (!base_id.empty()) {
    base = project_->checkpoint(base_id);
    if (!base) throw Error(ErrorKind::kInvalidArgument, "unknown checkpoint " + base_id);
  }
  const model::FeaturePipeline pipeline = pipeline_for(base.get(), settings);
  const model::ModelConfig mcfg = base ? base->config : settings.model;

  model::TrainConfig tcfg = options_.fine_tune;
  tcfg.epochs = params.value("epochs", tcfg.epochs);
  tcfg.seed = params.value("seed", tcfg.seed);
  tcfg.learning_rate = params.value("learning_rate", tcfg.learning_rate);
  tcfg.batch_size = params.value("batch_size", tcfg.batch_size);
  tcfg.checkpoint_every = 0;
  tcfg.check();

  std::vector<std::string> clips;
  if (params.contains("clips")) {
    clips = params.at("clips").get<std::vector<std::string>>();
  } else {
    for (const auto &c : project_->manifest().clips)
      if (project_->latest_labels(c.clip_id).version > 0) clips.push_back(c.clip_id);
  }
  std::vector<model::TrainingExample> data;
  for (const auto &clip : clips) {
    if (!project_->find(clip)) throw Error(ErrorKind::kInvalidArgument, "unknown clip " + clip);
    const auto fm = project_->chroma(clip, pipeline.chroma.bins);
    const LabelTrack truth = project_->latest_labels(clip).track;
    for (auto &ex : model::make_chunk_examples(*fm, project_->duration(clip), truth, pipeline, mcfg))
      data.push_back(std::move(ex));
  }
  if (data.empty()) throw Error(ErrorKind::kEmptyPartition, "no labelled clips to train on");

  model::TrainOptions opts;
  opts.features = model::to_json(pipeline);
  const int epochs = std::max(1, tcfg.epochs);
  opts.on_epoch = [&](const model::EpochLog &log) {
    update(id, [&](Job &j) { j.progress = static_cast<double>(log.epoch) / epochs; });
  };
  model::Checkpoint result;
  if (base) {
    result = model::fine_tune(*base, data, tcfg, opts);
  } else {
    model::TrainResult tr;
    const auto net = model::train_new(mcfg, tcfg, data, opts, &tr);
    result = model::make_checkpoint(net, {tr.epochs_run, tr.loss_curve.empty() ? 0.0 : tr.loss_curve.back(), tcfg.seed},
                                    opts.features);
  }
  const std::string ckpt = project_->add_checkpoint(result);
  project_->set_active_checkpoint(ckpt);
  update(id, [&](Job &j) {
    j.state = JobState::kDone;
    j.progress = 1.0;
    j.result_checkpoint = ckpt;
  });
}

void AnnotationService::run_predict_all(const std::string &id, const json &params) {
  const ProjectSettings settings = project_->settings();
  const std::string ckpt_id = params.value("checkpoint", project_->active_checkpoint());
  const auto ckpt = project_->checkpoint(ckpt_id);
  if (!ckpt) throw Error(ErrorKind::kInvalidArgument, "no checkpoint to predict with");
  const model::FeaturePipeline pipeline = pipeline_for(ckpt.get(), settings);
  const auto net = model::model_from_checkpoint(*ckpt);
  const fs::path out = fs::path(project_->dir()) / "predictions" / ckpt_id;
  fs::create_directories(out);
  const auto &clips = project_->manifest().clips;
  for (size_t i = 0; i < clips.size(); ++i) {
    const auto fm = project_->chroma(clips[i].clip_id, pipeline.chroma.bins);
    const auto decoded = model::predict_track(net, *fm, pipeline, settings.decode);
    write_label_file((out / (clips[i].clip_id + ".tsv")).string(), decoded.track);
    update(id, [&](Job &j) { j.progress = static_cast<double>(i + 1) / clips.size(); });
  }
  update(id, [&](Job &j) {
    j.state = JobState::kDone;
    j.progress = 1.0;
    j.result_checkpoint = ckpt_id;
  });
}

void AnnotationService::routes() {
  httplib::Server &s = *server_;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                         {"Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS"},
                         {"Access-Control-Allow-Headers", "Content-Type"}});
  s.Options(R"(/.*)", [](const httplib::Request &, httplib::Response &res) { res.status = 204; });
  s.set_exception_handler([](const httplib::Request &, httplib::Response &res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception &e) {
      send_error(res, 500, e.what());
    } catch (...) {
      send_error(res, 500, "internal error");
    }
  });

  s.Get("/api/clips", [this](const httplib::Request &, httplib::Response &res) {
    json clips = json::array();
    for (const auto &c : project_->manifest().clips) {
      json j = {{"id", c.clip_id},
                {"singer", c.singer},
                {"raga", c.raga},
                {"split_tag", c.split_tag},
                {"duration", project_->duration(c.clip_id)},
                {"label_version", project_->latest_labels(c.clip_id).version}};
      if (c.tonic_hz) j["tonic"] = *c.tonic_hz;
      clips.push_back(j);
    }
    send_json(res, 200, {{"clips", clips}, {"active_checkpoint", project_->active_checkpoint()}});
  });

  s.Get(R"(/api/clips/([^/]+)/audio)", [this](const httplib::Request &req, httplib::Response &res) {
    const std::string id = req.matches[1];
    if (!project_->find(id)) return send_error(res, 404, "unknown clip " + id);
    res.set_content(project_->audio_bytes(id), "audio/wav");
  });

  s.Get(R"(/api/clips/([^/]+)/features)", [this](const httplib::Request &req, httplib::Response &res) {
    const std::string id = req.matches[1];
    if (!project_->find(id)) return send_error(res, 404, "unknown clip " + id);
    const std::string kind = req.has_param("kind") ? req.get_param_value("kind") : "chroma";
    if (kind == "pitch") {
      const auto pt = project_->pitch(id);
      return send_json(res, 200, {{"clip_id", id},
                                  {"kind", "pitch"},
                                  {"hop_seconds", pt->frame_hop_seconds},
                                  {"origin_seconds", pt->frame_origin_seconds},
                                  {"frames", pt->f0_hz.size()},
                                  {"data", pt->f0_hz}});
    }
    if (kind != "chroma") return send_error(res, 400, "kind must be chroma or pitch");
    int bins = project_->settings().features.chroma.bins;
    if (req.has_param("bins")) {
      try {
        bins = std::stoi(req.get_param_value("bins"));
      } catch (const std::exception &) {
        return send_error(res, 400, "bins must be an integer");
      }
    }
    if (bins <= 0 || bins % 12 != 0) return send_error(res, 400, "bins must be a positive multiple of 12");
    const auto fm = project_->chroma(id, bins);
    json data = json::array();
    for (int t = 0; t < fm->frames(); ++t) {
      std::vector<float> col(fm->values.col(t).data(), fm->values.col(t).data() + fm->bins());
      data.push_back(col);
    }
    send_json(res, 200, {{"clip_id", id},
                         {"kind", "chroma"},
                         {"bins", bins},
                         {"frames", fm->frames()},
                         {"hop_seconds", fm->frame_hop_seconds},
                         {"origin_seconds", fm->frame_origin_seconds},
                         {"data", data}});
  });

  s.Get(R"(/api/clips/([^/]+)/labels)", [this](const httplib::Request &req, httplib::Response &res) {
    const std::string id = req.matches[1];
    if (!project_->find(id)) return send_error(res, 404, "unknown clip " + id);
    const LabelVersion v = project_->latest_labels(id);
    send_json(res, 200, {{"clip_id", id},
                         {"version", v.version},
                         {"author", v.author},
                         {"timestamp", v.timestamp},
                         {"events", track_json(v.track)}});
  });

  s.Put(R"(/api/clips/([^/]+)/labels)", [this](const httplib::Request &req, httplib::Response &res) {
    const std::string id = req.matches[1];
    if (!project_->find(id)) return send_error(res, 404, "unknown clip " + id);
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::parse_error &e) {
      return send_error(res, 400, std::string("malformed JSON: ") + e.what());
    }
    if (!body.is_object() || !body.contains("base_version") || !body.at("base_version").is_number_integer())
      return send_error(res, 400, "body needs an integer base_version");
    if (!body.contains("events")) return send_error(res, 400, "body needs an events array");
    bool force = req.has_param("force") && truthy(req.get_param_value("force"));
    if (body.contains("force") && body.at("force").is_boolean()) force = force || body.at("force").get<bool>();
    const std::string author = body.contains("author") && body.at("author").is_string()
                                   ? body.at("author").get<std::string>()
                                   : "anonymous";
    LabelTrack track;
    SaveResult r;
    try {
      track = track_from_json(body.at("events"), id);
      r = project_->save_labels(id, track, body.at("base_version").get<int>(), author, force);
    } catch (const Error &e) {
      return send_error(res, 400, e.what());
    }
    switch (r.status) {
      case SaveStatus::kConflict:
        return send_json(res, 409, {{"error", "version conflict"}, {"current_version", r.version}});
      case SaveStatus::kRejected:
        return send_json(res, 422, {{"error", "annotation rule violations"},
                                    {"current_version", r.version},
                                    {"violations", violations_json(r.violations, track)}});
      case SaveStatus::kSaved:
        break;
    }
    send_json(res, 200, {{"clip_id", id}, {"version", r.version}, {"violations", violations_json(r.violations, track)}});
  });

  s.Get(R"(/api/clips/([^/]+)/predictions)", [this](const httplib::Request &req, httplib::Response &res) {
    const std::string id = req.matches[1];
    if (!project_->find(id)) return send_error(res, 404, "unknown clip " + id);
    const std::string ckpt_id =
        req.has_param("checkpoint") ? req.get_param_value("checkpoint") : project_->active_checkpoint();
    if (ckpt_id.empty()) return send_error(res, 404, "no checkpoint available");
    const auto ckpt = project_->checkpoint(ckpt_id);
    if (!ckpt) return send_error(res, 404, "unknown checkpoint " + ckpt_id);
    const ProjectSettings settings = project_->settings();
    const model::FeaturePipeline pipeline = pipeline_for(ckpt.get(), settings);
    const auto fm = project_->chroma(id, pipeline.chroma.bins);
    const auto net = model::model_from_checkpoint(*ckpt);
    const auto decoded = model::predict_track(net, *fm, pipeline, settings.decode);
    json events = json::array();
    for (size_t i = 0; i < decoded.track.events.size(); ++i) {
      json e = event_json(decoded.track.events[i]);
      e["confidence"] = decoded.confidence[i];
      events.push_back(e);
    }
    send_json(res, 200, {{"clip_id", id}, {"checkpoint", ckpt_id}, {"events", events}});
  });

  s.Get("/api/checkpoints", [this](const httplib::Request &, httplib::Response &res) {
    send_json(res, 200, {{"checkpoints", project_->checkpoint_ids()}, {"active", project_->active_checkpoint()}});
  });

  auto post_job = [this](const std::string &kind) {
    return [this, kind](const httplib::Request &req, httplib::Response &res) {
      json params = json::object();
      if (!req.body.empty()) {
        try {
          params = json::parse(req.body);
        } catch (const json::parse_error &e) {
          return send_error(res, 400, std::string("malformed JSON: ") + e.what());
        }
        if (!params.is_object()) return send_error(res, 400, "body must be a JSON object");
      }
      const std::string id = submit(kind, std::move(params));
      if (id.empty()) return send_error(res, 503, "a training job is already running");
      send_json(res, 202, to_json(job(id)));
    };
  };
  s.Post("/api/jobs/fine_tune", post_job("fine_tune"));
  s.Post("/api/jobs/predict_all", post_job("predict_all"));

  s.Get(R"(/api/jobs/([^/]+))", [this](const httplib::Request &req, httplib::Response &res) {
    const std::string id = req.matches[1];
    std::lock_guard<std::mutex> lock(jobs_mu_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return send_error(res, 404, "unknown job " + id);
    send_json(res, 200, to_json(it->second));
  });
}

}  // namespace orna::service
