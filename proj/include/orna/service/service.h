// include/orna/service/service.h

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

#ifndef ORNA_SERVICE_SERVICE_H_
#define ORNA_SERVICE_SERVICE_H_

#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "orna/service/project.h"

namespace httplib {
class Server;
}

namespace orna::service {

enum class JobState { kQueued, kRunning, kDone, kFailed };
std::string_view job_state_name(JobState s);

struct Job {
  std::string id;
  std::string kind;  // fine_tune | predict_all
  JobState state = JobState::kQueued;
  double progress = 0.0;
  std::string result_checkpoint;
  std::string error;
};

nlohmann::json to_json(const Job &j);

struct ServiceOptions {
  model::TrainConfig fine_tune;  // defaults for POST /api/jobs/fine_tune
  ServiceOptions() { fine_tune.epochs = 20; }
};

// HTTP front end over a Project:
//   GET  /api/clips
//   GET  /api/clips/{id}/audio
//   GET  /api/clips/{id}/features?kind=chroma|pitch&bins=F
//   GET  /api/clips/{id}/labels
//   PUT  /api/clips/{id}/labels[?force=true]
//   GET  /api/clips/{id}/predictions[?checkpoint=ID]
//   POST /api/jobs/fine_tune
//   POST /api/jobs/predict_all
//   GET  /api/jobs/{id}
//   GET  /api/checkpoints
// Every response carries permissive CORS headers.
class AnnotationService {
 public:
  AnnotationService(Project *project, ServiceOptions options = {});
  ~AnnotationService();

  AnnotationService(const AnnotationService &) = delete;
  AnnotationService &operator=(const AnnotationService &) = delete;

  // Port 0 binds any free port. Returns the bound port or -1.
  int bind(const std::string &host, int port);
  // Blocks until stop().
  void serve();
  // Binds and serves on a background thread; returns the port or -1.
  int start(const std::string &host = "127.0.0.1", int port = 0);
  void stop();

  Job job(const std::string &id) const;
  // Blocks until the job finishes; returns its final state.
  Job wait(const std::string &id) const;

 private:
  void routes();
  std::string submit(const std::string &kind, nlohmann::json params);
  void run_fine_tune(const std::string &id, const nlohmann::json &params);
  void run_predict_all(const std::string &id, const nlohmann::json &params);
  void update(const std::string &id, const std::function<void(Job &)> &fn);

  Project *project_;
  ServiceOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::thread server_thread_;
  mutable std::mutex jobs_mu_;
  mutable std::condition_variable jobs_cv_;
  std::map<std::string, Job> jobs_;
  std::vector<std::thread> workers_;
  bool training_ = false;
  int next_job_ = 1;
};

}  // namespace orna::service

#endif  // ORNA_SERVICE_SERVICE_H_
