// tests/unit/cli_test.cc

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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "orna/cli/cli.h"
#include "orna/cli/run_config.h"
#include "orna/core/label_io.h"
#include "orna/model/checkpoint.h"
#include "orna/model/trainer.h"
#include "support/oracles.h"

using namespace orna;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run orna_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "orna");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const fs::path &p, const std::string &text) { std::ofstream(p) << text; }

// A config small enough for a test: two-layer network, few epochs.
std::string small_config(const fs::path &dir) {
  json j = {{"model",
             {{"encoder_filters", {8, 16}},
              {"decoder_filters", {16, 8}},
              {"encoder_dilations", {1, 2}},
              {"decoder_dilations", {2, 1}}}},
            {"train", {{"epochs", 2}}}};
  const auto p = dir / "small.json";
  spit(p, j.dump(2));
  return p.string();
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(orna_cli({}).code == cli::kExitValidation);
  CHECK(orna_cli({"bogus"}).code == cli::kExitValidation);
  CHECK(orna_cli({"eval", "--truth", "/"}).code == cli::kExitValidation);
  CHECK(orna_cli({"synth", "--n", "-3", "--out", "/tmp/x"}).code == cli::kExitValidation);
  CHECK(orna_cli({"--help"}).code == cli::kExitOk);
  const fs::path dir = orna::testing::scratch_dir("cli_usage");
  spit(dir / "bad.json", R"({"train": {"epochs": 1, "epoch": 2}})");
  CHECK(orna_cli({"--config", (dir / "bad.json").string(), "train", "--manifest", "m.json", "--out", "o"}).code ==
        cli::kExitValidation);
  spit(dir / "t.tsv", "0.5\t0.2\tK\n");
  CHECK(orna_cli({"chunk", "--labels", (dir / "t.tsv").string()}).code == cli::kExitValidation);
}

TEST_CASE("missing files are runtime failures") {
  const Run r = orna_cli({"train", "--manifest", "/nonexistent/manifest.json", "--out", "/tmp/orna_none"});
  CHECK(r.code == cli::kExitRuntime);
  CHECK(!r.err.empty());
}

TEST_CASE("synth, train, predict, eval and kappa compose") {
  const fs::path dir = orna::testing::scratch_dir("cli_flow");
  const std::string cfg = small_config(dir);
  const std::string data = (dir / "data").string();
  REQUIRE(orna_cli({"--seed", "3", "synth", "--n", "3", "--clip-seconds", "6", "--out", data}).code == 0);
  const std::string manifest = (dir / "data" / "manifest.json").string();
  REQUIRE(fs::exists(manifest));
  CHECK(fs::exists(dir / "data" / "labels" / "syn_0002.tsv"));

  const Run t = orna_cli({"--config", cfg, "train", "--manifest", manifest, "--out", (dir / "run").string()});
  REQUIRE(t.code == 0);
  CHECK(fs::exists(dir / "run" / "model.orna"));
  CHECK(fs::exists(dir / "run" / "train_log.jsonl"));
  int lines = 0;
  std::istringstream log(slurp(dir / "run" / "train_log.jsonl"));
  for (std::string l; std::getline(log, l);) {
    CHECK(json::parse(l).contains("mean_loss"));
    ++lines;
  }
  CHECK(lines == 2);

  const Run p = orna_cli({"predict", "--checkpoint", (dir / "run" / "model.orna").string(), "--manifest", manifest,
                          "--out", (dir / "pred").string()});
  REQUIRE(p.code == 0);
  for (int i = 0; i < 3; ++i) CHECK(fs::exists(dir / "pred" / ("syn_000" + std::to_string(i) + ".tsv")));

  const std::string labels = (dir / "data" / "labels").string();
  const Run self = orna_cli({"eval", "--pred", labels, "--truth", labels, "--duration", "6"});
  REQUIRE(self.code == 0);
  const json rep = json::parse(self.out);
  CHECK(rep["frame"]["macro"]["f1"].get<double>() == 1.0);
  CHECK(rep["event_collar"]["macro"]["f1"].get<double>() == 1.0);
  CHECK(rep["confusion"].size() == 6);

  const Run scored = orna_cli({"eval", "--pred", (dir / "pred").string(), "--truth", labels, "--duration", "6",
                               "--out", (dir / "report.json").string()});
  REQUIRE(scored.code == 0);
  CHECK(json::parse(slurp(dir / "report.json")) == json::parse(scored.out));

  const Run k = orna_cli({"kappa", "--a", labels, "--b", labels, "--duration", "6"});
  REQUIRE(k.code == 0);
  CHECK(json::parse(k.out)["kappa"].get<double>() == 1.0);
  CHECK(json::parse(k.out)["clips"].get<int>() == 3);

  const Run fine = orna_cli({"--config", cfg, "train", "--manifest", manifest, "--init",
                             (dir / "run" / "model.orna").string(), "--epochs", "1", "--out",
                             (dir / "ft").string()});
  REQUIRE(fine.code == 0);
  const auto base = model::load_checkpoint((dir / "run" / "model.orna").string());
  const auto tuned = model::load_checkpoint((dir / "ft" / "model.orna").string());
  for (size_t i = 0; i < base.params.encoder.size(); ++i)
    CHECK(tuned.params.encoder[i].weight == base.params.encoder[i].weight);
  CHECK(tuned.meta.epoch == base.meta.epoch + 1);
}

TEST_CASE("zero-epoch training writes the initialisation, reproducibly") {
  const fs::path dir = orna::testing::scratch_dir("cli_init");
  const std::string cfg = small_config(dir);
  REQUIRE(orna_cli({"synth", "--n", "2", "--clip-seconds", "4", "--out", (dir / "data").string()}).code == 0);
  const std::string manifest = (dir / "data" / "manifest.json").string();
  for (const char *o : {"a", "b"})
    REQUIRE(orna_cli({"--config", cfg, "--seed", "4", "train", "--manifest", manifest, "--epochs", "0", "--out",
                      (dir / o).string()})
                .code == 0);
  const std::string a = slurp(dir / "a" / "model.orna");
  CHECK(a == slurp(dir / "b" / "model.orna"));
  const auto ck = model::decode_checkpoint(a);
  cli::RunConfig rc = cli::read_run_config(cfg);
  rc.train.epochs = 0;
  rc.train.seed = 4;
  const auto net = model::train_new(rc.model, rc.train, {});
  CHECK(ck.params == net.params());
  CHECK(ck.meta.epoch == 0);
}

TEST_CASE("chunk prints plans") {
  const fs::path dir = orna::testing::scratch_dir("cli_chunk");
  spit(dir / "c.tsv", "9.0\t11.0\tAn\n2.0\t2.2\tK\n");
  const Run r = orna_cli({"chunk", "--labels", (dir / "c.tsv").string(), "--duration", "25"});
  REQUIRE(r.code == 0);
  const json plans = json::parse(r.out);
  REQUIRE(plans.is_array());
  CHECK(plans.size() >= 3);
  CHECK(plans[0]["start"].get<double>() == 0.0);
}

TEST_CASE("experiment writes a report") {
  const fs::path dir = orna::testing::scratch_dir("cli_exp");
  const std::string cfg = small_config(dir);
  REQUIRE(orna_cli({"synth", "--n", "4", "--clip-seconds", "4", "--out", (dir / "data").string()}).code == 0);
  const Run r = orna_cli({"--config", cfg, "experiment", "--split", "exp4", "--manifest",
                          (dir / "data" / "manifest.json").string(), "--epochs", "1", "--out",
                          (dir / "exp").string()});
  REQUIRE(r.code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep["split"] == "exp4");
  CHECK(json::parse(slurp(dir / "exp" / "report.json")) == rep);
  CHECK(fs::exists(dir / "exp" / "confusion.csv"));
  CHECK(fs::exists(dir / "exp" / "partition.json"));
  const json part = json::parse(slurp(dir / "exp" / "partition.json"));
  for (const auto &id : part["test"]) CHECK(fs::exists(dir / "exp" / "predictions" / (id.get<std::string>() + ".tsv")));
}

TEST_CASE("shipped split files match the built-in table") {
  const fs::path splits = fs::path(ORNA_SOURCE_DIR) / "configs" / "splits";
  for (int i = 1; i <= 9; ++i) {
    const std::string name = "exp" + std::to_string(i);
    INFO(name);
    const auto b = cli::builtin_split(name);
    REQUIRE(b.has_value());
    CHECK(eval::to_json(eval::read_split_spec((splits / (name + ".json")).string())) == eval::to_json(*b));
    CHECK(eval::to_json(cli::resolve_split(name, "/nonexistent")) == eval::to_json(*b));
  }
  CHECK(!cli::builtin_split("exp10").has_value());
  CHECK_THROWS_AS(cli::resolve_split("exp10", splits.string()), Error);
}

TEST_CASE("shipped run configs parse and round trip") {
  for (const char *name : {"default.json", "desk.json"}) {
    INFO(name);
    const auto c = cli::read_run_config((fs::path(ORNA_SOURCE_DIR) / "configs" / name).string());
    c.check();
    CHECK(cli::to_json(cli::run_config_from_json(cli::to_json(c))) == cli::to_json(c));
  }
  const cli::RunConfig d;
  CHECK(d.model.input_bins == d.features.chroma.bins);
  json j = {{"ablation", {{"bins", 12}, {"dont_care", false}}}};
  const auto a = cli::run_config_from_json(j);
  CHECK(a.features.chroma.bins == 12);
  CHECK(a.model.input_bins == 12);
  CHECK(!a.model.use_dont_care);
}
