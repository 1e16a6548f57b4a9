// src/model/checkpoint.cc

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

#include "orna/model/checkpoint.h"

#include <bit>
#include <cstring>

#include "orna/core/file_io.h"

namespace orna::model {

namespace {

static_assert(std::endian::native == std::endian::little, "little-endian host required");

constexpr std::string_view kMagic = "ORNA1";

template <typename T>
void put(std::string *s, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  s->append(buf, sizeof(T));
}

template <typename T>
T get(std::string_view bytes, size_t *pos) {
  if (*pos + sizeof(T) > bytes.size()) throw Error(ErrorKind::kFormat, "checkpoint: truncated");
  T v;
  std::memcpy(&v, bytes.data() + *pos, sizeof(T));
  *pos += sizeof(T);
  return v;
}

std::string_view get_bytes(std::string_view bytes, size_t *pos, size_t n) {
  if (*pos + n > bytes.size()) throw Error(ErrorKind::kFormat, "checkpoint: truncated");
  std::string_view out = bytes.substr(*pos, n);
  *pos += n;
  return out;
}

}  // namespace

std::string encode_checkpoint(const Checkpoint &c) {
  nlohmann::json header = {{"config", to_json(c.config)},
                           {"meta", {{"epoch", c.meta.epoch}, {"loss", c.meta.loss}, {"seed", c.meta.seed}}},
                           {"features", c.features}};
  const std::string h = header.dump();
  std::string s(kMagic);
  put<std::uint32_t>(&s, static_cast<std::uint32_t>(h.size()));
  s += h;

  EdTcnParams<float> params = c.params;
  const auto refs = param_refs<float>(&params, nullptr, ParamGroup::kAll);
  put<std::uint32_t>(&s, static_cast<std::uint32_t>(refs.size()));
  for (const auto &r : refs) {
    put<std::uint32_t>(&s, static_cast<std::uint32_t>(r.name.size()));
    s += r.name;
    put<std::uint32_t>(&s, static_cast<std::uint32_t>(r.value->rows()));
    put<std::uint32_t>(&s, static_cast<std::uint32_t>(r.value->cols()));
    const size_t n = static_cast<size_t>(r.value->size());
    s.append(reinterpret_cast<const char *>(r.value->data()), n * sizeof(float));
  }
  return s;
}

Checkpoint decode_checkpoint(std::string_view bytes) {
  if (bytes.substr(0, kMagic.size()) != kMagic) throw Error(ErrorKind::kFormat, "checkpoint: bad magic");
  size_t pos = kMagic.size();
  const auto hlen = get<std::uint32_t>(bytes, &pos);
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(get_bytes(bytes, &pos, hlen));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kFormat, std::string("checkpoint header: ") + e.what());
  }
  Checkpoint c;
  try {
    c.config = model_config_from_json(header.at("config"));
    const auto &m = header.at("meta");
    c.meta.epoch = m.at("epoch").get<int>();
    c.meta.loss = m.at("loss").get<double>();
    c.meta.seed = m.at("seed").get<std::uint64_t>();
    c.features = header.value("features", nlohmann::json());
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kFormat, std::string("checkpoint header: ") + e.what());
  }

  EdTcn<float> shell(c.config);
  c.params = shell.params();
  const auto refs = param_refs<float>(&c.params, nullptr, ParamGroup::kAll);
  const auto count = get<std::uint32_t>(bytes, &pos);
  if (count != refs.size()) throw Error(ErrorKind::kFormat, "checkpoint: tensor count mismatch");
  for (const auto &r : refs) {
    const auto nlen = get<std::uint32_t>(bytes, &pos);
    const std::string_view name = get_bytes(bytes, &pos, nlen);
    if (name != r.name) throw Error(ErrorKind::kFormat, "checkpoint: expected tensor " + r.name);
    const auto rows = get<std::uint32_t>(bytes, &pos);
    const auto cols = get<std::uint32_t>(bytes, &pos);
    if (rows != r.value->rows() || cols != r.value->cols())
      throw Error(ErrorKind::kFormat, "checkpoint: shape mismatch for " + r.name);
    const std::string_view data = get_bytes(bytes, &pos, size_t(rows) * cols * sizeof(float));
    std::memcpy(r.value->data(), data.data(), data.size());
  }
  if (pos != bytes.size()) throw Error(ErrorKind::kFormat, "checkpoint: trailing bytes");
  return c;
}

void save_checkpoint(const std::string &path, const Checkpoint &c) { write_file(path, encode_checkpoint(c)); }

Checkpoint load_checkpoint(const std::string &path) { return decode_checkpoint(read_file(path)); }

Checkpoint make_checkpoint(const EdTcn<float> &model, const CheckpointMeta &meta,
                           const nlohmann::json &features) {
  return {model.config(), model.params(), meta, features};
}

EdTcn<float> model_from_checkpoint(const Checkpoint &c) {
  EdTcn<float> m(c.config);
  m.params() = c.params;
  return m;
}

}  // namespace orna::model
