// src/core/wav.cc

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

#include "orna/core/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "orna/core/types.h"

namespace orna {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t le32(const unsigned char *p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
         std::uint32_t(p[3]) << 24;
}
std::uint16_t le16(const unsigned char *p) { return std::uint16_t(p[0] | p[1] << 8); }

void put32(std::string *s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put16(std::string *s, std::uint16_t v) {
  s->push_back(static_cast<char>(v & 0xFF));
  s->push_back(static_cast<char>(v >> 8));
}

[[noreturn]] void bad(const std::string &msg) { throw Error(ErrorKind::kFormat, "wav: " + msg); }

}  // namespace

WavData decode_wav(std::string_view bytes) {
  const auto *p = reinterpret_cast<const unsigned char *>(bytes.data());
  const size_t n = bytes.size();
  if (n < 12 || std::memcmp(p, "RIFF", 4) != 0 || std::memcmp(p + 8, "WAVE", 4) != 0)
    bad("not a RIFF/WAVE file");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  const unsigned char *data = nullptr;
  size_t data_len = 0;

  size_t pos = 12;
  while (pos + 8 <= n) {
    const unsigned char *chunk = p + pos;
    std::uint32_t len = le32(chunk + 4);
    size_t body = pos + 8;
    size_t avail = std::min<size_t>(len, n - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (avail < 16) bad("short fmt chunk");
      format = le16(p + body);
      channels = le16(p + body + 2);
      rate = le32(p + body + 4);
      bits = le16(p + body + 14);
      if (format == kFormatExtensible) {
        if (avail < 26) bad("short extensible fmt chunk");
        format = le16(p + body + 24);  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = p + body;
      data_len = avail;
    }
    pos = body + len + (len & 1);
  }
  if (!have_fmt) bad("missing fmt chunk");
  if (!data) bad("missing data chunk");
  if (channels != 1) bad("only mono audio is supported (got " + std::to_string(channels) + " channels)");
  if (rate == 0) bad("zero sample rate");

  WavData out;
  out.sample_rate = static_cast<int>(rate);
  const size_t width = bits / 8;
  if (width == 0) bad("zero sample width");
  const size_t count = data_len / width;
  out.samples.resize(count);
  if (format == kFormatPcm && bits == 16) {
    for (size_t i = 0; i < count; ++i)
      out.samples[i] = static_cast<std::int16_t>(le16(data + 2 * i)) / 32768.0f;
  } else if (format == kFormatPcm && bits == 24) {
    for (size_t i = 0; i < count; ++i) {
      const unsigned char *s = data + 3 * i;
      std::int32_t v = std::int32_t(s[0]) | std::int32_t(s[1]) << 8 | std::int32_t(s[2]) << 16;
      if (v & 0x800000) v |= ~0xFFFFFF;
      out.samples[i] = static_cast<float>(v / 8388608.0);
    }
  } else if (format == kFormatPcm && bits == 32) {
    for (size_t i = 0; i < count; ++i)
      out.samples[i] = static_cast<float>(static_cast<std::int32_t>(le32(data + 4 * i)) / 2147483648.0);
  } else if (format == kFormatFloat && bits == 32) {
    for (size_t i = 0; i < count; ++i) {
      std::uint32_t u = le32(data + 4 * i);
      float f;
      std::memcpy(&f, &u, 4);
      out.samples[i] = std::isfinite(f) ? std::clamp(f, -1.0f, 1.0f) : 0.0f;
    }
  } else {
    bad("unsupported sample format " + std::to_string(format) + "/" + std::to_string(bits) + " bit");
  }
  return out;
}

WavData read_wav(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return decode_wav(ss.str());
}

std::string encode_wav_pcm16(const WavData &wav) {
  const std::uint32_t data_len = static_cast<std::uint32_t>(wav.samples.size() * 2);
  std::string s;
  s.reserve(44 + data_len);
  s += "RIFF";
  put32(&s, 36 + data_len);
  s += "WAVEfmt ";
  put32(&s, 16);
  put16(&s, kFormatPcm);
  put16(&s, 1);
  put32(&s, static_cast<std::uint32_t>(wav.sample_rate));
  put32(&s, static_cast<std::uint32_t>(wav.sample_rate * 2));
  put16(&s, 2);
  put16(&s, 16);
  s += "data";
  put32(&s, data_len);
  for (float x : wav.samples) {
    float c = std::clamp(x, -1.0f, 1.0f);
    auto v = static_cast<std::int16_t>(std::lround(c * 32767.0f));
    put16(&s, static_cast<std::uint16_t>(v));
  }
  return s;
}

void write_wav_pcm16(const std::string &path, const WavData &wav) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  const std::string bytes = encode_wav_pcm16(wav);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace orna
