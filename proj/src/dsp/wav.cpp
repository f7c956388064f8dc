// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lmfca/dsp/waveform.hpp"

namespace lmfca::dsp {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

template <typename T>
T read_le(const std::string& bytes, std::size_t pos) {
  T v;
  std::memcpy(&v, bytes.data() + pos, sizeof(T));
  return v;
}

template <typename T>
void write_le(std::string& out, T v) {
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  out.append(b, sizeof(T));
}

}  // namespace

void validate(const Waveform& w) {
  if (w.sample_rate != kSampleRate) {
    throw ContractViolation("expected 16000 Hz audio, got " + std::to_string(w.sample_rate));
  }
  require(!w.channels.empty(), "waveform has no channels");
  const std::size_t n = w.channels.front().size();
  for (const auto& ch : w.channels) {
    require(ch.size() == n, "waveform channels differ in length");
    for (double v : ch) {
      if (!std::isfinite(v) || std::abs(v) > kClipGuard) {
        throw ContractViolation("waveform sample out of range: " + std::to_string(v));
      }
    }
  }
}

Waveform read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  const std::string where = " in " + path.string();
  if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 || bytes.compare(8, 4, "WAVE") != 0) {
    throw LoadError("not a RIFF/WAVE file" + where);
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t data_pos = 0, data_len = 0;
  bool have_fmt = false, have_data = false;
  for (std::size_t pos = 12; pos + 8 <= bytes.size();) {
    const std::string id = bytes.substr(pos, 4);
    const std::uint32_t len = read_le<std::uint32_t>(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (id == "fmt ") {
      if (len < 16 || body + len > bytes.size()) throw LoadError("bad fmt chunk" + where);
      format = read_le<std::uint16_t>(bytes, body);
      channels = read_le<std::uint16_t>(bytes, body + 2);
      rate = read_le<std::uint32_t>(bytes, body + 4);
      bits = read_le<std::uint16_t>(bytes, body + 14);
      if (format == kFormatExtensible && len >= 26) format = read_le<std::uint16_t>(bytes, body + 24);
      have_fmt = true;
    } else if (id == "data") {
      data_pos = body;
      data_len = std::min<std::size_t>(len, bytes.size() - body);
      have_data = true;
    }
    pos = body + len + (len & 1);
  }
  if (!have_fmt || !have_data) throw LoadError("missing fmt or data chunk" + where);
  if (channels == 0) throw LoadError("zero channels" + where);
  if (rate != static_cast<std::uint32_t>(kSampleRate)) {
    throw LoadError("sample rate " + std::to_string(rate) + " Hz is not 16000 Hz" + where);
  }

  std::size_t width;
  if (format == kFormatPcm && bits == 16) width = 2;
  else if (format == kFormatFloat && bits == 32) width = 4;
  else throw LoadError("unsupported sample format (need 16-bit PCM or 32-bit float)" + where);

  const std::size_t frames = data_len / (width * channels);
  Waveform w;
  w.sample_rate = kSampleRate;
  w.channels.assign(channels, std::vector<double>(frames));
  for (std::size_t i = 0; i < frames; ++i) {
    for (std::size_t c = 0; c < channels; ++c) {
      const std::size_t at = data_pos + (i * channels + c) * width;
      w.channels[c][i] = width == 2 ? read_le<std::int16_t>(bytes, at) / 32768.0
                                    : static_cast<double>(read_le<float>(bytes, at));
    }
  }
  return w;
}

void write_wav(const std::filesystem::path& path, const Waveform& w, SampleFormat format) {
  require(!w.channels.empty(), "write_wav: waveform has no channels");
  const std::uint16_t channels = static_cast<std::uint16_t>(w.num_channels());
  const std::uint16_t width = format == SampleFormat::Pcm16 ? 2 : 4;
  const std::size_t frames = w.num_samples();
  const std::uint32_t data_len = static_cast<std::uint32_t>(frames * channels * width);

  std::string out = "RIFF";
  write_le<std::uint32_t>(out, 36 + data_len);
  out += "WAVEfmt ";
  write_le<std::uint32_t>(out, 16);
  write_le<std::uint16_t>(out, format == SampleFormat::Pcm16 ? kFormatPcm : kFormatFloat);
  write_le<std::uint16_t>(out, channels);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(w.sample_rate));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(w.sample_rate) * channels * width);
  write_le<std::uint16_t>(out, static_cast<std::uint16_t>(channels * width));
  write_le<std::uint16_t>(out, static_cast<std::uint16_t>(8 * width));
  out += "data";
  write_le<std::uint32_t>(out, data_len);
  out.reserve(out.size() + data_len);
  for (std::size_t i = 0; i < frames; ++i) {
    for (std::size_t c = 0; c < channels; ++c) {
      const double v = w.channels[c][i];
      if (format == SampleFormat::Pcm16) {
        const double scaled = std::clamp(std::round(v * 32768.0), -32768.0, 32767.0);
        write_le<std::int16_t>(out, static_cast<std::int16_t>(scaled));
      } else {
        write_le<float>(out, static_cast<float>(v));
      }
    }
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw LoadError("cannot open " + path.string() + " for writing");
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
}

}  // namespace lmfca::dsp
