// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/model/config.hpp"

#include <sstream>

#include "lmfca/errors.hpp"

namespace lmfca::model {
namespace {

std::size_t parse_size(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const unsigned long long n = std::stoull(v, &used);
    if (used == v.size() && v.find('-') == std::string::npos) return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
  }
  throw ConfigError("model." + key + ": expected a non-negative integer, got '" + v + "'");
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("model." + key + ": expected true or false, got '" + v + "'");
}

FcaKind parse_kind(const std::string& v) {
  if (v == "t") return FcaKind::Time;
  if (v == "f") return FcaKind::Frequency;
  if (v == "ft") return FcaKind::FreqTime;
  throw ConfigError("model.encoder_kinds: expected t, f or ft, got '" + v + "'");
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  return out;
}

}  // namespace

const char* to_string(FcaKind k) {
  switch (k) {
    case FcaKind::Time: return "t";
    case FcaKind::Frequency: return "f";
    case FcaKind::FreqTime: return "ft";
  }
  return "?";
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::Full: return "full";
    case Variant::NoFca: return "no-fca";
    case Variant::PconvSandglass: return "pconv-sandglass";
    case Variant::FtFcaEverywhere: return "ft-fca-everywhere";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  for (Variant v : {Variant::Full, Variant::NoFca, Variant::PconvSandglass, Variant::FtFcaEverywhere})
    if (s == to_string(v)) return v;
  throw ConfigError("unknown variant '" + s + "' (full, no-fca, pconv-sandglass, ft-fca-everywhere)");
}

ModelConfig ModelConfig::for_variant(Variant v) {
  ModelConfig c;
  c.apply_variant(v);
  return c;
}

void ModelConfig::apply_variant(Variant v) {
  enable_fca = v != Variant::NoFca;
  pconv_for_sandglass = v == Variant::PconvSandglass;
  ft_fca_everywhere = v == Variant::FtFcaEverywhere;
}

void ModelConfig::validate() const {
  if (mics == 0) throw ConfigError("model.mics must be positive");
  for (std::size_t c : channels)
    if (c == 0 || c % 2) throw ConfigError("model channels must be positive and even");
  if (fca_kernel % 2 == 0) throw ConfigError("model.fca_kernel must be odd");
  if (dconv_kernel % 2 == 0) throw ConfigError("model.dconv_kernel must be odd");
}

std::vector<std::pair<std::string, std::string>> ModelConfig::items() const {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  std::string kinds;
  for (std::size_t i = 0; i < 3; ++i) kinds += (i ? "," : "") + std::string(to_string(encoder_kinds[i]));
  return {
      {"mics", std::to_string(mics)},
      {"channels", std::to_string(channels[0]) + "," + std::to_string(channels[1]) + "," +
                       std::to_string(channels[2]) + "," + std::to_string(channels[3])},
      {"fca_kernel", std::to_string(fca_kernel)},
      {"dconv_kernel", std::to_string(dconv_kernel)},
      {"enable_fca", b(enable_fca)},
      {"pconv_for_sandglass", b(pconv_for_sandglass)},
      {"ft_fca_everywhere", b(ft_fca_everywhere)},
      {"trunk_expand", trunk_expand == TrunkExpand::Ghost ? "ghost" : "pconv"},
      {"encoder_kinds", kinds},
      {"skip_fusion", skip_fusion == SkipFusion::Concat ? "concat" : "add"},
      {"init_seed", std::to_string(init_seed)},
  };
}

std::string ModelConfig::to_text() const {
  std::string out;
  for (const auto& [k, v] : items()) out += k + "=" + v + "\n";
  return out;
}

void ModelConfig::set(const std::string& key, const std::string& v) {
  if (key == "mics") {
    mics = parse_size(key, v);
  } else if (key == "channels") {
    const auto parts = split_commas(v);
    if (parts.size() != 4) throw ConfigError("model.channels: expected four comma-separated widths");
    for (std::size_t i = 0; i < 4; ++i) channels[i] = parse_size(key, parts[i]);
  } else if (key == "fca_kernel") {
    fca_kernel = parse_size(key, v);
  } else if (key == "dconv_kernel") {
    dconv_kernel = parse_size(key, v);
  } else if (key == "enable_fca") {
    enable_fca = parse_bool(key, v);
  } else if (key == "pconv_for_sandglass") {
    pconv_for_sandglass = parse_bool(key, v);
  } else if (key == "ft_fca_everywhere") {
    ft_fca_everywhere = parse_bool(key, v);
  } else if (key == "trunk_expand") {
    if (v == "ghost") trunk_expand = TrunkExpand::Ghost;
    else if (v == "pconv") trunk_expand = TrunkExpand::Pconv;
    else throw ConfigError("model.trunk_expand: expected ghost or pconv, got '" + v + "'");
  } else if (key == "encoder_kinds") {
    const auto parts = split_commas(v);
    if (parts.size() != 3) throw ConfigError("model.encoder_kinds: expected three comma-separated kinds");
    for (std::size_t i = 0; i < 3; ++i) encoder_kinds[i] = parse_kind(parts[i]);
  } else if (key == "skip_fusion") {
    if (v == "concat") skip_fusion = SkipFusion::Concat;
    else if (v == "add") skip_fusion = SkipFusion::Add;
    else throw ConfigError("model.skip_fusion: expected concat or add, got '" + v + "'");
  } else if (key == "init_seed") {
    init_seed = parse_size(key, v);
  } else if (key == "variant") {
    apply_variant(parse_variant(v));
  } else {
    throw ConfigError("unknown model key '" + key + "'");
  }
}

ModelConfig ModelConfig::from_text(const std::string& text) {
  ModelConfig c;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("model config: expected key=value, got '" + line + "'");
    c.set(line.substr(0, eq), line.substr(eq + 1));
  }
  c.validate();
  return c;
}

ModelConfig tiny_config(std::size_t mics) {
  ModelConfig c;
  c.mics = mics;
  c.channels = {4, 8, 12, 16};
  return c;
}

}  // namespace lmfca::model
