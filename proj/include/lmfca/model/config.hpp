// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lmfca::model {

enum class FcaKind { Time, Frequency, FreqTime };
enum class Variant { Full, NoFca, PconvSandglass, FtFcaEverywhere };
enum class TrunkExpand { Ghost, Pconv };
enum class SkipFusion { Concat, Add };

const char* to_string(FcaKind k);
const char* to_string(Variant v);
Variant parse_variant(const std::string& s);

struct ModelConfig {
  std::size_t mics = 6;
  std::array<std::size_t, 4> channels{48, 96, 224, 480};
  std::size_t fca_kernel = 5;
  std::size_t dconv_kernel = 3;
  bool enable_fca = true;
  bool pconv_for_sandglass = false;
  bool ft_fca_everywhere = false;
  TrunkExpand trunk_expand = TrunkExpand::Ghost;
  std::array<FcaKind, 3> encoder_kinds{FcaKind::Time, FcaKind::Frequency, FcaKind::Time};
  SkipFusion skip_fusion = SkipFusion::Concat;
  std::uint64_t init_seed = 0;

  std::size_t input_channels() const { return 2 * mics; }
  FcaKind encoder_kind(std::size_t level) const {
    return ft_fca_everywhere ? FcaKind::FreqTime : encoder_kinds.at(level);
  }

  static ModelConfig for_variant(Variant v);
  void apply_variant(Variant v);

  /// Throws ConfigError on inconsistent settings.
  void validate() const;

  /// key=value lines, one per field, in a fixed order.
  std::string to_text() const;
  static ModelConfig from_text(const std::string& text);
  std::vector<std::pair<std::string, std::string>> items() const;
  /// Throws ConfigError on unknown keys or malformed values.
  void set(const std::string& key, const std::string& value);

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Channels 4/8/12/16 at one microphone pair; used by tests and smoke runs.
ModelConfig tiny_config(std::size_t mics = 6);

}  // namespace lmfca::model
