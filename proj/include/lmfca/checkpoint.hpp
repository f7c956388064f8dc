// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

// Checkpoint container:
//
//   "LMFCA1"
//   u64 header length, header bytes   (key=value lines: model config + state.*)
//   u64 parameter count, records
//   u64 optimizer record count, records
//
// record = u64 name length, name bytes, u64 rank, rank x u64 extents,
//          numel x f32 values. All integers and floats are little-endian.
// Optimizer records are named "adam.m:<param>" and "adam.v:<param>".

#pragma once

#include <filesystem>
#include <string>

#include "lmfca/optim.hpp"

namespace lmfca {

inline constexpr char kCheckpointMagic[] = "LMFCA1";

struct Checkpoint {
  std::string config_text;  // opaque key=value text owned by the model module
  ParameterStore<float> params;
  TrainState state;
};

std::string encode_checkpoint(const Checkpoint& checkpoint);
Checkpoint decode_checkpoint(const std::string& bytes);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace lmfca
