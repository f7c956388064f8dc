// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lmfca/room/rir.hpp"
#include "lmfca/room/scene.hpp"

namespace lmfca::room {

struct ManifestRecord {
  std::string id;
  std::string split;  // train | val | test
  std::filesystem::path mixture, clean, direct;  // relative to the manifest directory
  Room room;
  Vec3 source{}, array_center{};
  double snr_db = 0;
  std::uint64_t seed = 0;
  std::string clean_source, noise_source;
};

struct Manifest {
  std::filesystem::path root;  // directory the record paths are relative to
  std::vector<ManifestRecord> records;

  std::vector<ManifestRecord> split(const std::string& name) const;
  std::filesystem::path resolve(const std::filesystem::path& p) const { return root / p; }
};

inline constexpr const char* kManifestName = "manifest.tsv";

void write_manifest(const std::filesystem::path& path, const Manifest& m);
Manifest read_manifest(const std::filesystem::path& path);

struct SynthOptions {
  std::filesystem::path clean_dir, noise_dir, out_dir;
  std::size_t n_rooms = 200;
  std::size_t rirs_per_room = 20;
  std::uint64_t seed = 1;
  double snr_min = 0.0, snr_max = 12.0;
  double max_clean_seconds = 0.0;  // crop longer utterances; 0 keeps them whole
  double val_fraction = 0.1, test_fraction = 0.1;
  // Synthetic clean and noise signals instead of directories.
  bool self_test = false;
  std::size_t self_test_utterances = 8;
  double self_test_seconds = 3.0;
  unsigned threads = 1;
  SceneLimits limits;
  RirOptions rir;
};

/// Renders n_rooms * rirs_per_room examples into out_dir and writes
/// out_dir/manifest.tsv. Deterministic under `seed` regardless of threads.
Manifest synth_dataset(const SynthOptions& options);

}  // namespace lmfca::room
