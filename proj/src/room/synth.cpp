// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/room/synth.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "lmfca/parallel.hpp"
#include "lmfca/room/mixture.hpp"
#include "lmfca/room/sources.hpp"

namespace lmfca::room {
namespace fs = std::filesystem;
namespace {

const char* const kHeader =
    "id\tsplit\tmixture\tclean\tdirect\tlength\twidth\theight\tt60\tsrc_x\tsrc_y\tsrc_z\tctr_x\tctr_y\tctr_z\t"
    "snr_db\tseed\tclean_source\tnoise_source";
constexpr std::size_t kFields = 19;
constexpr std::uint64_t kExampleStream = 0x5EEDF00Dull;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw LoadError("manifest: bad number '" + s + "' in " + what);
}

std::vector<fs::path> list_wavs(const fs::path& dir, const char* what) {
  if (dir.empty() || !fs::is_directory(dir)) throw ConfigError(std::string(what) + " directory not found: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".wav") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw ConfigError(std::string(what) + " directory has no WAV files: " + dir.string());
  return out;
}

// Clean and noise providers: either files on disk or synthetic signals.
struct Sources {
  std::vector<fs::path> clean_files, noise_files;
  std::vector<dsp::Waveform> clean_mem, noise_mem;

  std::size_t clean_count() const { return clean_mem.empty() ? clean_files.size() : clean_mem.size(); }
  std::size_t noise_count() const { return noise_mem.empty() ? noise_files.size() : noise_mem.size(); }

  std::pair<dsp::Waveform, std::string> clean(std::size_t i) const {
    if (!clean_mem.empty()) return {clean_mem[i], "synthetic-speech-" + std::to_string(i)};
    dsp::Waveform w = dsp::read_wav(clean_files[i]);
    return {w.channel(0), clean_files[i].filename().string()};
  }
  std::pair<dsp::Waveform, std::string> noise(std::size_t i) const {
    if (!noise_mem.empty()) return {noise_mem[i], "synthetic-noise-" + std::to_string(i)};
    dsp::Waveform w = dsp::read_wav(noise_files[i]);
    if (w.num_channels() != kNumMics) w = w.channel(0);
    return {std::move(w), noise_files[i].filename().string()};
  }
};

std::string split_of(std::size_t room, const SynthOptions& o) {
  if (o.n_rooms < 3) return "train";
  auto count = [&](double frac) { return frac > 0 ? std::max<std::size_t>(1, std::llround(frac * o.n_rooms)) : 0; };
  const std::size_t n_test = count(o.test_fraction), n_val = count(o.val_fraction);
  if (room >= o.n_rooms - n_test) return "test";
  if (room >= o.n_rooms - n_test - n_val) return "val";
  return "train";
}

}  // namespace

std::vector<ManifestRecord> Manifest::split(const std::string& name) const {
  std::vector<ManifestRecord> out;
  for (const auto& r : records)
    if (r.split == name) out.push_back(r);
  return out;
}

void write_manifest(const fs::path& path, const Manifest& m) {
  std::ostringstream os;
  os << kHeader << '\n';
  for (const auto& r : m.records) {
    os << r.id << '\t' << r.split << '\t' << r.mixture.generic_string() << '\t' << r.clean.generic_string() << '\t'
       << r.direct.generic_string() << '\t' << fmt_double(r.room.length) << '\t' << fmt_double(r.room.width) << '\t'
       << fmt_double(r.room.height) << '\t' << fmt_double(r.room.t60);
    for (double v : r.source) os << '\t' << fmt_double(v);
    for (double v : r.array_center) os << '\t' << fmt_double(v);
    os << '\t' << fmt_double(r.snr_db) << '\t' << r.seed << '\t' << r.clean_source << '\t' << r.noise_source << '\n';
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError("cannot write manifest " + path.string());
  out << os.str();
}

Manifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open manifest " + path.string());
  Manifest m;
  m.root = path.parent_path();
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw LoadError("manifest header mismatch in " + path.string());
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, '\t');) f.push_back(cell);
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (f.size() != kFields) throw LoadError("manifest: expected 19 fields at " + where);
    ManifestRecord r;
    r.id = f[0];
    r.split = f[1];
    r.mixture = f[2];
    r.clean = f[3];
    r.direct = f[4];
    r.room = {parse_double(f[5], where), parse_double(f[6], where), parse_double(f[7], where),
              parse_double(f[8], where)};
    for (int k = 0; k < 3; ++k) r.source[k] = parse_double(f[9 + k], where);
    for (int k = 0; k < 3; ++k) r.array_center[k] = parse_double(f[12 + k], where);
    r.snr_db = parse_double(f[15], where);
    try {
      r.seed = std::stoull(f[16]);
    } catch (const std::exception&) {
      throw LoadError("manifest: bad seed at " + where);
    }
    r.clean_source = f[17];
    r.noise_source = f[18];
    m.records.push_back(std::move(r));
  }
  return m;
}

Manifest synth_dataset(const SynthOptions& o) {
  require(o.n_rooms > 0 && o.rirs_per_room > 0, "synth: need at least one room and one placement");
  require(o.snr_min <= o.snr_max, "synth: snr_min > snr_max");
  Sources src;
  if (o.self_test) {
    const auto n = static_cast<std::size_t>(o.self_test_seconds * dsp::kSampleRate);
    for (std::size_t i = 0; i < o.self_test_utterances; ++i)
      src.clean_mem.push_back(synthetic_speech(n, derive_seed(o.seed, 1000 + i)));
    for (std::size_t i = 0; i < 2; ++i) src.noise_mem.push_back(synthetic_noise(4 * n, derive_seed(o.seed, 2000 + i)));
  } else {
    src.clean_files = list_wavs(o.clean_dir, "clean");
    src.noise_files = list_wavs(o.noise_dir, "noise");
  }

  fs::create_directories(o.out_dir / "audio");
  const std::size_t total = o.n_rooms * o.rirs_per_room;
  std::vector<ManifestRecord> records(total);
  std::vector<Room> rooms(o.n_rooms);
  for (std::size_t r = 0; r < o.n_rooms; ++r) rooms[r] = sample_room(derive_seed(o.seed, r), o.limits);

  parallel_for(total, o.threads, [&](std::size_t i) {
    const std::size_t r = i / o.rirs_per_room, j = i % o.rirs_per_room;
    const std::uint64_t ex_seed = derive_seed(o.seed ^ kExampleStream, i);
    std::mt19937_64 rng(ex_seed);
    const RoomScene scene = place_in_room(rooms[r], derive_seed(derive_seed(o.seed, r), j + 1), o.limits);
    const double snr = std::uniform_real_distribution<double>(o.snr_min, o.snr_max)(rng);

    // First usable utterance at or after a random index.
    const std::size_t first = std::uniform_int_distribution<std::size_t>(0, src.clean_count() - 1)(rng);
    dsp::Waveform clean;
    std::string clean_name;
    for (std::size_t k = 0; k < src.clean_count() && clean.num_samples() < dsp::kSampleRate; ++k) {
      std::tie(clean, clean_name) = src.clean((first + k) % src.clean_count());
    }
    if (clean.num_samples() < dsp::kSampleRate) throw ConfigError("no clean utterance is at least 1 s long");
    if (o.max_clean_seconds > 0) {
      const auto cap = static_cast<std::size_t>(o.max_clean_seconds * dsp::kSampleRate);
      if (clean.num_samples() > cap) {
        const std::size_t off = std::uniform_int_distribution<std::size_t>(0, clean.num_samples() - cap)(rng);
        auto& c = clean.channels[0];
        c = std::vector<double>(c.begin() + static_cast<long>(off), c.begin() + static_cast<long>(off + cap));
      }
    }
    auto [noise, noise_name] = src.noise(std::uniform_int_distribution<std::size_t>(0, src.noise_count() - 1)(rng));

    const MixtureExample ex = render_mixture(scene, clean, noise, snr, rng(), o.rir);

    char id[32];
    std::snprintf(id, sizeof id, "r%04zu_p%02zu", r, j);
    ManifestRecord rec;
    rec.id = id;
    rec.split = split_of(r, o);
    rec.mixture = fs::path("audio") / (rec.id + "_mix.wav");
    rec.clean = fs::path("audio") / (rec.id + "_clean.wav");
    rec.direct = fs::path("audio") / (rec.id + "_direct.wav");
    rec.room = scene.room;
    rec.source = scene.source;
    rec.array_center = scene.array_center;
    rec.snr_db = snr;
    rec.seed = ex_seed;
    rec.clean_source = clean_name;
    rec.noise_source = noise_name;
    dsp::write_wav(o.out_dir / rec.mixture, ex.mixture);
    dsp::write_wav(o.out_dir / rec.clean, ex.clean_ref);
    dsp::write_wav(o.out_dir / rec.direct, ex.direct_ref);
    records[i] = std::move(rec);
    spdlog::debug("synth {} room {:.2f}x{:.2f}x{:.2f} t60 {:.2f} snr {:.1f}", id, scene.room.length,
                  scene.room.width, scene.room.height, scene.room.t60, snr);
  });

  Manifest m;
  m.root = o.out_dir;
  m.records = std::move(records);
  write_manifest(o.out_dir / kManifestName, m);
  return m;
}

}  // namespace lmfca::room
