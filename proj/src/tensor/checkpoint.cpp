// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace lmfca {
namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint IO assumes a little-endian host");

void put_u64(std::string& out, std::uint64_t v) {
  char b[8];
  std::memcpy(b, &v, 8);
  out.append(b, 8);
}

void put_record(std::string& out, const std::string& name, const Tensor<float>& t) {
  put_u64(out, name.size());
  out += name;
  put_u64(out, t.rank());
  for (std::size_t e : t.shape()) put_u64(out, e);
  out.append(reinterpret_cast<const char*>(t.ptr()), t.size() * sizeof(float));
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  std::uint64_t u64() {
    need(8);
    std::uint64_t v;
    std::memcpy(&v, bytes_.data() + pos_, 8);
    pos_ += 8;
    return v;
  }

  std::string str(std::uint64_t n) {
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  std::pair<std::string, Tensor<float>> record() {
    std::string name = str(u64());
    const std::uint64_t rank = u64();
    if (rank > kMaxRank) throw LoadError("checkpoint record '" + name + "' has rank " + std::to_string(rank));
    Shape shape(rank);
    for (auto& e : shape) e = u64();
    std::vector<float> data(numel(shape));
    need(data.size() * sizeof(float));
    std::memcpy(data.data(), bytes_.data() + pos_, data.size() * sizeof(float));
    pos_ += data.size() * sizeof(float);
    return {std::move(name), Tensor<float>(std::move(shape), std::move(data))};
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::uint64_t n) const {
    if (n > bytes_.size() - pos_) throw LoadError("checkpoint truncated");
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string state_text(const TrainState& s) {
  std::string out;
  out += "state.epoch=" + std::to_string(s.epoch) + "\n";
  out += "state.step=" + std::to_string(s.step) + "\n";
  out += "state.lr=" + format_double(s.lr) + "\n";
  out += "state.best_val_loss=" + format_double(s.best_val_loss) + "\n";
  out += "state.epochs_since_improvement=" + std::to_string(s.epochs_since_improvement) + "\n";
  out += "state.seed=" + std::to_string(s.seed) + "\n";
  return out;
}

void parse_state_line(TrainState& s, const std::string& key, const std::string& value) {
  char* end = nullptr;
  if (key == "state.lr" || key == "state.best_val_loss") {
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str()) throw LoadError("bad checkpoint value for " + key);
    (key == "state.lr" ? s.lr : s.best_val_loss) = v;
    return;
  }
  const std::uint64_t v = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str()) throw LoadError("bad checkpoint value for " + key);
  if (key == "state.epoch") s.epoch = v;
  else if (key == "state.step") s.step = v;
  else if (key == "state.epochs_since_improvement") s.epochs_since_improvement = v;
  else if (key == "state.seed") s.seed = v;
  else throw LoadError("unknown checkpoint state key " + key);
}

}  // namespace

std::string encode_checkpoint(const Checkpoint& ck) {
  std::string header = ck.config_text;
  if (!header.empty() && header.back() != '\n') header += '\n';
  header += state_text(ck.state);

  std::string out(kCheckpointMagic);
  put_u64(out, header.size());
  out += header;

  put_u64(out, ck.params.size());
  for (const auto& p : ck.params.params()) put_record(out, p.name, p.var.value());

  put_u64(out, 2 * ck.state.moments.size());
  for (const auto& [name, mom] : ck.state.moments) {
    put_record(out, "adam.m:" + name, mom.m);
    put_record(out, "adam.v:" + name, mom.v);
  }
  return out;
}

Checkpoint decode_checkpoint(const std::string& bytes) {
  const std::size_t magic_len = std::strlen(kCheckpointMagic);
  if (bytes.compare(0, magic_len, kCheckpointMagic) != 0) throw LoadError("not an LMFCA1 checkpoint");
  Reader r(bytes);
  r.str(magic_len);

  Checkpoint ck;
  std::istringstream header(r.str(r.u64()));
  for (std::string line; std::getline(header, line);) {
    if (line.rfind("state.", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw LoadError("malformed checkpoint header line: " + line);
      parse_state_line(ck.state, line.substr(0, eq), line.substr(eq + 1));
    } else {
      ck.config_text += line + "\n";
    }
  }

  const std::uint64_t n_params = r.u64();
  for (std::uint64_t i = 0; i < n_params; ++i) {
    auto [name, tensor] = r.record();
    if (ck.params.contains(name)) throw LoadError("duplicate parameter in checkpoint: " + name);
    ck.params.add(std::move(name), std::move(tensor));
  }

  const std::uint64_t n_opt = r.u64();
  for (std::uint64_t i = 0; i < n_opt; ++i) {
    auto [name, tensor] = r.record();
    const bool is_m = name.rfind("adam.m:", 0) == 0;
    const bool is_v = name.rfind("adam.v:", 0) == 0;
    if (!is_m && !is_v) throw LoadError("unknown optimizer record " + name);
    auto& mom = ck.state.moments[name.substr(7)];
    (is_m ? mom.m : mom.v) = std::move(tensor);
  }
  if (!r.done()) throw LoadError("trailing bytes after checkpoint records");
  return ck;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  const std::string bytes = encode_checkpoint(checkpoint);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw LoadError("failed writing " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open checkpoint " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return decode_checkpoint(ss.str());
}

}  // namespace lmfca
