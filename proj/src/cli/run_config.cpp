// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmfca/cli/run_config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>

namespace lmfca::cli {
namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& where, const std::string& v) {
  T out{};
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError(where + ": cannot parse '" + v + "'");
  return out;
}

bool parse_bool(const std::string& where, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(where + ": expected true or false, got '" + v + "'");
}

std::string fmt_double(double v) { return fmt::format("{}", v); }
std::string fmt_bool(bool v) { return v ? "true" : "false"; }

}  // namespace

void RunConfig::set(const std::string& section, const std::string& key, const std::string& v) {
  const std::string where = section.empty() ? key : section + "." + key;
  auto unknown = [&] { throw ConfigError("unknown config key '" + where + "'"); };
  auto num = [&]<typename T>(T& dst) { dst = parse_number<T>(where, v); };

  if (section.empty()) {
    if (key == "threads") num(threads);
    else unknown();
  } else if (section == "model") {
    try {
      model.set(key, v);
    } catch (const ConfigError& e) {
      throw ConfigError("model." + std::string(e.what()));
    }
  } else if (section == "train") {
    auto& t = train;
    if (key == "lr") num(t.lr);
    else if (key == "batch_size") num(t.batch_size);
    else if (key == "epochs") num(t.epochs);
    else if (key == "seed") num(t.seed);
    else if (key == "plateau_patience") num(t.plateau_patience);
    else if (key == "grad_clip_norm") num(t.grad_clip_norm);
    else if (key == "max_steps") num(t.max_steps);
    else if (key == "alpha") num(t.loss.alpha);
    else if (key == "beta") num(t.loss.beta);
    else if (key == "sisdr_eps") num(t.loss.sisdr_eps);
    else if (key == "sisdr_cap_db") num(t.loss.sisdr_cap_db);
    else if (key == "out_dir") t.out_dir = v;
    else if (key == "manifest") train_manifest = v;
    else unknown();
  } else if (section == "data") {
    auto& d = data;
    if (key == "clean_dir") d.clean_dir = v;
    else if (key == "noise_dir") d.noise_dir = v;
    else if (key == "out_dir") d.out_dir = v;
    else if (key == "rooms") num(d.n_rooms);
    else if (key == "rirs_per_room") num(d.rirs_per_room);
    else if (key == "seed") num(d.seed);
    else if (key == "snr_min") num(d.snr_min);
    else if (key == "snr_max") num(d.snr_max);
    else if (key == "max_clean_seconds") num(d.max_clean_seconds);
    else if (key == "val_fraction") num(d.val_fraction);
    else if (key == "test_fraction") num(d.test_fraction);
    else if (key == "self_test") d.self_test = parse_bool(where, v);
    else if (key == "self_test_utterances") num(d.self_test_utterances);
    else if (key == "self_test_seconds") num(d.self_test_seconds);
    else unknown();
  } else if (section == "eval") {
    auto& e = eval;
    if (key == "manifest") e.manifest = v;
    else if (key == "split") e.split = v;
    else if (key == "estimator") e.estimator = v;
    else if (key == "report") e.report = v;
    else if (key == "repeats") num(e.repeats);
    else if (key == "duration") num(e.duration);
    else unknown();
  } else {
    throw ConfigError("unknown config section '" + section + "'");
  }
}

void RunConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
  const std::string lhs = strip(assignment.substr(0, eq));
  const auto dot = lhs.find('.');
  const std::string value = strip(assignment.substr(eq + 1));
  if (dot == std::string::npos) set("", lhs, value);
  else set(lhs.substr(0, dot), lhs.substr(dot + 1), value);
}

std::string RunConfig::to_text() const {
  std::string s = fmt::format("threads = {}\n\n[model]\n", threads);
  for (const auto& [k, v] : model.items()) s += k + " = " + v + "\n";
  const auto& t = train;
  s += "\n[train]\n";
  s += fmt::format("lr = {}\nbatch_size = {}\nepochs = {}\nseed = {}\nplateau_patience = {}\n", fmt_double(t.lr),
                   t.batch_size, t.epochs, t.seed, t.plateau_patience);
  s += fmt::format("grad_clip_norm = {}\nmax_steps = {}\nalpha = {}\nbeta = {}\nsisdr_eps = {}\nsisdr_cap_db = {}\n",
                   fmt_double(t.grad_clip_norm), t.max_steps, fmt_double(t.loss.alpha), fmt_double(t.loss.beta),
                   fmt_double(t.loss.sisdr_eps), fmt_double(t.loss.sisdr_cap_db));
  s += fmt::format("out_dir = {}\nmanifest = {}\n", t.out_dir.string(), train_manifest.string());
  const auto& d = data;
  s += "\n[data]\n";
  s += fmt::format("clean_dir = {}\nnoise_dir = {}\nout_dir = {}\n", d.clean_dir.string(), d.noise_dir.string(),
                   d.out_dir.string());
  s += fmt::format("rooms = {}\nrirs_per_room = {}\nseed = {}\nsnr_min = {}\nsnr_max = {}\n", d.n_rooms,
                   d.rirs_per_room, d.seed, fmt_double(d.snr_min), fmt_double(d.snr_max));
  s += fmt::format("max_clean_seconds = {}\nval_fraction = {}\ntest_fraction = {}\n", fmt_double(d.max_clean_seconds),
                   fmt_double(d.val_fraction), fmt_double(d.test_fraction));
  s += fmt::format("self_test = {}\nself_test_utterances = {}\nself_test_seconds = {}\n", fmt_bool(d.self_test),
                   d.self_test_utterances, fmt_double(d.self_test_seconds));
  const auto& e = eval;
  s += "\n[eval]\n";
  s += fmt::format("manifest = {}\nsplit = {}\nestimator = {}\nreport = {}\nrepeats = {}\nduration = {}\n",
                   e.manifest.string(), e.split, e.estimator, e.report.string(), e.repeats, fmt_double(e.duration));
  return s;
}

RunConfig RunConfig::from_text(const std::string& text) {
  RunConfig c;
  std::string section;
  std::stringstream ss(text);
  std::size_t line_no = 0;
  for (std::string raw; std::getline(ss, raw);) {
    ++line_no;
    std::string line = strip(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(fmt::format("line {}: malformed section header", line_no));
      section = strip(line.substr(1, line.size() - 2));
      if (section != "model" && section != "train" && section != "data" && section != "eval")
        throw ConfigError(fmt::format("line {}: unknown config section '{}'", line_no, section));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("line {}: expected key = value", line_no));
    c.set(section, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

void RunConfig::validate() const {
  if (threads == 0) throw ConfigError("threads must be at least 1");
  model.validate();
  train.validate();
  if (eval.estimator != "model" && eval.estimator != "identity" && eval.estimator != "oracle")
    throw ConfigError("eval.estimator must be model, identity or oracle");
  if (eval.repeats == 0) throw ConfigError("eval.repeats must be positive");
  if (!(eval.duration > 0)) throw ConfigError("eval.duration must be positive");
}

}  // namespace lmfca::cli
