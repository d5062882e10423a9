#pragma once

// Flat key-value scenario configuration.
//
// Format: one `key = value` per line, dotted keys, `#` comments. Chosen over
// nested formats for diff-friendliness; `--set key=value` overrides come from
// the CLI. Schema:
//
//   grid.n             power-of-two grid size                      (required)
//   operator.kind      helmholtz | sobolev | custom                (required)
//   operator.s         Sobolev order, > 0          (required for sobolev)
//   operator.symbol_csv path to `k,a` CSV           (required for custom)
//   ic.mean            mean value of u0                      (default 0)
//   ic.modes           comma list k:cos_amp:sin_amp          (default empty)
//   time.dt            step size, > 0                              (required)
//   time.t_final       final time, > 0, multiple of dt             (required)
//   time.record_every  record every k-th step                (default 1)
//   mode               eulerian | lagrangian | both                (required)
//   output.dir         output directory                      (default "out")
//   output.snapshots   true | false, per-record field CSVs   (default false)
//   seed               unsigned integer                      (default 0)

#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eulerarnold/field.hpp"
#include "eulerarnold/inertia.hpp"
#include "eulerarnold/io.hpp"

namespace eulerarnold {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

using KeyValueMap = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline KeyValueMap parse_flat_config(std::istream& in) {
  KeyValueMap kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected `key = value`");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    }
    if (kv.count(key)) {
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key `" + key +
                        "`");
    }
    kv[key] = value;
  }
  return kv;
}

inline KeyValueMap load_flat_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  return parse_flat_config(in);
}

// `key=value` strings from --set; later entries win over the file.
inline void apply_overrides(KeyValueMap& kv, const std::vector<std::string>& overrides) {
  for (const std::string& item : overrides) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set expects key=value, got `" + item + "`");
    }
    kv[detail::trim(item.substr(0, eq))] = detail::trim(item.substr(eq + 1));
  }
}

enum class RunMode { eulerian, lagrangian, both };

struct OperatorSpec {
  std::string kind;  // helmholtz | sobolev | custom
  double sobolev_order = 0.0;
  std::string symbol_csv;

  InertiaOperator build(int n) const {
    if (kind == "helmholtz") return InertiaOperator::helmholtz(n);
    if (kind == "sobolev") return InertiaOperator::sobolev(n, sobolev_order);
    return load_symbol_csv(symbol_csv, n);
  }
};

struct ScenarioConfig {
  int n = 128;
  OperatorSpec op;
  double ic_mean = 0.0;
  std::vector<Mode> ic_modes;
  double dt = 0.0;
  double t_final = 0.0;
  long long record_every = 1;
  RunMode mode = RunMode::eulerian;
  std::string output_dir = "out";
  bool snapshots = false;
  std::uint64_t seed = 0;

  PeriodicField initial_condition() const {
    std::vector<Mode> modes = ic_modes;
    modes.push_back({0, ic_mean, 0.0});
    return PeriodicField::from_modes(n, modes);
  }
};

namespace detail {

inline ConfigError bad_key(const std::string& key, const std::string& value,
                           const std::string& why) {
  return ConfigError("config key `" + key + "`: " + why + " (got `" + value + "`)");
}

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return x;
  } catch (const std::exception&) {
    throw bad_key(key, value, "expected a number");
  }
}

inline long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return x;
  } catch (const std::exception&) {
    throw bad_key(key, value, "expected an integer");
  }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw bad_key(key, value, "expected true or false");
}

inline std::vector<Mode> parse_modes(const std::string& key, const std::string& value, int n) {
  std::vector<Mode> modes;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const std::size_t c1 = item.find(':');
    const std::size_t c2 = (c1 == std::string::npos) ? std::string::npos : item.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw bad_key(key, value, "expected k:cos_amp:sin_amp entries");
    }
    Mode m;
    m.k = static_cast<int>(parse_int(key, trim(item.substr(0, c1))));
    m.cos_amp = parse_double(key, trim(item.substr(c1 + 1, c2 - c1 - 1)));
    m.sin_amp = parse_double(key, trim(item.substr(c2 + 1)));
    if (m.k < 0 || m.k > n / 2) {
      throw bad_key(key, value, "mode k=" + std::to_string(m.k) + " outside band [0, " +
                                    std::to_string(n / 2) + "]");
    }
    modes.push_back(m);
  }
  return modes;
}

}  // namespace detail

inline ScenarioConfig validate_scenario(const KeyValueMap& kv) {
  static const std::set<std::string> known = {
      "grid.n",     "operator.kind",     "operator.s", "operator.symbol_csv",
      "ic.mean",    "ic.modes",          "time.dt",    "time.t_final",
      "time.record_every", "mode",       "output.dir", "output.snapshots",
      "seed"};
  for (const auto& [key, value] : kv) {
    if (!known.count(key)) throw ConfigError("unknown config key `" + key + "`");
  }
  auto require = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("missing required config key `" + key + "`");
    return it->second;
  };
  auto optional = [&](const std::string& key, const std::string& fallback) -> std::string {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };

  ScenarioConfig cfg;
  cfg.n = static_cast<int>(detail::parse_int("grid.n", require("grid.n")));
  if (cfg.n < 4 || (cfg.n & (cfg.n - 1)) != 0) {
    throw detail::bad_key("grid.n", require("grid.n"), "must be a power of two >= 4");
  }

  cfg.op.kind = require("operator.kind");
  if (cfg.op.kind == "helmholtz") {
    // no parameters
  } else if (cfg.op.kind == "sobolev") {
    cfg.op.sobolev_order = detail::parse_double("operator.s", require("operator.s"));
    if (!(cfg.op.sobolev_order > 0.0)) {
      throw detail::bad_key("operator.s", require("operator.s"), "must be > 0");
    }
  } else if (cfg.op.kind == "custom") {
    cfg.op.symbol_csv = require("operator.symbol_csv");
  } else {
    throw detail::bad_key("operator.kind", cfg.op.kind,
                          "must be helmholtz, sobolev, or custom");
  }

  cfg.ic_mean = detail::parse_double("ic.mean", optional("ic.mean", "0"));
  cfg.ic_modes = detail::parse_modes("ic.modes", optional("ic.modes", ""), cfg.n);

  cfg.dt = detail::parse_double("time.dt", require("time.dt"));
  if (!(cfg.dt > 0.0)) throw detail::bad_key("time.dt", require("time.dt"), "must be > 0");
  cfg.t_final = detail::parse_double("time.t_final", require("time.t_final"));
  if (!(cfg.t_final > 0.0)) {
    throw detail::bad_key("time.t_final", require("time.t_final"), "must be > 0");
  }
  const double steps = cfg.t_final / cfg.dt;
  if (std::abs(steps - std::llround(steps)) > 1e-9 * std::max(1.0, steps)) {
    throw detail::bad_key("time.t_final", require("time.t_final"),
                          "must be an integer multiple of time.dt");
  }
  cfg.record_every = detail::parse_int("time.record_every", optional("time.record_every", "1"));
  if (cfg.record_every < 1) {
    throw detail::bad_key("time.record_every", optional("time.record_every", "1"),
                          "must be >= 1");
  }

  const std::string mode = require("mode");
  if (mode == "eulerian") {
    cfg.mode = RunMode::eulerian;
  } else if (mode == "lagrangian") {
    cfg.mode = RunMode::lagrangian;
  } else if (mode == "both") {
    cfg.mode = RunMode::both;
  } else {
    throw detail::bad_key("mode", mode, "must be eulerian, lagrangian, or both");
  }

  cfg.output_dir = optional("output.dir", "out");
  cfg.snapshots = detail::parse_bool("output.snapshots", optional("output.snapshots", "false"));
  const long long seed = detail::parse_int("seed", optional("seed", "0"));
  if (seed < 0) throw detail::bad_key("seed", optional("seed", "0"), "must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);
  return cfg;
}

}  // namespace eulerarnold
