#pragma once

// CSV and file helpers. All floating-point output uses 17 significant digits
// (%.17g), enough to round-trip doubles, so repeated runs are byte-identical.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eulerarnold/diffeo.hpp"
#include "eulerarnold/field.hpp"
#include "eulerarnold/flows.hpp"
#include "eulerarnold/inertia.hpp"

namespace eulerarnold {

inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

}  // namespace detail

inline void write_field_csv(const std::filesystem::path& path, const PeriodicField& u) {
  auto out = detail::open_out(path);
  out << "x,value\n";
  for (int j = 0; j < u.size(); ++j) {
    out << format_g17(PeriodicField::node(u.size(), j)) << ',' << format_g17(u.value(j)) << '\n';
  }
}

inline void write_diffeo_csv(const std::filesystem::path& path, const CircleDiffeo& phi) {
  auto out = detail::open_out(path);
  out << "x,phi_of_x\n";
  const auto y = phi.forward_grid();
  for (int j = 0; j < phi.size(); ++j) {
    out << format_g17(PeriodicField::node(phi.size(), j)) << ',' << format_g17(y[j]) << '\n';
  }
}

template <class StateT>
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory<StateT>& traj) {
  auto out = detail::open_out(path);
  out << "t,energy,momentum_mean,l2_norm,spectral_tail\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const ConservationRecord& r = traj.records[i];
    out << format_g17(traj.times[i]) << ',' << format_g17(r.energy) << ','
        << format_g17(r.momentum_mean) << ',' << format_g17(r.l2_norm) << ','
        << format_g17(r.spectral_tail) << '\n';
  }
}

// Custom inertia symbols from CSV `k,a` rows (optional header). Every
// k = 0..n/2 must appear exactly once; positivity is enforced by the
// InertiaOperator constructor.
inline InertiaOperator load_symbol_csv(const std::filesystem::path& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open symbol file: " + path.string());
  std::vector<double> symbol(n / 2 + 1, 0.0);
  std::vector<bool> seen(n / 2 + 1, false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line.find_first_not_of("ka, \t\r") == std::string::npos) continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected `k,a` row");
    }
    int k = 0;
    double a = 0.0;
    try {
      k = std::stoi(line.substr(0, comma));
      a = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": cannot parse `k,a` row: " + line);
    }
    if (k < 0 || k > n / 2) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": k=" +
                               std::to_string(k) + " outside [0, " + std::to_string(n / 2) + "]");
    }
    if (seen[k]) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": duplicate entry for k=" + std::to_string(k));
    }
    seen[k] = true;
    symbol[k] = a;
  }
  for (int k = 0; k <= n / 2; ++k) {
    if (!seen[k]) {
      throw std::runtime_error(path.string() + ": missing symbol entry for k=" +
                               std::to_string(k));
    }
  }
  return InertiaOperator::custom(n, std::move(symbol));
}

}  // namespace eulerarnold
