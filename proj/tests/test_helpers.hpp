#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "eulerarnold/field.hpp"

namespace ea_test {

using eulerarnold::Mode;
using eulerarnold::PeriodicField;

inline PeriodicField cosine(int n, int k, double amp = 1.0) {
  const Mode m{k, amp, 0.0};
  return PeriodicField::from_modes(n, {&m, 1});
}

inline PeriodicField sine(int n, int k, double amp = 1.0) {
  const Mode m{k, 0.0, amp};
  return PeriodicField::from_modes(n, {&m, 1});
}

inline double max_diff(const PeriodicField& a, const PeriodicField& b) {
  return eulerarnold::sup_norm(a - b);
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale < 1e-300 ? std::abs(a - b) : std::abs(a - b) / scale;
}

// Random band-limited field with support |k| <= k_max and 1/(1+k^2) amplitude
// decay; independent of the library's sampler.
inline PeriodicField random_field(int n, int k_max, std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Mode> modes;
  for (int k = 0; k <= k_max; ++k) {
    const double scale = 1.0 / (1.0 + static_cast<double>(k) * k);
    modes.push_back({k, scale * unit(rng), k == 0 ? 0.0 : scale * unit(rng)});
  }
  return PeriodicField::from_modes(n, modes);
}

}  // namespace ea_test
