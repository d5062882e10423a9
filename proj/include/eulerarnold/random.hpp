#pragma once

// Deterministic random band-limited fields for the verification suites.
//
// Sampler contract (fixed; changing it changes every seeded artifact):
//   - modes k = 0 .. n/4,
//   - cosine and sine amplitudes drawn uniform in [-1, 1) and scaled by
//     1/(1+k^2); the k=0 sine draw is consumed but zeroed,
//   - generator mt19937_64(seed), mapped to doubles via the top 53 bits
//     ((x >> 11) * 2^-53), so streams are bit-identical across platforms.

#include <cstdint>
#include <random>
#include <vector>

#include "eulerarnold/field.hpp"

namespace eulerarnold {

class RandomFieldSampler {
 public:
  explicit RandomFieldSampler(std::uint64_t seed) : rng_(seed) {}

  // uniform in [-1, 1)
  double uniform_symmetric() {
    const double unit = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
  }

  PeriodicField sample(int n) {
    std::vector<Mode> modes;
    modes.reserve(n / 4 + 1);
    for (int k = 0; k <= n / 4; ++k) {
      const double scale = 1.0 / (1.0 + static_cast<double>(k) * k);
      const double c = scale * uniform_symmetric();
      const double s = scale * uniform_symmetric();
      modes.push_back({k, c, k == 0 ? 0.0 : s});
    }
    return PeriodicField::from_modes(n, modes);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace eulerarnold
