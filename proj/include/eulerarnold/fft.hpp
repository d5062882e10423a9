#pragma once

// Real 1-d FFTs on the uniform periodic grid x_j = 2*pi*j/n, wrapping FFTW.
//
// Coefficient convention (half-complex, normalized): c[k], k = 0..n/2, with
//
//   u(x_j) = c[0] + sum_{0<k<n/2} 2 Re( c[k] e^{i k x_j} ) + c[n/2] cos(n/2 x_j)
//
// so c[k] is the coefficient of e^{ikx} for 0 <= k < n/2, and c[n/2] is the
// (real) amplitude of the Nyquist cosine. c[0] and c[n/2] have their imaginary
// parts forced to zero.
//
// Plans use FFTW_ESTIMATE (deterministic planning) and are cached per size.
// Execution copies through the plan's own aligned buffers under a per-size
// lock, so fields may be transformed concurrently from multiple threads.

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace eulerarnold::detail {

class FftPlans {
 public:
  static FftPlans& instance() {
    static FftPlans plans;
    return plans;
  }

  std::vector<std::complex<double>> forward(std::span<const double> values) {
    const int n = static_cast<int>(values.size());
    Entry& e = entry(n);
    std::lock_guard<std::mutex> lock(e.mutex);
    for (int j = 0; j < n; ++j) e.real[j] = values[j];
    fftw_execute(e.r2c);
    std::vector<std::complex<double>> coeffs(n / 2 + 1);
    const double inv_n = 1.0 / n;
    for (int k = 0; k <= n / 2; ++k) {
      coeffs[k] = std::complex<double>(e.cmpl[k][0] * inv_n, e.cmpl[k][1] * inv_n);
    }
    coeffs.front().imag(0.0);
    coeffs.back().imag(0.0);
    return coeffs;
  }

  std::vector<double> backward(std::span<const std::complex<double>> coeffs, int n) {
    if (static_cast<int>(coeffs.size()) != n / 2 + 1) {
      throw std::invalid_argument("irfft: coefficient array has wrong length");
    }
    Entry& e = entry(n);
    std::lock_guard<std::mutex> lock(e.mutex);
    for (int k = 0; k <= n / 2; ++k) {
      e.cmpl[k][0] = coeffs[k].real();
      e.cmpl[k][1] = coeffs[k].imag();
    }
    fftw_execute(e.c2r);
    return std::vector<double>(e.real, e.real + n);
  }

  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

 private:
  struct Entry {
    double* real = nullptr;
    fftw_complex* cmpl = nullptr;
    fftw_plan r2c{};
    fftw_plan c2r{};
    std::mutex mutex;

    explicit Entry(int n) {
      real = fftw_alloc_real(n);
      cmpl = fftw_alloc_complex(n / 2 + 1);
      r2c = fftw_plan_dft_r2c_1d(n, real, cmpl, FFTW_ESTIMATE);
      c2r = fftw_plan_dft_c2r_1d(n, cmpl, real, FFTW_ESTIMATE);
    }
    ~Entry() {
      fftw_destroy_plan(c2r);
      fftw_destroy_plan(r2c);
      fftw_free(cmpl);
      fftw_free(real);
    }
    Entry(const Entry&) = delete;
    Entry& operator=(const Entry&) = delete;
  };

  FftPlans() = default;

  Entry& entry(int n) {
    if (n <= 0 || n % 2 != 0) {
      throw std::invalid_argument("fft: grid size must be even and positive, got " +
                                  std::to_string(n));
    }
    std::lock_guard<std::mutex> lock(map_mutex_);
    auto it = entries_.find(n);
    if (it == entries_.end()) {
      it = entries_.emplace(n, std::make_unique<Entry>(n)).first;
    }
    return *it->second;
  }

  std::mutex map_mutex_;
  std::map<int, std::unique_ptr<Entry>> entries_;
};

// values -> normalized half-complex coefficients (length n/2+1)
inline std::vector<std::complex<double>> rfft(std::span<const double> values) {
  return FftPlans::instance().forward(values);
}

// normalized half-complex coefficients -> values (length n)
inline std::vector<double> irfft(std::span<const std::complex<double>> coeffs, int n) {
  return FftPlans::instance().backward(coeffs, n);
}

}  // namespace eulerarnold::detail
