#pragma once

// Band-limited real trigonometric polynomials on S^1 = [0, 2*pi).
//
// A PeriodicField holds both the n collocation values u(x_j), x_j = 2*pi*j/n,
// and the half-complex Fourier coefficients c[k], k = 0..n/2 (see fft.hpp for
// the convention). Values are authoritative: every constructor rebuilds one
// representation from the other, so the DFT consistency invariant holds by
// construction. Fields are immutable values; all operations are pure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eulerarnold/fft.hpp"

namespace eulerarnold {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// One (cosine, sine) amplitude pair at wavenumber k.
struct Mode {
  int k = 0;
  double cos_amp = 0.0;
  double sin_amp = 0.0;
};

namespace detail {

inline void require_even_positive(int n) {
  if (n <= 0 || n % 2 != 0) {
    throw std::invalid_argument("grid size must be even and positive, got " + std::to_string(n));
  }
}

inline void require_all_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw std::domain_error("field has non-finite values");
  }
}

}  // namespace detail

class PeriodicField {
 public:
  static PeriodicField zero(int n) {
    detail::require_even_positive(n);
    return PeriodicField(n, std::vector<double>(n, 0.0),
                         std::vector<std::complex<double>>(n / 2 + 1, 0.0));
  }

  static PeriodicField constant(int n, double c) {
    detail::require_even_positive(n);
    if (!std::isfinite(c)) throw std::domain_error("field has non-finite values");
    std::vector<std::complex<double>> coeffs(n / 2 + 1, 0.0);
    coeffs[0] = c;
    return PeriodicField(n, std::vector<double>(n, c), std::move(coeffs));
  }

  static PeriodicField from_values(std::vector<double> values) {
    const int n = static_cast<int>(values.size());
    detail::require_even_positive(n);
    detail::require_all_finite(values);
    auto coeffs = detail::rfft(values);
    return PeriodicField(n, std::move(values), std::move(coeffs));
  }

  // Coefficients in the half-complex convention; imaginary parts of c[0] and
  // c[n/2] are dropped.
  static PeriodicField from_coeffs(int n, std::vector<std::complex<double>> coeffs) {
    detail::require_even_positive(n);
    if (static_cast<int>(coeffs.size()) != n / 2 + 1) {
      throw std::invalid_argument("from_coeffs: expected " + std::to_string(n / 2 + 1) +
                                  " coefficients, got " + std::to_string(coeffs.size()));
    }
    coeffs.front().imag(0.0);
    coeffs.back().imag(0.0);
    auto values = detail::irfft(coeffs, n);
    detail::require_all_finite(values);
    return PeriodicField(n, std::move(values), std::move(coeffs));
  }

  // sum_k cos_amp_k cos(kx) + sin_amp_k sin(kx), exact at the collocation
  // points (built by direct trig summation, not through the FFT).
  static PeriodicField from_modes(int n, std::span<const Mode> modes) {
    detail::require_even_positive(n);
    for (const Mode& m : modes) {
      if (m.k < 0 || m.k > n / 2) {
        throw std::invalid_argument("mode k=" + std::to_string(m.k) +
                                    " outside band [0, " + std::to_string(n / 2) + "]");
      }
    }
    std::vector<double> values(n, 0.0);
    for (int j = 0; j < n; ++j) {
      const double x = node(n, j);
      double s = 0.0;
      for (const Mode& m : modes) {
        s += m.cos_amp * std::cos(m.k * x) + m.sin_amp * std::sin(m.k * x);
      }
      values[j] = s;
    }
    return from_values(std::move(values));
  }

  static double node(int n, int j) { return two_pi * j / n; }

  static std::vector<double> grid(int n) {
    detail::require_even_positive(n);
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = node(n, j);
    return x;
  }

  int size() const { return n_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }
  double value(int j) const { return values_[j]; }
  std::complex<double> coeff(int k) const { return coeffs_[k]; }

  friend PeriodicField operator+(const PeriodicField& a, const PeriodicField& b) {
    require_same_size(a, b, "operator+");
    std::vector<double> v(a.n_);
    for (int j = 0; j < a.n_; ++j) v[j] = a.values_[j] + b.values_[j];
    return from_values(std::move(v));
  }

  friend PeriodicField operator-(const PeriodicField& a, const PeriodicField& b) {
    require_same_size(a, b, "operator-");
    std::vector<double> v(a.n_);
    for (int j = 0; j < a.n_; ++j) v[j] = a.values_[j] - b.values_[j];
    return from_values(std::move(v));
  }

  friend PeriodicField operator*(double s, const PeriodicField& a) {
    std::vector<double> v(a.n_);
    for (int j = 0; j < a.n_; ++j) v[j] = s * a.values_[j];
    return from_values(std::move(v));
  }

  friend PeriodicField operator*(const PeriodicField& a, double s) { return s * a; }

  PeriodicField operator-() const { return -1.0 * (*this); }

 private:
  PeriodicField(int n, std::vector<double> values, std::vector<std::complex<double>> coeffs)
      : n_(n), values_(std::move(values)), coeffs_(std::move(coeffs)) {}

  static void require_same_size(const PeriodicField& a, const PeriodicField& b, const char* op) {
    if (a.n_ != b.n_) {
      throw std::invalid_argument(std::string(op) + ": grid mismatch, " +
                                  std::to_string(a.n_) + " vs " + std::to_string(b.n_));
    }
  }

  int n_;
  std::vector<double> values_;
  std::vector<std::complex<double>> coeffs_;
};

inline void require_same_grid(const PeriodicField& a, const PeriodicField& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": grid mismatch, " +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

// Spectral derivative: c[k] -> ik c[k], Nyquist mode mapped to zero.
inline PeriodicField derivative(const PeriodicField& u) {
  const int n = u.size();
  std::vector<std::complex<double>> c(n / 2 + 1);
  for (int k = 0; k < n / 2; ++k) {
    c[k] = std::complex<double>(0.0, static_cast<double>(k)) * u.coeff(k);
  }
  c[n / 2] = 0.0;
  return PeriodicField::from_coeffs(n, std::move(c));
}

// Dealiased product via the 3/2 rule: both factors are evaluated on a
// 3n/2-point grid, multiplied there, and the result truncated back to the
// band |k| <= n/2. Retained modes below Nyquist carry no aliasing error for
// band-limited inputs; the Nyquist mode is projected to zero.
inline PeriodicField pointwise_product(const PeriodicField& u, const PeriodicField& v) {
  require_same_grid(u, v, "pointwise_product");
  const int n = u.size();
  const int m = 3 * n / 2;
  const int half_n = n / 2;

  auto pad = [&](const PeriodicField& f) {
    std::vector<std::complex<double>> c(m / 2 + 1, 0.0);
    for (int k = 0; k < half_n; ++k) c[k] = f.coeff(k);
    // On the fine grid the Nyquist cosine splits into e^{±iNx}/2.
    c[half_n] = 0.5 * f.coeff(half_n);
    return detail::irfft(c, m);
  };

  std::vector<double> a = pad(u);
  const std::vector<double> b = pad(v);
  for (int j = 0; j < m; ++j) a[j] *= b[j];

  auto cf = detail::rfft(a);
  std::vector<std::complex<double>> c(half_n + 1);
  for (int k = 0; k < half_n; ++k) c[k] = cf[k];
  c[half_n] = 0.0;
  return PeriodicField::from_coeffs(n, std::move(c));
}

// Trapezoid-rule L^2 inner product, spectrally exact below Nyquist.
inline double inner_l2(const PeriodicField& u, const PeriodicField& v) {
  require_same_grid(u, v, "inner_l2");
  const int n = u.size();
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += u.value(j) * v.value(j);
  return two_pi * s / n;
}

// Direct Fourier-series summation at arbitrary points (wrapped mod 2*pi).
// O(n) per point; cos/sin are advanced by the angle-addition recurrence.
inline double evaluate_at(const PeriodicField& u, double x) {
  const int n = u.size();
  const int half_n = n / 2;
  const double c1 = std::cos(x);
  const double s1 = std::sin(x);
  double ck = c1;
  double sk = s1;
  double sum = u.coeff(0).real();
  for (int k = 1; k < half_n; ++k) {
    sum += 2.0 * (u.coeff(k).real() * ck - u.coeff(k).imag() * sk);
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
  }
  sum += u.coeff(half_n).real() * ck;  // Nyquist cosine
  return sum;
}

inline std::vector<double> evaluate_at(const PeriodicField& u, std::span<const double> points) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = evaluate_at(u, points[i]);
  return out;
}

// (1/2pi) * integral of u.
inline double mean(const PeriodicField& u) { return u.coeff(0).real(); }

inline double sup_norm(const PeriodicField& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

inline double l2_norm(const PeriodicField& u) { return std::sqrt(std::max(0.0, inner_l2(u, u))); }

// Quadrature-matched Parseval sum: c0^2 + 2 sum_{0<k<n/2} |c_k|^2 + c_{n/2}^2,
// times 2*pi. Equals inner_l2(u,u) for any representable field.
inline double parseval_energy(const PeriodicField& u) {
  const int half_n = u.size() / 2;
  double s = std::norm(u.coeff(0));
  for (int k = 1; k < half_n; ++k) s += 2.0 * std::norm(u.coeff(k));
  s += std::norm(u.coeff(half_n));
  return two_pi * s;
}

// Fraction of quadratic spectral energy carried by the top third of the band.
// Decay diagnostic for composition-induced spectral widening; 0 for the zero
// field.
inline double spectral_tail_ratio(const PeriodicField& u) {
  const int half_n = u.size() / 2;
  const int cut = half_n - half_n / 3;
  double total = std::norm(u.coeff(0));
  double tail = 0.0;
  for (int k = 1; k <= half_n; ++k) {
    const double w = (k < half_n) ? 2.0 : 1.0;
    const double e = w * std::norm(u.coeff(k));
    total += e;
    if (k >= cut) tail += e;
  }
  if (total < 1e-300) return 0.0;
  return tail / total;
}

}  // namespace eulerarnold
