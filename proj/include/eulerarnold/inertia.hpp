#pragma once

// Fourier-multiplier inertia operators A and the inner product they induce.
//
// A is stored as its symbol a(k), k = 0..n/2, acting mode-wise as
// (Au)^(k) = a(k) u^(k). Strict positivity of the symbol is enforced: it makes
// A an isomorphism and <u,v>_A = (u, Av) a genuine inner product. Degenerate
// symbols (Hunter-Saxton A = -D^2, Wunsch A = HD) are rejected; those live on
// homogeneous spaces outside this engine's scope.

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eulerarnold/field.hpp"

namespace eulerarnold {

class InertiaOperator {
 public:
  // a(k) = 1 + k^2, the Camassa-Holm operator A = I - D^2.
  static InertiaOperator helmholtz(int n) {
    detail::require_even_positive(n);
    std::vector<double> a(n / 2 + 1);
    for (int k = 0; k <= n / 2; ++k) a[k] = 1.0 + static_cast<double>(k) * k;
    return InertiaOperator(n, std::move(a), "helmholtz");
  }

  // a(k) = (1 + k^2)^s, s > 0.
  static InertiaOperator sobolev(int n, double s) {
    detail::require_even_positive(n);
    if (!(s > 0.0)) {
      throw std::invalid_argument("sobolev order must be > 0, got " + std::to_string(s));
    }
    std::vector<double> a(n / 2 + 1);
    for (int k = 0; k <= n / 2; ++k) {
      a[k] = std::pow(1.0 + static_cast<double>(k) * k, s);
    }
    return InertiaOperator(n, std::move(a), "sobolev");
  }

  static InertiaOperator identity(int n) {
    detail::require_even_positive(n);
    return InertiaOperator(n, std::vector<double>(n / 2 + 1, 1.0), "custom");
  }

  static InertiaOperator custom(int n, std::vector<double> symbol) {
    detail::require_even_positive(n);
    if (static_cast<int>(symbol.size()) != n / 2 + 1) {
      throw std::invalid_argument("custom symbol needs " + std::to_string(n / 2 + 1) +
                                  " entries for n=" + std::to_string(n) + ", got " +
                                  std::to_string(symbol.size()));
    }
    validate_symbol(symbol);
    return InertiaOperator(n, std::move(symbol), "custom");
  }

  // Bypasses positivity validation. Exists only for negative controls
  // (deliberately corrupted symbols in the identity suite).
  static InertiaOperator unchecked(int n, std::vector<double> symbol, std::string kind) {
    detail::require_even_positive(n);
    if (static_cast<int>(symbol.size()) != n / 2 + 1) {
      throw std::invalid_argument("symbol length does not match grid");
    }
    return InertiaOperator(n, std::move(symbol), std::move(kind));
  }

  int size() const { return n_; }
  const std::vector<double>& symbol() const { return symbol_; }
  const std::string& kind() const { return kind_; }
  double min_symbol() const {
    double m = symbol_[0];
    for (double a : symbol_) m = std::min(m, a);
    return m;
  }

 private:
  InertiaOperator(int n, std::vector<double> symbol, std::string kind)
      : n_(n), symbol_(std::move(symbol)), kind_(std::move(kind)) {}

  static void validate_symbol(std::span<const double> a) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (!(a[k] > 0.0) || !std::isfinite(a[k])) {
        throw std::invalid_argument(
            "inertia symbol must be strictly positive, a(" + std::to_string(k) + ")=" +
            std::to_string(a[k]) +
            (k == 0 ? " (degenerate a(0)=0 operators such as Hunter-Saxton A=-D^2 belong to "
                      "homogeneous-space models and are not supported)"
                    : ""));
      }
    }
  }

  int n_;
  std::vector<double> symbol_;
  std::string kind_;
};

inline void require_same_grid(const InertiaOperator& A, const PeriodicField& u, const char* what) {
  if (A.size() != u.size()) {
    throw std::invalid_argument(std::string(what) + ": grid mismatch, operator n=" +
                                std::to_string(A.size()) + " vs field n=" +
                                std::to_string(u.size()));
  }
}

// m^(k) = a(k) u^(k); for helmholtz this is u - u_xx exactly on band-limited
// input.
inline PeriodicField apply_inertia(const InertiaOperator& A, const PeriodicField& u) {
  require_same_grid(A, u, "apply_inertia");
  const int n = u.size();
  std::vector<std::complex<double>> c(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k) c[k] = A.symbol()[k] * u.coeff(k);
  return PeriodicField::from_coeffs(n, std::move(c));
}

inline PeriodicField apply_inverse_inertia(const InertiaOperator& A, const PeriodicField& m) {
  require_same_grid(A, m, "apply_inverse_inertia");
  const int n = m.size();
  std::vector<std::complex<double>> c(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k) c[k] = m.coeff(k) / A.symbol()[k];
  return PeriodicField::from_coeffs(n, std::move(c));
}

// <u,v>_A = (u, Av) = (Au, v); symmetric, positive definite.
inline double inner_a(const InertiaOperator& A, const PeriodicField& u, const PeriodicField& v) {
  require_same_grid(A, u, "inner_a");
  return inner_l2(u, apply_inertia(A, v));
}

inline double a_norm(const InertiaOperator& A, const PeriodicField& u) {
  return std::sqrt(std::max(0.0, inner_a(A, u, u)));
}

}  // namespace eulerarnold
