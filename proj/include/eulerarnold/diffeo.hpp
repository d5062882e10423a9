#pragma once

// Orientation-preserving circle diffeomorphisms phi(x) = x + f(x) with f
// 2*pi-periodic, stored as the displacement field f. Keeping the identity
// part symbolic preserves the circle topology exactly and makes rigid
// rotations exact (f constant).
//
// Composition and inversion resample through truncated Fourier evaluation;
// spectral_tail_ratio is the caller's guard against silent aliasing for
// strongly deformed maps.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eulerarnold/field.hpp"

namespace eulerarnold {

// 1 + f'(x_j) dipped below the orientation margin.
struct MonotonicityError : std::domain_error {
  explicit MonotonicityError(double min_jac)
      : std::domain_error("diffeomorphism not orientation preserving: min(1+f') = " +
                          std::to_string(min_jac)),
        min_jacobian(min_jac) {}
  double min_jacobian;
};

struct NewtonConvergenceError : std::domain_error {
  NewtonConvergenceError(double target, double residual)
      : std::domain_error("diffeo inversion: Newton failed to converge at y=" +
                          std::to_string(target) + ", residual " + std::to_string(residual) +
                          " (near-degenerate map)") {}
};

class CircleDiffeo {
 public:
  // Orientation margin on the grid: 1 + f'(x_j) must stay >= this.
  static constexpr double min_jacobian_margin = 1e-8;

  static CircleDiffeo identity(int n) { return CircleDiffeo(PeriodicField::zero(n)); }

  static CircleDiffeo rotation(int n, double angle) {
    return CircleDiffeo(PeriodicField::constant(n, angle));
  }

  static CircleDiffeo from_displacement(PeriodicField f) { return CircleDiffeo(std::move(f)); }

  int size() const { return displacement_.size(); }
  const PeriodicField& displacement() const { return displacement_; }
  const PeriodicField& displacement_derivative() const { return derivative_; }
  double min_jacobian() const { return min_jacobian_; }

  // phi(x) for arbitrary x.
  double operator()(double x) const { return x + evaluate_at(displacement_, x); }

  // phi at the collocation points.
  std::vector<double> forward_grid() const {
    const int n = size();
    std::vector<double> y(n);
    for (int j = 0; j < n; ++j) y[j] = PeriodicField::node(n, j) + displacement_.value(j);
    return y;
  }

 private:
  explicit CircleDiffeo(PeriodicField f)
      : displacement_(std::move(f)), derivative_(derivative(displacement_)) {
    min_jacobian_ = 1.0;
    for (double d : derivative_.values()) min_jacobian_ = std::min(min_jacobian_, 1.0 + d);
    if (!(min_jacobian_ >= min_jacobian_margin)) {
      throw MonotonicityError(min_jacobian_);
    }
  }

  PeriodicField displacement_;
  PeriodicField derivative_;
  double min_jacobian_ = 1.0;
};

inline void require_same_grid(const PeriodicField& v, const CircleDiffeo& phi, const char* what) {
  if (v.size() != phi.size()) {
    throw std::invalid_argument(std::string(what) + ": grid mismatch, field n=" +
                                std::to_string(v.size()) + " vs diffeo n=" +
                                std::to_string(phi.size()));
  }
}

// Right translation R_phi v = v o phi, resampled on the collocation grid.
inline PeriodicField compose_field_with_diffeo(const PeriodicField& v, const CircleDiffeo& phi) {
  require_same_grid(v, phi, "compose_field_with_diffeo");
  const int n = v.size();
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) {
    w[j] = evaluate_at(v, PeriodicField::node(n, j) + phi.displacement().value(j));
  }
  return PeriodicField::from_values(std::move(w));
}

// Group multiplication (phi o psi)(x) = x + [f_psi(x) + f_phi(psi(x))].
inline CircleDiffeo compose_diffeos(const CircleDiffeo& phi, const CircleDiffeo& psi) {
  if (phi.size() != psi.size()) {
    throw std::invalid_argument("compose_diffeos: grid mismatch, " + std::to_string(phi.size()) +
                                " vs " + std::to_string(psi.size()));
  }
  const int n = phi.size();
  std::vector<double> h(n);
  for (int j = 0; j < n; ++j) {
    const double psi_x = PeriodicField::node(n, j) + psi.displacement().value(j);
    h[j] = psi.displacement().value(j) + evaluate_at(phi.displacement(), psi_x);
  }
  return CircleDiffeo::from_displacement(PeriodicField::from_values(std::move(h)));
}

namespace detail {

// Solve x + f(x) = y for the monotone map phi = id + f. Newton from
// x0 = y - f(y), kept inside a sign-verified bracket with bisection fallback.
// The grid extrema of f only bound the root up to the between-node overshoot,
// so the initial bracket is expanded until the residual changes sign.
inline double invert_at(const PeriodicField& f, const PeriodicField& fp, double f_min,
                        double f_max, double y) {
  constexpr double tol = 1e-12;
  constexpr int max_iter = 50;
  auto residual_at = [&](double x) { return x + evaluate_at(f, x) - y; };

  const double pad = 1e-6 + 0.01 * (f_max - f_min);
  double lo = y - f_max - pad;
  double hi = y - f_min + pad;
  for (int guard = 0; residual_at(lo) > 0.0 && guard < 60; ++guard) lo -= (hi - lo);
  for (int guard = 0; residual_at(hi) < 0.0 && guard < 60; ++guard) hi += (hi - lo);

  double x = std::clamp(y - evaluate_at(f, y), lo, hi);
  double residual = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    residual = residual_at(x);
    if (std::abs(residual) <= tol) return x;
    if (residual > 0.0) {
      hi = std::min(hi, x);
    } else {
      lo = std::max(lo, x);
    }
    const double slope = 1.0 + evaluate_at(fp, x);
    double next = (slope > 0.0) ? x - residual / slope : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  throw NewtonConvergenceError(y, residual);
}

}  // namespace detail

// phi^{-1}, sampled at the collocation points and re-expanded spectrally.
// phi o phi^{-1} reproduces the grid to the Newton tolerance by construction.
inline CircleDiffeo invert_diffeo(const CircleDiffeo& phi) {
  const int n = phi.size();
  const PeriodicField& f = phi.displacement();
  double f_min = f.value(0);
  double f_max = f.value(0);
  for (double v : f.values()) {
    f_min = std::min(f_min, v);
    f_max = std::max(f_max, v);
  }
  std::vector<double> g(n);
  for (int j = 0; j < n; ++j) {
    const double y = PeriodicField::node(n, j);
    g[j] = detail::invert_at(f, phi.displacement_derivative(), f_min, f_max, y) - y;
  }
  return CircleDiffeo::from_displacement(PeriodicField::from_values(std::move(g)));
}

// Group adjoint action Ad_phi u = (phi_x u) o phi^{-1} = ((1+f') u) o phi^{-1}.
inline PeriodicField adjoint_action(const CircleDiffeo& phi, const PeriodicField& u) {
  require_same_grid(u, phi, "adjoint_action");
  const PeriodicField stretched = u + pointwise_product(phi.displacement_derivative(), u);
  return compose_field_with_diffeo(stretched, invert_diffeo(phi));
}

}  // namespace eulerarnold
