#pragma once

// Randomized verification of the algebraic identities the engine is built on:
//
//   adjointness   <B(u,v), w>_A = <u, ad_v w>_A
//   spray         S(u) = u u_x - B(u,u)
//   metricity     <grad_u v, w>_A + <v, grad_u w>_A = 0
//   torsion       grad_u v - grad_v u + ad(u,v) = 0
//   geodesic form grad_u u = B(u,u)
//   Ad derivative (Ad_{phi_s} v - Ad_{phi_-s} v) / 2s -> ad_u v,  phi_s = flow of u
//
// Residuals are reported in relative form: trilinear identities scale by the
// product of the three A-norms, the quadratic ones by max(1, |u|_inf^2), the
// bilinear torsion by max(1, |u|_inf |v|_inf). The suite reports and never
// throws on a failed threshold.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "eulerarnold/algebra.hpp"
#include "eulerarnold/diffeo.hpp"
#include "eulerarnold/field.hpp"
#include "eulerarnold/flows.hpp"
#include "eulerarnold/inertia.hpp"
#include "eulerarnold/random.hpp"

namespace eulerarnold {

struct IdentityCheck {
  std::string name;
  double worst = 0.0;   // max residual, or min observed order for ">=" checks
  double bound = 0.0;
  std::string relation;  // "<=" or ">="
  bool pass = true;
};

struct IdentityReport {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string operator_kind;
  std::vector<IdentityCheck> checks;
  bool pass = true;
};

struct IdentitySuiteOptions {
  // Negates a(2) in the operator used to compute B, ad^T, S and the
  // connection, while the reference inner products keep the clean symbol.
  // Emulates an implementation bug in the operator path; the adjointness
  // residual must blow past its threshold (mutation-style negative control).
  bool corrupt_symbol = false;
};

namespace detail {

inline double guarded(double scale) { return std::max(scale, 1e-30); }

// Central-difference check that the derivative of Ad along the flow of u
// recovers ad_u v. The raw fields are low-passed to |k| <= 8 and normalized
// to sup-norm <= amp: the quotient's error constant carries third
// derivatives, and products of fuller-band fields push content into the
// dropped Nyquist mode, which shows up as an s-independent floor. The
// group-level checks live in the mild, smooth regime.
struct AdDerivativeResult {
  double residual_fine = 0.0;
  double order = 0.0;
};

inline PeriodicField low_pass(const PeriodicField& u, int k_max) {
  std::vector<std::complex<double>> c(u.coeffs());
  for (int k = k_max + 1; k <= u.size() / 2; ++k) c[k] = 0.0;
  return PeriodicField::from_coeffs(u.size(), std::move(c));
}

inline AdDerivativeResult ad_derivative_check(const PeriodicField& u_raw,
                                              const PeriodicField& v_raw, double amp = 0.5) {
  const int n = u_raw.size();
  auto prepared = [&](const PeriodicField& w_raw) {
    const PeriodicField w = low_pass(w_raw, 8);
    const double s = sup_norm(w);
    return (s > amp) ? (amp / s) * w : w;
  };
  const PeriodicField u = prepared(u_raw);
  const PeriodicField v = prepared(v_raw);
  const PeriodicField target = ad(u, v);

  auto residual = [&](double s) {
    auto source = [&u](double) { return u; };
    const CircleDiffeo phi_plus = flow_from_velocity(source, s, s / 8.0, n);
    auto source_neg = [&u](double) { return -1.0 * u; };
    const CircleDiffeo phi_minus = flow_from_velocity(source_neg, s, s / 8.0, n);
    const PeriodicField diff =
        (1.0 / (2.0 * s)) * (adjoint_action(phi_plus, v) - adjoint_action(phi_minus, v));
    return sup_norm(diff - target);
  };

  const double r_coarse = residual(1e-2);
  const double r_fine = residual(5e-3);
  AdDerivativeResult out;
  out.residual_fine = r_fine;
  out.order = (r_fine > 1e-14) ? std::log2(r_coarse / r_fine) : 2.0;
  return out;
}

}  // namespace detail

inline IdentityReport run_identity_suite(int n, const InertiaOperator& A, int trials,
                                         std::uint64_t seed,
                                         const IdentitySuiteOptions& options = {}) {
  if (trials < 1) throw std::invalid_argument("run_identity_suite: trials must be >= 1");
  if (A.size() != n) throw std::invalid_argument("run_identity_suite: operator/grid mismatch");
  // A_op drives the operator computations; A keeps scoring the inner products.
  InertiaOperator A_op = A;
  if (options.corrupt_symbol) {
    std::vector<double> sym = A.symbol();
    if (sym.size() > 2) sym[2] = -sym[2];
    A_op = InertiaOperator::unchecked(n, std::move(sym), A.kind() + "(corrupted)");
  }

  IdentityReport report;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  report.operator_kind = A_op.kind();

  IdentityCheck adjointness{"adjointness", 0.0, 1e-10, "<=", true};
  IdentityCheck spray{"spray_consistency", 0.0, 1e-11, "<=", true};
  IdentityCheck metricity{"metricity", 0.0, 1e-10, "<=", true};
  IdentityCheck torsion{"torsion", 0.0, 1e-11, "<=", true};
  IdentityCheck geodesic{"geodesic_form", 0.0, 1e-12, "<=", true};
  IdentityCheck ad_res{"ad_derivative_residual", 0.0, 1e-4, "<=", true};
  IdentityCheck ad_order{"ad_derivative_order", 10.0, 1.9, ">=", true};

  RandomFieldSampler sampler(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const PeriodicField u = sampler.sample(n);
    const PeriodicField v = sampler.sample(n);
    const PeriodicField w = sampler.sample(n);

    const double nu = a_norm(A, u);
    const double nv = a_norm(A, v);
    const double nw = a_norm(A, w);
    const double su = sup_norm(u);
    const double sv = sup_norm(v);

    {
      const double lhs = inner_a(A, arnold_b(A_op, u, v), w);
      const double rhs = inner_a(A, u, ad(v, w));
      adjointness.worst = std::max(adjointness.worst,
                                   std::abs(lhs - rhs) / detail::guarded(nu * nv * nw));
    }
    {
      const PeriodicField direct = pointwise_product(u, derivative(u)) - arnold_b(A_op, u, u);
      spray.worst = std::max(spray.worst, sup_norm(spray_s(A_op, u) - direct) /
                                              std::max(1.0, su * su));
    }
    {
      const double lhs = inner_a(A, covariant_derivative_id(A_op, u, v), w) +
                         inner_a(A, v, covariant_derivative_id(A_op, u, w));
      metricity.worst = std::max(metricity.worst,
                                 std::abs(lhs) / detail::guarded(nu * nv * nw));
    }
    {
      const PeriodicField t = covariant_derivative_id(A_op, u, v) -
                              covariant_derivative_id(A_op, v, u) + ad(u, v);
      torsion.worst = std::max(torsion.worst, sup_norm(t) / std::max(1.0, su * sv));
    }
    {
      const PeriodicField g = covariant_derivative_id(A_op, u, u) - arnold_b(A_op, u, u);
      geodesic.worst = std::max(geodesic.worst, sup_norm(g) / std::max(1.0, su * su));
    }
    {
      const auto ad_check = detail::ad_derivative_check(u, v);
      ad_res.worst = std::max(ad_res.worst, ad_check.residual_fine);
      ad_order.worst = std::min(ad_order.worst, ad_check.order);
    }
  }

  for (IdentityCheck* c : {&adjointness, &spray, &metricity, &torsion, &geodesic, &ad_res}) {
    c->pass = c->worst <= c->bound;
  }
  ad_order.pass = ad_order.worst >= ad_order.bound;

  report.checks = {adjointness, spray, metricity, torsion, geodesic, ad_res, ad_order};
  for (const IdentityCheck& c : report.checks) report.pass = report.pass && c.pass;
  return report;
}

}  // namespace eulerarnold
