#pragma once

// The Lie-algebraic operators of the right-invariant metric on Diff(S^1),
// evaluated at the identity: ad, the Arnold operator B, its transpose ad^T,
// the geodesic-spray nonlinearity S, the Levi-Civita connection restricted to
// right-invariant fields, and the energy.
//
// Conventions (g = C^inf(S^1), inner product <u,v>_A = (u, Av)):
//
//   ad_u v   = u_x v - v_x u
//   B(u,v)   = A^{-1}{ (Au)_x v + 2 Au v_x },  <B(u,v), w>_A = <u, ad_v w>_A
//   ad^T_u v = B(v,u)                           <ad^T_u v, w>_A = <v, ad_u w>_A
//   S(u)     = A^{-1}{ [A,u]Du + u[A,D]u - 2 Au Du }  ( = u u_x - B(u,u) )
//   grad_u v = -1/2 ad_u v + 1/2 ad^T_u v + 1/2 ad^T_v u
//
// S is computed from the commutator form on purpose: the closed identity
// S(u) = u u_x - B(u,u) then cross-checks both code paths.

#include "eulerarnold/field.hpp"
#include "eulerarnold/inertia.hpp"

namespace eulerarnold {

// Adjoint representation of C^inf(S^1): ad_u v = u_x v - v_x u.
inline PeriodicField ad(const PeriodicField& u, const PeriodicField& v) {
  require_same_grid(u, v, "ad");
  return pointwise_product(derivative(u), v) - pointwise_product(derivative(v), u);
}

// Arnold operator: the unique bilinear B with <B(u,v), w>_A = <u, ad_v w>_A.
inline PeriodicField arnold_b(const InertiaOperator& A, const PeriodicField& u,
                              const PeriodicField& v) {
  require_same_grid(u, v, "arnold_b");
  require_same_grid(A, u, "arnold_b");
  const PeriodicField au = apply_inertia(A, u);
  return apply_inverse_inertia(
      A, pointwise_product(derivative(au), v) + 2.0 * pointwise_product(au, derivative(v)));
}

// Metric transpose of ad_u: ad^T_u v = B(v, u).
inline PeriodicField ad_transpose(const InertiaOperator& A, const PeriodicField& u,
                                  const PeriodicField& v) {
  return arnold_b(A, v, u);
}

// Spray nonlinearity in the commutator form
//   S(u) = A^{-1}{ [A,u]D(u) + u[A,D](u) - 2A(u)D(u) },
// with [A,u]w = A(uw) - u A(w) and [A,D]u = A(Du) - D(Au).
inline PeriodicField spray_s(const InertiaOperator& A, const PeriodicField& u) {
  require_same_grid(A, u, "spray_s");
  const PeriodicField du = derivative(u);
  const PeriodicField a_du = apply_inertia(A, du);
  const PeriodicField commutator_au = pointwise_product(u, a_du - derivative(apply_inertia(A, u)));
  const PeriodicField commutator_d = apply_inertia(A, pointwise_product(u, du)) -
                                     pointwise_product(u, a_du);
  const PeriodicField transport = 2.0 * pointwise_product(apply_inertia(A, u), du);
  return apply_inverse_inertia(A, commutator_d + commutator_au - transport);
}

// Levi-Civita connection on right-invariant fields (the T_gY term of the
// general formula vanishes for constant g-valued maps):
//   grad_u v = -1/2 ad_u v + 1/2 ad^T_u v + 1/2 ad^T_v u.
inline PeriodicField covariant_derivative_id(const InertiaOperator& A, const PeriodicField& u,
                                             const PeriodicField& v) {
  return 0.5 * (ad_transpose(A, u, v) + ad_transpose(A, v, u) - ad(u, v));
}

// E(u) = 1/2 <u,u>_A, the conserved geodesic energy in Eulerian variables.
inline double energy(const InertiaOperator& A, const PeriodicField& u) {
  return 0.5 * inner_a(A, u, u);
}

}  // namespace eulerarnold
