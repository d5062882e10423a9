#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "eulerarnold/algebra.hpp"
#include "eulerarnold/field.hpp"
#include "eulerarnold/inertia.hpp"

#include "test_helpers.hpp"

using namespace eulerarnold;
using ea_test::cosine;
using ea_test::max_diff;
using ea_test::random_field;
using ea_test::rel_diff;
using ea_test::sine;

TEST_CASE("ad closed forms") {
  const int n = 32;
  SECTION("antisymmetry on the diagonal") {
    std::mt19937 rng(41);
    const PeriodicField u = random_field(n, n / 4, rng);
    REQUIRE(sup_norm(ad(u, u)) == 0.0);
  }
  SECTION("ad(sin, cos) = cos^2 + sin^2 = 1") {
    REQUIRE(max_diff(ad(sine(n, 1), cosine(n, 1)), PeriodicField::constant(n, 1.0)) < 1e-14);
  }
  SECTION("ad(const, v) = -c v_x") {
    std::mt19937 rng(43);
    const PeriodicField v = random_field(n, n / 4, rng);
    const PeriodicField c = PeriodicField::constant(n, 2.5);
    REQUIRE(max_diff(ad(c, v), -2.5 * derivative(v)) < 1e-13);
  }
}

TEST_CASE("arnold_b two-mode closed form") {
  // A = 1 - D^2, u = v = cos x: Au = 2 cos x, (Au)_x v + 2 Au v_x = -3 sin 2x,
  // a(2) = 5, so B = -(3/5) sin 2x.
  const int n = 64;
  const InertiaOperator A = InertiaOperator::helmholtz(n);
  const PeriodicField u = cosine(n, 1);
  REQUIRE(max_diff(arnold_b(A, u, u), sine(n, 2, -0.6)) < 1e-12);

  SECTION("bilinearity: zero slot gives zero") {
    REQUIRE(sup_norm(arnold_b(A, PeriodicField::zero(n), u)) == 0.0);
    REQUIRE(sup_norm(arnold_b(A, u, PeriodicField::zero(n))) == 0.0);
  }
  SECTION("constants are geodesically frozen: B(c,c)=0") {
    const PeriodicField c = PeriodicField::constant(n, 3.0);
    REQUIRE(sup_norm(arnold_b(A, c, c)) == 0.0);
  }
}

TEST_CASE("arnold_b satisfies the Arnold adjointness identity") {
  std::mt19937 rng(47);
  for (int n : {64, 128}) {
    const std::vector<InertiaOperator> ops = {InertiaOperator::helmholtz(n),
                                              InertiaOperator::sobolev(n, 1.0),
                                              InertiaOperator::sobolev(n, 2.0)};
    for (const InertiaOperator& A : ops) {
      for (int trial = 0; trial < 20; ++trial) {
        const PeriodicField u = random_field(n, n / 4, rng);
        const PeriodicField v = random_field(n, n / 4, rng);
        const PeriodicField w = random_field(n, n / 4, rng);
        const double scale =
            std::max(a_norm(A, u) * a_norm(A, v) * a_norm(A, w), 1e-30);
        const double lhs = inner_a(A, arnold_b(A, u, v), w);
        const double rhs = inner_a(A, u, ad(v, w));
        INFO("n=" << n << " op=" << A.kind() << " trial=" << trial);
        REQUIRE(std::abs(lhs - rhs) <= 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("arnold_b is bilinear") {
  const int n = 64;
  const InertiaOperator A = InertiaOperator::helmholtz(n);
  std::mt19937 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const PeriodicField u1 = random_field(n, n / 4, rng);
    const PeriodicField u2 = random_field(n, n / 4, rng);
    const PeriodicField v = random_field(n, n / 4, rng);
    const double a = 0.7, b = -1.3;
    const PeriodicField lhs = arnold_b(A, a * u1 + b * u2, v);
    const PeriodicField rhs = a * arnold_b(A, u1, v) + b * arnold_b(A, u2, v);
    REQUIRE(max_diff(lhs, rhs) <= 1e-12 * std::max(1.0, sup_norm(lhs)));
    const PeriodicField lhs2 = arnold_b(A, v, a * u1 + b * u2);
    const PeriodicField rhs2 = a * arnold_b(A, v, u1) + b * arnold_b(A, v, u2);
    REQUIRE(max_diff(lhs2, rhs2) <= 1e-12 * std::max(1.0, sup_norm(lhs2)));
  }
}

TEST_CASE("ad_transpose is B with swapped slots and is A-adjoint to ad") {
  const int n = 64;
  const InertiaOperator A = InertiaOperator::helmholtz(n);
  SECTION("two-mode value") {
    const PeriodicField u = cosine(n, 1);
    REQUIRE(max_diff(ad_transpose(A, u, u), sine(n, 2, -0.6)) < 1e-12);
  }
  SECTION("zero slot") {
    REQUIRE(sup_norm(ad_transpose(A, cosine(n, 1), PeriodicField::zero(n))) == 0.0);
  }
  SECTION("adjointness triple") {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 20; ++trial) {
      const PeriodicField u = random_field(n, n / 4, rng);
      const PeriodicField v = random_field(n, n / 4, rng);
      const PeriodicField w = random_field(n, n / 4, rng);
      const double lhs = inner_a(A, ad_transpose(A, u, v), w);
      const double rhs = inner_a(A, v, ad(u, w));
      REQUIRE(std::abs(lhs - rhs) <=
              1e-10 * std::max(a_norm(A, u) * a_norm(A, v) * a_norm(A, w), 1e-30));
    }
  }
}

TEST_CASE("spray closed form and commutator consistency") {
  const int n = 64;
  const InertiaOperator A = InertiaOperator::helmholtz(n);
  SECTION("S(cos x) = (1/10) sin 2x for Camassa-Holm") {
    REQUIRE(max_diff(spray_s(A, cosine(n, 1)), sine(n, 2, 0.1)) < 1e-12);
  }
  SECTION("S(0) = 0 and S(const) = 0") {
    REQUIRE(sup_norm(spray_s(A, PeriodicField::zero(n))) == 0.0);
    REQUIRE(sup_norm(spray_s(A, PeriodicField::constant(n, 2.0))) == 0.0);
  }
  SECTION("S(u) = u u_x - B(u,u), independent code paths") {
    std::mt19937 rng(61);
    for (const InertiaOperator& op :
         {InertiaOperator::helmholtz(n), InertiaOperator::sobolev(n, 2.0)}) {
      for (int trial = 0; trial < 20; ++trial) {
        const PeriodicField u = random_field(n, n / 4, rng);
        const PeriodicField direct =
            pointwise_product(u, derivative(u)) - arnold_b(op, u, u);
        const double scale = std::max(1.0, sup_norm(u) * sup_norm(u));
        REQUIRE(max_diff(spray_s(op, u), direct) <= 1e-11 * scale);
      }
    }
  }
}

TEST_CASE("covariant derivative on right-invariant fields") {
  const int n = 64;
  const InertiaOperator A = InertiaOperator::helmholtz(n);
  std::mt19937 rng(67);

  SECTION("geodesic form: grad_u u = B(u,u)") {
    for (int trial = 0; trial < 10; ++trial) {
      const PeriodicField u = random_field(n, n / 4, rng);
      REQUIRE(max_diff(covariant_derivative_id(A, u, u), arnold_b(A, u, u)) <=
              1e-12 * std::max(1.0, sup_norm(u) * sup_norm(u)));
    }
  }
  SECTION("vanishes when a slot is zero") {
    const PeriodicField v = random_field(n, n / 4, rng);
    REQUIRE(sup_norm(covariant_derivative_id(A, PeriodicField::zero(n), v)) == 0.0);
  }
  SECTION("metric compatibility") {
    for (int trial = 0; trial < 20; ++trial) {
      const PeriodicField u = random_field(n, n / 4, rng);
      const PeriodicField v = random_field(n, n / 4, rng);
      const PeriodicField w = random_field(n, n / 4, rng);
      const double lhs = inner_a(A, covariant_derivative_id(A, u, v), w) +
                         inner_a(A, v, covariant_derivative_id(A, u, w));
      REQUIRE(std::abs(lhs) <=
              1e-10 * std::max(a_norm(A, u) * a_norm(A, v) * a_norm(A, w), 1e-30));
    }
  }
  SECTION("torsion identity at the algebra level") {
    for (int trial = 0; trial < 20; ++trial) {
      const PeriodicField u = random_field(n, n / 4, rng);
      const PeriodicField v = random_field(n, n / 4, rng);
      const PeriodicField t = covariant_derivative_id(A, u, v) -
                              covariant_derivative_id(A, v, u) + ad(u, v);
      REQUIRE(sup_norm(t) <= 1e-11 * std::max(1.0, sup_norm(u) * sup_norm(v)));
    }
  }
}

TEST_CASE("energy closed forms") {
  const int n = 32;
  REQUIRE(rel_diff(energy(InertiaOperator::helmholtz(n), cosine(n, 1)), std::numbers::pi) <
          1e-14);
  REQUIRE(energy(InertiaOperator::helmholtz(n), PeriodicField::zero(n)) == 0.0);
  REQUIRE(rel_diff(energy(InertiaOperator::identity(n), PeriodicField::constant(n, 1.0)),
                   std::numbers::pi) < 1e-14);
}
