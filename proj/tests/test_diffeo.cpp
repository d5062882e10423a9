#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "eulerarnold/algebra.hpp"
#include "eulerarnold/diffeo.hpp"
#include "eulerarnold/field.hpp"
#include "eulerarnold/flows.hpp"

#include "test_helpers.hpp"

using namespace eulerarnold;
using ea_test::cosine;
using ea_test::max_diff;
using ea_test::random_field;
using ea_test::sine;

namespace {

// Mild diffeo generator: |f|_inf <= 0.3 and |f'|_inf <= 0.5.
CircleDiffeo mild_diffeo(int n, std::mt19937& rng) {
  PeriodicField f = random_field(n, 4, rng);
  const double scale = std::min(0.3 / std::max(sup_norm(f), 1e-12),
                                0.5 / std::max(sup_norm(derivative(f)), 1e-12));
  return CircleDiffeo::from_displacement(std::min(scale, 1.0) * f);
}

double displacement_gap(const CircleDiffeo& a, const CircleDiffeo& b) {
  return sup_norm(a.displacement() - b.displacement());
}

}  // namespace

TEST_CASE("diffeo construction and validation") {
  const int n = 64;
  SECTION("zero displacement is the identity") {
    const CircleDiffeo id = CircleDiffeo::identity(n);
    REQUIRE(sup_norm(id.displacement()) == 0.0);
    REQUIRE(id.min_jacobian() == 1.0);
  }
  SECTION("constant displacement is a rigid rotation") {
    const CircleDiffeo rot = CircleDiffeo::rotation(n, 0.7);
    REQUIRE(rot.min_jacobian() == 1.0);
    REQUIRE(rot(1.0) == Catch::Approx(1.7).margin(1e-15));
  }
  SECTION("f = 1.5 sin x fails monotonicity with reported minimum") {
    try {
      CircleDiffeo::from_displacement(sine(n, 1, 1.5));
      FAIL("expected MonotonicityError");
    } catch (const MonotonicityError& e) {
      REQUIRE(e.min_jacobian == Catch::Approx(-0.5).margin(1e-12));
      REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring("min(1+f')"));
    }
  }
}

TEST_CASE("compose_field_with_diffeo") {
  const int n = 64;
  std::mt19937 rng(71);
  SECTION("identity leaves fields alone") {
    const PeriodicField v = random_field(n, n / 4, rng);
    REQUIRE(max_diff(compose_field_with_diffeo(v, CircleDiffeo::identity(n)), v) < 1e-13);
  }
  SECTION("rotation by pi flips cos") {
    const PeriodicField composed =
        compose_field_with_diffeo(cosine(n, 1), CircleDiffeo::rotation(n, std::numbers::pi));
    REQUIRE(max_diff(composed, cosine(n, 1, -1.0)) < 1e-13);
  }
  SECTION("constants are invariant") {
    std::mt19937 rng2(73);
    const CircleDiffeo phi = mild_diffeo(n, rng2);
    const PeriodicField c = PeriodicField::constant(n, 4.0);
    REQUIRE(max_diff(compose_field_with_diffeo(c, phi), c) < 1e-14);
  }
}

TEST_CASE("compose_diffeos") {
  const int n = 64;
  std::mt19937 rng(79);
  SECTION("right identity") {
    const CircleDiffeo phi = mild_diffeo(n, rng);
    REQUIRE(displacement_gap(compose_diffeos(phi, CircleDiffeo::identity(n)), phi) < 1e-12);
  }
  SECTION("rotations form a subgroup") {
    const CircleDiffeo ab =
        compose_diffeos(CircleDiffeo::rotation(n, 0.4), CircleDiffeo::rotation(n, 1.1));
    REQUIRE(displacement_gap(ab, CircleDiffeo::rotation(n, 1.5)) < 1e-14);
  }
  SECTION("phi composed with its inverse is the identity") {
    for (int trial = 0; trial < 10; ++trial) {
      const CircleDiffeo phi = mild_diffeo(n, rng);
      const CircleDiffeo round = compose_diffeos(phi, invert_diffeo(phi));
      REQUIRE(sup_norm(round.displacement()) < 1e-10);
    }
  }
}

TEST_CASE("invert_diffeo") {
  const int n = 64;
  SECTION("identity and rotations invert exactly") {
    REQUIRE(sup_norm(invert_diffeo(CircleDiffeo::identity(n)).displacement()) < 1e-14);
    REQUIRE(displacement_gap(invert_diffeo(CircleDiffeo::rotation(n, 0.9)),
                             CircleDiffeo::rotation(n, -0.9)) < 1e-14);
  }
  SECTION("Newton inversion hits the 1e-10 round-trip bound") {
    const CircleDiffeo phi = CircleDiffeo::from_displacement(sine(n, 1, 0.1));
    const CircleDiffeo inv = invert_diffeo(phi);
    for (int j = 0; j < n; ++j) {
      const double x = PeriodicField::node(n, j);
      REQUIRE(std::abs(phi(inv(x)) - x) <= 1e-10);
    }
  }
}

TEST_CASE("group axioms on mild diffeos") {
  const int n = 64;
  std::mt19937 rng(83);
  SECTION("associativity") {
    for (int trial = 0; trial < 5; ++trial) {
      const CircleDiffeo a = mild_diffeo(n, rng);
      const CircleDiffeo b = mild_diffeo(n, rng);
      const CircleDiffeo c = mild_diffeo(n, rng);
      const CircleDiffeo left = compose_diffeos(compose_diffeos(a, b), c);
      const CircleDiffeo right = compose_diffeos(a, compose_diffeos(b, c));
      REQUIRE(displacement_gap(left, right) < 1e-9);
    }
  }
}

TEST_CASE("adjoint action") {
  const int n = 64;
  std::mt19937 rng(89);
  SECTION("Ad of the identity is the identity") {
    const PeriodicField u = random_field(n, n / 4, rng);
    REQUIRE(max_diff(adjoint_action(CircleDiffeo::identity(n), u), u) < 1e-12);
  }
  SECTION("Ad of a rotation translates the field") {
    const double c = 0.6;
    const PeriodicField u = cosine(n, 1);
    const PeriodicField expected =
        compose_field_with_diffeo(u, CircleDiffeo::rotation(n, -c));
    REQUIRE(max_diff(adjoint_action(CircleDiffeo::rotation(n, c), u), expected) < 1e-12);
  }
  SECTION("Ad is a left action: Ad_{phi o psi} = Ad_phi Ad_psi") {
    // n=128: the composition chain truncates twice, so give the widened
    // spectra room to decay below the bound.
    const int n_fine = 128;
    for (int trial = 0; trial < 5; ++trial) {
      const CircleDiffeo phi = mild_diffeo(n_fine, rng);
      const CircleDiffeo psi = mild_diffeo(n_fine, rng);
      const PeriodicField u = random_field(n_fine, 8, rng);
      const PeriodicField lhs = adjoint_action(compose_diffeos(phi, psi), u);
      const PeriodicField rhs = adjoint_action(phi, adjoint_action(psi, u));
      REQUIRE(max_diff(lhs, rhs) < 1e-8);
    }
  }
}

TEST_CASE("derivative of Ad along a flow recovers ad") {
  const int n = 128;
  const PeriodicField u = PeriodicField::from_modes(
      n, std::vector<Mode>{{1, 0.4, 0.0}, {2, 0.0, 0.2}});
  const PeriodicField v = PeriodicField::from_modes(
      n, std::vector<Mode>{{1, 0.0, 0.5}, {3, 0.3, 0.0}});
  const PeriodicField target = ad(u, v);

  auto residual = [&](double s) {
    auto vel_pos = [&u](double) { return u; };
    auto vel_neg = [&u](double) { return -1.0 * u; };
    const CircleDiffeo phi_pos = flow_from_velocity(vel_pos, s, s / 8.0, n);
    const CircleDiffeo phi_neg = flow_from_velocity(vel_neg, s, s / 8.0, n);
    const PeriodicField quotient =
        (1.0 / (2.0 * s)) * (adjoint_action(phi_pos, v) - adjoint_action(phi_neg, v));
    return sup_norm(quotient - target);
  };

  const double r_coarse = residual(1e-2);
  const double r_fine = residual(5e-3);
  INFO("residual(1e-2)=" << r_coarse << " residual(5e-3)=" << r_fine);
  REQUIRE(r_fine <= 1e-4);
  REQUIRE(std::log2(r_coarse / r_fine) >= 1.9);
  REQUIRE(std::log2(r_coarse / r_fine) <= 2.5);  // genuinely second order, not noise
}
