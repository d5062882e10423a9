#pragma once

// Time integration of the geodesic flow.
//
// Eulerian picture:    u_t = -B(u,u)                     (Euler-Arnold)
// Lagrangian picture:  phi_t = v,  v_t = S_phi(v),       (spray equation)
//                      S_phi(v) = ( S(v o phi^{-1}) ) o phi
//
// plus the translation maps between them: eulerian_velocity (u = v o phi^{-1})
// and flow_from_velocity (the right evolution map, phi_t = u(t) o phi from the
// identity).
//
// Classical fixed-step RK4 throughout; no adaptivity. Wave breaking (loss of
// monotonicity of phi) and non-finite values stop the integration and flag
// the trajectory `breakdown` instead of throwing; CH-type geodesics cease to
// exist in the smooth category and the engine reports where.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eulerarnold/algebra.hpp"
#include "eulerarnold/diffeo.hpp"
#include "eulerarnold/field.hpp"
#include "eulerarnold/inertia.hpp"

namespace eulerarnold {

// A point of T Diff(S^1): a diffeomorphism and a tangent vector at it.
struct SprayState {
  CircleDiffeo phi;
  PeriodicField v;
};

// Tangent-space increment for RK4 on SprayState; the displacement component
// is advanced additively.
struct SprayDeriv {
  PeriodicField d_phi;
  PeriodicField d_v;

  friend SprayDeriv operator+(const SprayDeriv& a, const SprayDeriv& b) {
    return {a.d_phi + b.d_phi, a.d_v + b.d_v};
  }
  friend SprayDeriv operator*(double s, const SprayDeriv& d) {
    return {s * d.d_phi, s * d.d_v};
  }
};

inline PeriodicField state_axpy(const PeriodicField& u, double a, const PeriodicField& k) {
  return u + a * k;
}

inline SprayState state_axpy(const SprayState& s, double a, const SprayDeriv& k) {
  return {CircleDiffeo::from_displacement(s.phi.displacement() + a * k.d_phi), s.v + a * k.d_v};
}

// One classical RK4 step. State/Deriv pairs: PeriodicField/PeriodicField or
// SprayState/SprayDeriv (any type with state_axpy and linear Deriv ops works).
template <class State, class Rhs>
State step_rk4(Rhs&& rhs, const State& s, double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_rk4: dt must be positive");
  const auto k1 = rhs(t, s);
  const auto k2 = rhs(t + 0.5 * dt, state_axpy(s, 0.5 * dt, k1));
  const auto k3 = rhs(t + 0.5 * dt, state_axpy(s, 0.5 * dt, k2));
  const auto k4 = rhs(t + dt, state_axpy(s, dt, k3));
  return state_axpy(s, dt / 6.0, k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Right-hand side of the Euler-Arnold equation, u_t = -B(u,u).
inline PeriodicField euler_arnold_rhs(const InertiaOperator& A, const PeriodicField& u) {
  return -arnold_b(A, u, u);
}

// Right-hand side of the spray equation: (phi_t, v_t) = (v, S_phi(v)) with
// S_phi(v) = R_phi . S . R_{phi^{-1}} (v). phi is re-inverted at every stage.
inline SprayDeriv spray_rhs(const InertiaOperator& A, const SprayState& s) {
  const PeriodicField u = compose_field_with_diffeo(s.v, invert_diffeo(s.phi));
  return {s.v, compose_field_with_diffeo(spray_s(A, u), s.phi)};
}

// Eulerian velocity of a spray state: u = kappa^r(phi, v) = v o phi^{-1}.
inline PeriodicField eulerian_velocity(const SprayState& s) {
  return compose_field_with_diffeo(s.v, invert_diffeo(s.phi));
}

struct ConservationRecord {
  double energy = 0.0;
  double momentum_mean = 0.0;  // mean of m = Au
  double l2_norm = 0.0;
  double spectral_tail = 0.0;
};

inline ConservationRecord make_record(const InertiaOperator& A, const PeriodicField& u) {
  return {energy(A, u), mean(apply_inertia(A, u)), l2_norm(u), spectral_tail_ratio(u)};
}

template <class StateT>
struct Trajectory {
  std::vector<double> times;
  std::vector<StateT> states;
  std::vector<ConservationRecord> records;
  bool breakdown = false;
  double breakdown_time = 0.0;
  std::string breakdown_reason;
};

using EulerianTrajectory = Trajectory<PeriodicField>;
using SprayTrajectory = Trajectory<SprayState>;

namespace detail {

inline long long step_count(double t_final, double dt, const char* what) {
  if (!(t_final > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument(std::string(what) + ": t_final and dt must be positive");
  }
  const double raw = t_final / dt;
  const long long steps = std::llround(raw);
  if (steps < 1 || std::abs(raw - static_cast<double>(steps)) > 1e-9 * std::max(1.0, raw)) {
    throw std::invalid_argument(std::string(what) + ": t_final must be an integer multiple of dt");
  }
  return steps;
}

// Shared fixed-step driver with recording and breakdown capture.
template <class StateT, class Deriv, class Rhs, class Diag>
Trajectory<StateT> integrate(Rhs&& rhs, Diag&& diagnostics, StateT state, double t_final,
                             double dt, long long record_every, const char* what) {
  if (record_every < 1) {
    throw std::invalid_argument(std::string(what) + ": record_every must be >= 1");
  }
  const long long steps = step_count(t_final, dt, what);
  Trajectory<StateT> traj;
  auto record = [&](long long step, const StateT& s) {
    traj.times.push_back(step * dt);
    traj.states.push_back(s);
    traj.records.push_back(diagnostics(s));
  };
  record(0, state);
  for (long long i = 0; i < steps; ++i) {
    const double t = i * dt;
    try {
      StateT next = step_rk4(rhs, state, t, dt);
      state = std::move(next);
    } catch (const std::domain_error& e) {
      traj.breakdown = true;
      traj.breakdown_time = t;
      traj.breakdown_reason = e.what();
      if (traj.times.empty() || traj.times.back() != t) record(i, state);  // last good state
      return traj;
    }
    if ((i + 1) % record_every == 0 || i + 1 == steps) record(i + 1, state);
  }
  return traj;
}

}  // namespace detail

inline EulerianTrajectory integrate_euler_arnold(const InertiaOperator& A,
                                                 const PeriodicField& u0, double t_final,
                                                 double dt, long long record_every = 1) {
  require_same_grid(A, u0, "integrate_euler_arnold");
  auto rhs = [&A](double, const PeriodicField& u) { return euler_arnold_rhs(A, u); };
  auto diag = [&A](const PeriodicField& u) { return make_record(A, u); };
  return detail::integrate<PeriodicField, PeriodicField>(rhs, diag, u0, t_final, dt,
                                                         record_every, "integrate_euler_arnold");
}

// Diagnostics are computed on the Eulerian image u = v o phi^{-1}: the metric
// is right-invariant, so energy lives at the identity.
inline SprayTrajectory integrate_spray(const InertiaOperator& A, const SprayState& s0,
                                       double t_final, double dt, long long record_every = 1) {
  require_same_grid(A, s0.v, "integrate_spray");
  auto rhs = [&A](double, const SprayState& s) { return spray_rhs(A, s); };
  auto diag = [&A](const SprayState& s) { return make_record(A, eulerian_velocity(s)); };
  return detail::integrate<SprayState, SprayDeriv>(rhs, diag, s0, t_final, dt, record_every,
                                                   "integrate_spray");
}

// The right evolution map: integrate phi_t = u(t) o phi from the identity and
// return phi(t_final). The source must produce the velocity field at any
// requested time (RK4 samples t, t+dt/2, t+dt).
inline CircleDiffeo flow_from_velocity(const std::function<PeriodicField(double)>& velocity_at,
                                       double t_final, double dt, int n) {
  const long long steps = detail::step_count(t_final, dt, "flow_from_velocity");
  auto rhs = [&](double t, const PeriodicField& f) {
    const PeriodicField u = velocity_at(t);
    require_same_grid(u, f, "flow_from_velocity");
    std::vector<double> w(f.size());
    for (int j = 0; j < f.size(); ++j) {
      w[j] = evaluate_at(u, PeriodicField::node(f.size(), j) + f.value(j));
    }
    return PeriodicField::from_values(std::move(w));
  };
  PeriodicField f = PeriodicField::zero(n);
  for (long long i = 0; i < steps; ++i) {
    f = step_rk4(rhs, f, i * dt, dt);
  }
  return CircleDiffeo::from_displacement(std::move(f));  // throws on monotonicity loss
}

struct ConservationSummary {
  double energy_drift = 0.0;     // relative unless the initial value is ~0
  double momentum_drift = 0.0;
  double max_spectral_tail = 0.0;
  bool breakdown = false;
};

// Max drifts over a trajectory's records. Near-zero initial values (< 1e-14)
// switch that channel to absolute drift to avoid 0/0.
template <class StateT>
ConservationSummary conservation_report(const Trajectory<StateT>& traj) {
  if (traj.records.empty()) {
    throw std::invalid_argument("conservation_report: empty trajectory");
  }
  const double e0 = traj.records.front().energy;
  const double m0 = traj.records.front().momentum_mean;
  const double e_den = std::abs(e0) < 1e-14 ? 1.0 : std::abs(e0);
  const double m_den = std::abs(m0) < 1e-14 ? 1.0 : std::abs(m0);
  ConservationSummary s;
  s.breakdown = traj.breakdown;
  for (const ConservationRecord& r : traj.records) {
    s.energy_drift = std::max(s.energy_drift, std::abs(r.energy - e0) / e_den);
    s.momentum_drift = std::max(s.momentum_drift, std::abs(r.momentum_mean - m0) / m_den);
    s.max_spectral_tail = std::max(s.max_spectral_tail, r.spectral_tail);
  }
  return s;
}

}  // namespace eulerarnold
