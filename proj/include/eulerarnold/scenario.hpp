#pragma once

// Scenario execution for the CLI: integrate the configured geodesic in one or
// both pictures, write trajectory CSVs (plus optional per-record snapshots),
// and emit a machine-readable summary.json with the fixed field names
// `config`, `drifts`, `equivalence_gap`, `breakdown`, `residuals`.
//
// Exit codes: 0 success, 1 usage/config error, 2 breakdown detected,
// 3 identity-suite failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eulerarnold/config.hpp"
#include "eulerarnold/field.hpp"
#include "eulerarnold/flows.hpp"
#include "eulerarnold/identities.hpp"
#include "eulerarnold/inertia.hpp"
#include "eulerarnold/io.hpp"

namespace eulerarnold {

inline constexpr int exit_success = 0;
inline constexpr int exit_config_error = 1;
inline constexpr int exit_breakdown = 2;
inline constexpr int exit_identity_failure = 3;

// Composition quality guard; recorded spectral tails above this get a warning.
inline constexpr double spectral_tail_warn = 1e-6;

struct ScenarioResult {
  int exit_code = exit_success;
  nlohmann::json summary;
  std::vector<std::string> warnings;
};

namespace detail {

inline nlohmann::json drift_json(const ConservationSummary& s) {
  return {{"energy", s.energy_drift},
          {"momentum_mean", s.momentum_drift},
          {"spectral_tail_max", s.max_spectral_tail}};
}

template <class StateT>
nlohmann::json breakdown_json(const Trajectory<StateT>& traj) {
  if (!traj.breakdown) return false;
  return {{"time", traj.breakdown_time}, {"reason", traj.breakdown_reason}};
}

}  // namespace detail

inline ScenarioResult run_scenario(const ScenarioConfig& cfg, const KeyValueMap& kv_echo) {
  const std::filesystem::path out_dir(cfg.output_dir);
  const InertiaOperator A = cfg.op.build(cfg.n);
  const PeriodicField u0 = cfg.initial_condition();

  ScenarioResult result;
  nlohmann::json drifts = {{"eulerian", nullptr}, {"lagrangian", nullptr}};
  nlohmann::json breakdown = false;
  std::optional<EulerianTrajectory> eulerian;
  std::optional<SprayTrajectory> lagrangian;

  if (cfg.mode == RunMode::eulerian || cfg.mode == RunMode::both) {
    eulerian = integrate_euler_arnold(A, u0, cfg.t_final, cfg.dt, cfg.record_every);
    write_trajectory_csv(out_dir / "trajectory_eulerian.csv", *eulerian);
    const ConservationSummary s = conservation_report(*eulerian);
    drifts["eulerian"] = detail::drift_json(s);
    if (cfg.snapshots) {
      for (std::size_t i = 0; i < eulerian->states.size(); ++i) {
        write_field_csv(out_dir / ("snapshot_eulerian_" + std::to_string(i) + ".csv"),
                        eulerian->states[i]);
      }
    }
    if (eulerian->breakdown) breakdown = detail::breakdown_json(*eulerian);
    if (s.max_spectral_tail > spectral_tail_warn) {
      result.warnings.push_back("eulerian spectral tail " + format_g17(s.max_spectral_tail) +
                                " exceeds " + format_g17(spectral_tail_warn) +
                                "; solution is under-resolved");
    }
  }

  if (cfg.mode == RunMode::lagrangian || cfg.mode == RunMode::both) {
    const SprayState s0{CircleDiffeo::identity(cfg.n), u0};
    lagrangian = integrate_spray(A, s0, cfg.t_final, cfg.dt, cfg.record_every);
    write_trajectory_csv(out_dir / "trajectory_lagrangian.csv", *lagrangian);
    const ConservationSummary s = conservation_report(*lagrangian);
    drifts["lagrangian"] = detail::drift_json(s);
    if (cfg.snapshots) {
      for (std::size_t i = 0; i < lagrangian->states.size(); ++i) {
        const std::string tag = std::to_string(i);
        write_diffeo_csv(out_dir / ("snapshot_phi_" + tag + ".csv"), lagrangian->states[i].phi);
        write_field_csv(out_dir / ("snapshot_v_" + tag + ".csv"), lagrangian->states[i].v);
      }
    }
    if (lagrangian->breakdown && breakdown.is_boolean()) {
      breakdown = detail::breakdown_json(*lagrangian);
    }
    if (s.max_spectral_tail > spectral_tail_warn) {
      result.warnings.push_back("lagrangian spectral tail " + format_g17(s.max_spectral_tail) +
                                " exceeds " + format_g17(spectral_tail_warn) +
                                "; composition is under-resolved");
    }
  }

  nlohmann::json gap;  // null unless both pictures completed
  if (cfg.mode == RunMode::both && !eulerian->breakdown && !lagrangian->breakdown) {
    const PeriodicField u_spray = eulerian_velocity(lagrangian->states.back());
    gap = sup_norm(eulerian->states.back() - u_spray);
  }

  result.summary = {{"config", kv_echo},
                    {"drifts", drifts},
                    {"equivalence_gap", gap},
                    {"breakdown", breakdown},
                    {"residuals", nullptr}};

  auto out = detail::open_out(out_dir / "summary.json");
  out << result.summary.dump(2) << '\n';

  result.exit_code = breakdown.is_boolean() ? exit_success : exit_breakdown;
  return result;
}

inline nlohmann::json identity_report_json(const IdentityReport& report) {
  nlohmann::json checks;
  for (const IdentityCheck& c : report.checks) {
    checks[c.name] = {{"worst", c.worst},
                      {"bound", c.bound},
                      {"relation", c.relation},
                      {"pass", c.pass}};
  }
  return {{"n", report.n},
          {"trials", report.trials},
          {"seed", report.seed},
          {"operator", report.operator_kind},
          {"checks", checks},
          {"pass", report.pass}};
}

struct ConvergenceRow {
  double dt = 0.0;
  double error = 0.0;
  double order = 0.0;   // vs the previous row
  bool has_order = false;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double reference_dt = 0.0;
};

// Self-convergence of the final state against a reference run at half the
// finest step. Error metric: sup norm of the final Eulerian velocity
// difference (for lagrangian mode, of both v and the displacement).
inline ConvergenceStudy run_convergence_study(const ScenarioConfig& cfg,
                                              std::vector<double> dts) {
  if (dts.size() < 3) throw ConfigError("convergence study needs at least 3 dt values");
  for (std::size_t i = 1; i < dts.size(); ++i) {
    if (!(dts[i] < dts[i - 1])) throw ConfigError("dt list must be strictly decreasing");
  }
  for (double dt : dts) {
    const double steps = cfg.t_final / dt;
    if (!(dt > 0.0) || std::abs(steps - std::llround(steps)) > 1e-9 * std::max(1.0, steps)) {
      throw ConfigError("t_final=" + format_g17(cfg.t_final) +
                        " is not an integer multiple of dt=" + format_g17(dt));
    }
  }

  const InertiaOperator A = cfg.op.build(cfg.n);
  const PeriodicField u0 = cfg.initial_condition();
  const bool lagrangian = cfg.mode == RunMode::lagrangian;

  // Final state at step dt, packed as (v, displacement) for the spray picture.
  auto final_state = [&](double dt) -> std::vector<PeriodicField> {
    if (lagrangian) {
      const SprayState s0{CircleDiffeo::identity(cfg.n), u0};
      const SprayTrajectory t = integrate_spray(A, s0, cfg.t_final, dt, 1 << 30);
      if (t.breakdown) throw std::domain_error("breakdown during convergence run");
      return {t.states.back().v, t.states.back().phi.displacement()};
    }
    const EulerianTrajectory t = integrate_euler_arnold(A, u0, cfg.t_final, dt, 1 << 30);
    if (t.breakdown) throw std::domain_error("breakdown during convergence run");
    return {t.states.back()};
  };

  ConvergenceStudy study;
  study.reference_dt = dts.back() / 2.0;
  const std::vector<PeriodicField> reference = final_state(study.reference_dt);
  for (std::size_t i = 0; i < dts.size(); ++i) {
    ConvergenceRow row;
    row.dt = dts[i];
    const std::vector<PeriodicField> state = final_state(dts[i]);
    row.error = 0.0;
    for (std::size_t c = 0; c < state.size(); ++c) {
      row.error = std::max(row.error, sup_norm(state[c] - reference[c]));
    }
    if (i > 0) {
      const ConvergenceRow& prev = study.rows.back();
      if (row.error > 1e-14 && prev.error > 1e-14) {
        row.order = std::log(prev.error / row.error) / std::log(prev.dt / row.dt);
        row.has_order = true;
      }
    }
    study.rows.push_back(row);
  }
  return study;
}

inline void write_convergence_csv(const std::filesystem::path& path,
                                  const ConvergenceStudy& study) {
  auto out = detail::open_out(path);
  out << "dt,error,order\n";
  for (const ConvergenceRow& r : study.rows) {
    out << format_g17(r.dt) << ',' << format_g17(r.error) << ','
        << (r.has_order ? format_g17(r.order) : std::string("na")) << '\n';
  }
}

}  // namespace eulerarnold
