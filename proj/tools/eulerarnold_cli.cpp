// Command-line front end for the Diff(S^1) geodesic engine.
//
//   eulerarnold simulate --config scenario.cfg [--set key=value ...]
//   eulerarnold verify   --n 128 --operator helmholtz [--trials 50 --seed 7]
//   eulerarnold converge --config scenario.cfg --dts 4e-3,2e-3,1e-3,5e-4
//
// Exit codes: 0 success, 1 usage/config error, 2 breakdown detected,
// 3 identity-suite failure.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eulerarnold/eulerarnold.hpp"

namespace ea = eulerarnold;

namespace {

std::vector<double> parse_dt_list(const std::string& text) {
  std::vector<double> dts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      const double dt = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument("");
      dts.push_back(dt);
    } catch (const std::exception&) {
      throw ea::ConfigError("--dts: cannot parse `" + item + "` as a number");
    }
  }
  return dts;
}

int run_simulate(const std::string& config_path, const std::vector<std::string>& overrides) {
  ea::KeyValueMap kv = ea::load_flat_config(config_path);
  ea::apply_overrides(kv, overrides);
  const ea::ScenarioConfig cfg = ea::validate_scenario(kv);
  const ea::ScenarioResult result = ea::run_scenario(cfg, kv);
  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';

  const auto& summary = result.summary;
  for (const char* mode : {"eulerian", "lagrangian"}) {
    if (!summary["drifts"][mode].is_null()) {
      std::printf("%s: energy drift %.3e, momentum-mean drift %.3e\n", mode,
                  summary["drifts"][mode]["energy"].get<double>(),
                  summary["drifts"][mode]["momentum_mean"].get<double>());
    }
  }
  if (summary["equivalence_gap"].is_number()) {
    std::printf("equivalence gap |u_eulerian - v o phi^-1|_inf = %.3e\n",
                summary["equivalence_gap"].get<double>());
  }
  if (!summary["breakdown"].is_boolean()) {
    std::printf("breakdown at t = %s (%s)\n",
                ea::format_g17(summary["breakdown"]["time"].get<double>()).c_str(),
                summary["breakdown"]["reason"].get<std::string>().c_str());
  }
  std::printf("outputs written to %s\n", cfg.output_dir.c_str());
  return result.exit_code;
}

int run_verify(int n, const std::string& kind, double sobolev_order,
               const std::string& symbol_csv, int trials, std::uint64_t seed,
               const std::string& output_dir, bool corrupt_symbol) {
  ea::OperatorSpec spec;
  spec.kind = kind;
  spec.sobolev_order = sobolev_order;
  spec.symbol_csv = symbol_csv;
  if (kind != "helmholtz" && kind != "sobolev" && kind != "custom") {
    throw ea::ConfigError("--operator must be helmholtz, sobolev, or custom");
  }
  if (kind == "sobolev" && !(sobolev_order > 0.0)) {
    throw ea::ConfigError("--operator sobolev requires --s > 0");
  }
  if (kind == "custom" && symbol_csv.empty()) {
    throw ea::ConfigError("--operator custom requires --symbol-csv");
  }
  if (n < 4 || (n & (n - 1)) != 0) throw ea::ConfigError("--n must be a power of two >= 4");

  ea::IdentitySuiteOptions options;
  options.corrupt_symbol = corrupt_symbol;
  const ea::IdentityReport report =
      ea::run_identity_suite(n, spec.build(n), trials, seed, options);

  for (const ea::IdentityCheck& c : report.checks) {
    std::printf("%-24s %-4s  worst %.6e  bound %s %.1e\n", c.name.c_str(),
                c.pass ? "ok" : "FAIL", c.worst, c.relation.c_str(), c.bound);
  }
  std::printf("identity suite: %s (n=%d, operator=%s, trials=%d, seed=%llu)\n",
              report.pass ? "PASS" : "FAIL", report.n, report.operator_kind.c_str(),
              report.trials, static_cast<unsigned long long>(report.seed));

  const nlohmann::json summary = {
      {"config",
       {{"n", n},
        {"operator", report.operator_kind},
        {"trials", trials},
        {"seed", seed}}},
      {"drifts", nullptr},
      {"equivalence_gap", nullptr},
      {"breakdown", false},
      {"residuals", ea::identity_report_json(report)}};
  const std::filesystem::path out = std::filesystem::path(output_dir) / "summary.json";
  auto stream = ea::detail::open_out(out);
  stream << summary.dump(2) << '\n';

  return report.pass ? ea::exit_success : ea::exit_identity_failure;
}

int run_converge(const std::string& config_path, const std::vector<std::string>& overrides,
                 const std::string& dts_text) {
  ea::KeyValueMap kv = ea::load_flat_config(config_path);
  ea::apply_overrides(kv, overrides);
  const ea::ScenarioConfig cfg = ea::validate_scenario(kv);
  const std::vector<double> dts = parse_dt_list(dts_text);
  const ea::ConvergenceStudy study = ea::run_convergence_study(cfg, dts);

  std::printf("dt,error,order   (reference dt = %s)\n",
              ea::format_g17(study.reference_dt).c_str());
  for (const ea::ConvergenceRow& r : study.rows) {
    std::printf("%s,%s,%s\n", ea::format_g17(r.dt).c_str(), ea::format_g17(r.error).c_str(),
                r.has_order ? ea::format_g17(r.order).c_str() : "na");
  }
  ea::write_convergence_csv(std::filesystem::path(cfg.output_dir) / "convergence.csv", study);
  std::printf("written to %s/convergence.csv\n", cfg.output_dir.c_str());
  return ea::exit_success;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesic flow of right-invariant Fourier-multiplier metrics on Diff(S^1)"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Integrate a configured geodesic (Eulerian, Lagrangian, or both)");
  simulate->add_option("--config", config_path, "flat key-value scenario file")->required();
  simulate->add_option("--set", overrides, "override a config key, e.g. --set grid.n=256");

  int n = 128;
  std::string op_kind = "helmholtz";
  double sobolev_order = 0.0;
  std::string symbol_csv;
  int trials = 50;
  std::uint64_t seed = 7;
  std::string verify_output = "out";
  bool corrupt_symbol = false;

  CLI::App* verify =
      app.add_subcommand("verify", "Run the randomized identity-verification suite");
  verify->add_option("--n", n, "grid size (power of two)");
  verify->add_option("--operator", op_kind, "helmholtz | sobolev | custom");
  verify->add_option("--s", sobolev_order, "Sobolev order for --operator sobolev");
  verify->add_option("--symbol-csv", symbol_csv, "symbol file for --operator custom");
  verify->add_option("--trials", trials, "random trials")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "sampler seed");
  verify->add_option("--output", verify_output, "directory for summary.json");
  verify
      ->add_flag("--corrupt-symbol", corrupt_symbol,
                 "negate a(2) in the operator path (negative control; suite must fail)")
      ->group("");  // debug

  std::string dts_text;
  CLI::App* converge =
      app.add_subcommand("converge", "Self-convergence study over a list of step sizes");
  converge->add_option("--config", config_path, "flat key-value scenario file")->required();
  converge->add_option("--set", overrides, "override a config key");
  converge->add_option("--dts", dts_text, "comma-separated decreasing step sizes")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(config_path, overrides);
    if (verify->parsed()) {
      return run_verify(n, op_kind, sobolev_order, symbol_csv, trials, seed, verify_output,
                        corrupt_symbol);
    }
    return run_converge(config_path, overrides, dts_text);
  } catch (const ea::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ea::exit_config_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ea::exit_config_error;
  }
}
