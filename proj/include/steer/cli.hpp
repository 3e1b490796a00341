#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "steer/experiments.hpp"
#include "steer/families.hpp"
#include "steer/io.hpp"

namespace steer::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct CliConfig {
  std::string command;
  std::string input;
  std::string output;  // empty: standard output
  std::string format = "json";
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;  // 0: command default
  int workers = 1;
  double tol = kValidationTol;
  std::optional<double> p, alpha, beta, theta;
  std::vector<double> epsilons{0.0, 0.001, 0.005, 0.01};
  int grid = 0;  // 0: command default
  int hub = 0;
  std::string family;
  bool mixed = false;
  bool inject_corrupted = false;
};

namespace detail {

inline std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ValidationError("--epsilons: cannot parse '" + item + "'");
    out.push_back(v);
  }
  return out;
}

inline QuantumState family_from_config(const CliConfig& cfg) {
  auto need = [](const std::optional<double>& v, const char* flag) {
    if (!v) throw ValidationError(std::string("family needs ") + flag);
    return *v;
  };
  const std::string& f = cfg.family;
  if (f == "w") return families::family_state(families::WState{});
  if (f == "ghz") return families::family_state(families::GhzState{});
  if (f == "w-family") return families::family_state(families::WFamily{need(cfg.p, "--p")});
  if (f == "ghz-family") {
    return families::family_state(families::GhzFamily{need(cfg.alpha, "--alpha"), need(cfg.beta, "--beta")});
  }
  if (f == "max-volume") return families::family_state(families::MaxVolume{need(cfg.theta, "--theta")});
  if (f == "counterexample") return families::family_state(families::Counterexample{});
  if (f == "purified-counterexample") return families::family_state(families::PurifiedCounterexample{});
  throw ValidationError("unknown family '" + f + "'");
}

struct Emitted {
  std::string text;
  int code = kOk;
};

inline Emitted analyze(const CliConfig& cfg) {
  if (cfg.input.empty() == cfg.family.empty()) throw ValidationError("analyze needs exactly one of --input, --family");
  const QuantumState state = cfg.input.empty() ? family_from_config(cfg) : io::read_state_file(cfg.input, cfg.tol);
  const int n = state.n_qubits();
  steer::detail::require(n >= 2, "analyze: need at least two qubits");
  steer::detail::require(cfg.hub >= 0 && cfg.hub < n, "analyze: --hub out of range");

  struct Entry {
    int steering;
    int steered;
    SteeringEllipsoid ell;
  };
  std::vector<Entry> entries;
  if (n == 2) {
    const auto d = pauli_decomposition(state);
    entries.push_back({0, 1, steering_ellipsoid(d, Steering::BGivenA)});
    entries.push_back({1, 0, steering_ellipsoid(d, Steering::AGivenB)});
  } else {
    for (int x = 0; x < n; ++x) {
      if (x == cfg.hub) continue;
      entries.push_back({cfg.hub, x, steering_ellipsoid(partial_trace(state, {cfg.hub, x}))});
    }
  }

  std::ostringstream os;
  if (cfg.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : entries) {
      rows.push_back({std::to_string(e.steering), std::to_string(e.steered), io::format_double(e.ell.normalized_volume),
                      io::format_double(e.ell.semiaxes(0)), io::format_double(e.ell.semiaxes(1)),
                      io::format_double(e.ell.semiaxes(2)), io::format_double(e.ell.center(0)),
                      io::format_double(e.ell.center(1)), io::format_double(e.ell.center(2)),
                      e.ell.degenerate ? "true" : "false"});
    }
    io::write_csv(os,
                  {"steering", "steered", "volume", "semiaxis_1", "semiaxis_2", "semiaxis_3", "center_x", "center_y",
                   "center_z", "degenerate"},
                  rows);
  } else {
    io::Json ells = io::Json::array();
    for (const auto& e : entries) {
      io::Json j = {{"steering", e.steering}, {"steered", e.steered}};
      j.update(io::to_json(e.ell));
      ells.push_back(j);
    }
    io::Json out = {{"n_qubits", n}, {"ellipsoids", ells}};
    out["monogamy"] = n >= 3 ? io::to_json(volume_monogamy_report(state, cfg.hub)) : io::Json(nullptr);
    os << out.dump(2) << '\n';
  }
  return {os.str(), kOk};
}

inline Emitted fig1(const CliConfig& cfg) {
  const auto rows = sweep_ghz_region(cfg.grid > 0 ? cfg.grid : 50);
  int code = kOk;
  for (const auto& r : rows) {
    const double predicted_sqrt = std::sqrt(r.predicted_x) + std::sqrt(r.predicted_y);
    if (r.residual_x >= 1e-9 || r.residual_y >= 1e-9 || predicted_sqrt > 1.0 + 1e-9) code = kCheckFailed;
  }
  std::ostringstream os;
  if (cfg.format == "csv") {
    io::rows_to_csv(os, rows);
  } else {
    os << io::rows_to_json(rows).dump(2) << '\n';
  }
  return {os.str(), code};
}

inline Emitted fig2(const CliConfig& cfg) {
  const std::vector<double> ps = cfg.p ? std::vector<double>{*cfg.p} : open_grid(0.0, 1.0, cfg.grid > 0 ? cfg.grid : 100);
  const auto rows = sweep_noisy_w(ps, cfg.epsilons);
  int code = kOk;
  for (const auto& r : rows) {
    if (!(r.residual < 1e-9)) code = kCheckFailed;
  }
  std::ostringstream os;
  if (cfg.format == "csv") {
    io::rows_to_csv(os, rows);
  } else {
    os << io::rows_to_json(rows).dump(2) << '\n';
  }
  return {os.str(), code};
}

inline Emitted conjecture(const CliConfig& cfg) {
  const std::uint64_t n = cfg.samples > 0 ? cfg.samples : 100000;
  const auto slack = cfg.tol;
  const ConjectureResult r = cfg.mixed ? run_mixed_four_qubit_scan(n, cfg.seed, cfg.workers, slack)
                                       : run_conjecture_test(n, cfg.seed, cfg.workers, slack);
  std::ostringstream os;
  if (cfg.format == "csv") {
    io::write_csv(os, {"samples", "violations", "max_lhs", "worst_state_seed", "bound", "near_misses"},
                  {{std::to_string(r.samples), std::to_string(r.violations), io::format_double(r.max_lhs),
                    std::to_string(r.worst_state_seed), io::format_double(r.bound),
                    std::to_string(r.near_misses.size())}});
  } else {
    os << io::to_json(r).dump(2) << '\n';
  }
  // The mixed scan explores an open question; violations are data, not failures.
  const int code = (!cfg.mixed && r.violations > 0) ? kCheckFailed : kOk;
  return {os.str(), code};
}

inline Emitted suite_cmd(const CliConfig& cfg) {
  SuiteOptions opts;
  opts.samples = cfg.samples > 0 ? cfg.samples : 10000;
  opts.master_seed = cfg.seed;
  opts.workers = cfg.workers;
  opts.inject_corrupted_state = cfg.inject_corrupted;
  const SuiteReport report = run_property_suite(opts);
  std::ostringstream os;
  if (cfg.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : report.invariants) {
      rows.push_back({r.name, std::to_string(r.samples), std::to_string(r.failures), io::format_double(r.worst_margin),
                      r.passed() ? "pass" : "fail"});
    }
    io::write_csv(os, {"invariant", "samples", "failures", "worst_margin", "status"}, rows);
  } else {
    os << io::to_json(report).dump(2) << '\n';
  }
  return {os.str(), report.passed() ? kOk : kCheckFailed};
}

inline Emitted counterexample_cmd(const CliConfig& cfg) {
  const auto rep = volume_monogamy_report(families::counterexample(), 0);
  const auto werner = steering_ellipsoid(partial_trace(families::counterexample(), {0, 1}));
  const auto purified = volume_monogamy_report(families::purified_counterexample(), 0);
  const bool reproduced = std::abs(rep.sqrt_lhs - 2.0 * std::sqrt(8.0 / 27.0)) < 1e-9 && purified.sqrt_lhs > 1.0;
  std::ostringstream os;
  if (cfg.format == "csv") {
    io::write_csv(os, {"v_ba", "v_ca", "sqrt_lhs", "two_thirds_lhs", "werner_radius", "purified_sqrt_lhs"},
                  {{io::format_double(rep.volumes[0]), io::format_double(rep.volumes[1]),
                    io::format_double(rep.sqrt_lhs), io::format_double(rep.two_thirds_lhs),
                    io::format_double(werner.semiaxes(0)), io::format_double(purified.sqrt_lhs)}});
  } else {
    io::Json j = {{"v_ba", io::number(rep.volumes[0])},
                  {"v_ca", io::number(rep.volumes[1])},
                  {"sqrt_lhs", io::number(rep.sqrt_lhs)},
                  {"two_thirds_lhs", io::number(rep.two_thirds_lhs)},
                  {"werner_semiaxes", io::vec3(werner.semiaxes)},
                  {"purified_sqrt_lhs", io::number(purified.sqrt_lhs)},
                  {"purified_volumes", io::to_json(purified)["volumes"]}};
    os << j.dump(2) << '\n';
  }
  return {os.str(), reproduced ? kOk : kCheckFailed};
}

}  // namespace detail

// Runs the command line `args` (program name excluded). Results go to
// `out` or the --output file, diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum steering ellipsoids and volume monogamy", "steer_cli"};
  app.require_subcommand(1);
  app.fallthrough();
  CliConfig cfg;
  std::string epsilons;

  app.add_option("--input", cfg.input, "State file (JSON)");
  app.add_option("--output", cfg.output, "Write results here instead of standard output");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cfg.seed, "Master seed");
  app.add_option("--samples", cfg.samples, "Sample count (0: command default)");
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "Validation tolerance for inputs and slack for conjecture violations")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--p", cfg.p, "W-family parameter p");
  app.add_option("--alpha", cfg.alpha, "GHZ-family alpha");
  app.add_option("--beta", cfg.beta, "GHZ-family beta");
  app.add_option("--theta", cfg.theta, "Maximum-volume family theta");
  app.add_option("--epsilons", epsilons, "Comma-separated noise strengths");
  app.add_option("--grid", cfg.grid, "Grid steps (0: command default)")->check(CLI::NonNegativeNumber);

  auto* analyze = app.add_subcommand("analyze", "Steering ellipsoids and monogamy report of a state");
  analyze->add_option("--hub", cfg.hub, "Steering qubit");
  analyze->add_option("--family", cfg.family,
                      "Built-in state instead of --input: w, ghz, w-family, ghz-family, max-volume, counterexample, "
                      "purified-counterexample");
  app.add_subcommand("fig1", "GHZ-family volume map over an (alpha, beta) grid");
  app.add_subcommand("fig2", "Noisy W-family volumes, closed form against numerics");
  auto* conj = app.add_subcommand("conjecture", "Monte-Carlo scan of the 4-qubit correlation conjecture");
  conj->add_flag("--mixed", cfg.mixed, "Scan mixed 4-qubit states against the 2/3-power relation instead");
  auto* suite = app.add_subcommand("suite", "Randomized property suite");
  suite->add_flag("--inject-corrupted", cfg.inject_corrupted, "Test hook: inject a trace-0.9 state");
  app.add_subcommand("counterexample", "Mixed-state counterexample regression numbers");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (!epsilons.empty()) cfg.epsilons = detail::parse_list(epsilons);
    detail::Emitted result;
    if (cfg.command == "analyze") result = detail::analyze(cfg);
    else if (cfg.command == "fig1") result = detail::fig1(cfg);
    else if (cfg.command == "fig2") result = detail::fig2(cfg);
    else if (cfg.command == "conjecture") result = detail::conjecture(cfg);
    else if (cfg.command == "suite") result = detail::suite_cmd(cfg);
    else result = detail::counterexample_cmd(cfg);

    if (cfg.output.empty()) {
      out << result.text;
    } else {
      std::ofstream file(cfg.output);
      if (!file) throw ValidationError("output: cannot open " + cfg.output);
      file << result.text;
    }
    if (result.code != kOk) err << cfg.command << ": check failed\n";
    return result.code;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), out, err);
}

}  // namespace steer::cli
