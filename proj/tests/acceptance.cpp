// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion carries its own tolerance and wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "steer/cli.hpp"
#include "steer/steer.hpp"

using namespace steer;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string fmt(double x) { return io::format_double(x); }

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> body;
};

Outcome counterexample_reproduction() {
  Outcome o;
  const auto r = volume_monogamy_report(families::counterexample(), 0);
  const double exact = 2.0 * std::sqrt(8.0 / 27.0);
  o.require(std::abs(r.volumes[0] - 8.0 / 27.0) < 1e-9, "v_B|A = " + fmt(r.volumes[0]));
  o.require(std::abs(r.volumes[1] - 8.0 / 27.0) < 1e-9, "v_C|A = " + fmt(r.volumes[1]));
  o.require(std::abs(r.sqrt_lhs - exact) < 1e-9, "sqrt_lhs = " + fmt(r.sqrt_lhs));

  std::ostringstream out, err;
  const int code = cli::run(std::vector<std::string>{"counterexample"}, out, err);
  o.require(code == cli::kOk, "counterexample command exit " + std::to_string(code));
  const double printed = io::Json::parse(out.str())["sqrt_lhs"].get<double>();
  o.require(std::abs(printed - 1.08866) < 1e-4, "printed sqrt_lhs = " + fmt(printed));
  if (o.ok) o.detail = "sqrt_lhs = " + fmt(printed);
  return o;
}

Outcome werner_sphere() {
  Outcome o;
  for (const auto& rho : {families::werner(2.0 / 3.0), partial_trace(families::counterexample(), {0, 1}),
                          partial_trace(families::counterexample(), {0, 2})}) {
    const auto ell = steering_ellipsoid(rho);
    for (int i = 0; i < 3; ++i) {
      o.require(std::abs(ell.semiaxes(i) - 2.0 / 3.0) < 1e-9, "semiaxis = " + fmt(ell.semiaxes(i)));
    }
    o.require(ell.center.norm() < 1e-9, "center off origin");
  }
  if (o.ok) o.detail = "semiaxes = " + fmt(steering_ellipsoid(families::werner(2.0 / 3.0)).semiaxes(0)) + " (x3)";
  return o;
}

Outcome w_family_saturation() {
  Outcome o;
  double worst = 0.0;
  for (double p : open_grid(0.0, 1.0, 50)) {
    const double dev = std::abs(volume_monogamy_report(families::w_family(p), 0).sqrt_lhs - 1.0);
    worst = std::max(worst, dev);
    o.require(dev < 1e-9, "p = " + fmt(p) + " deviates by " + fmt(dev));
  }
  if (o.ok) o.detail = "max |lhs - 1| = " + fmt(worst);
  return o;
}

Outcome ghz_family_mapping() {
  Outcome o;
  const auto rows = sweep_ghz_region(50);
  o.require(rows.size() == 2500, "grid size " + std::to_string(rows.size()));
  double worst = 0.0;
  for (const auto& r : rows) {
    worst = std::max({worst, r.residual_x, r.residual_y});
    o.require(r.residual_x < 1e-9 && r.residual_y < 1e-9,
              "alpha = " + fmt(r.alpha) + ", beta = " + fmt(r.beta) + " residual " +
                  fmt(std::max(r.residual_x, r.residual_y)));
  }
  if (o.ok) o.detail = "max residual = " + fmt(worst);
  return o;
}

Outcome noisy_w_regeneration() {
  Outcome o;
  const std::vector<double> eps{0.0, 0.001, 0.005, 0.01};
  const auto rows = sweep_noisy_w(open_grid(0.0, 1.0, 100), eps);
  o.require(rows.size() == 400, "row count " + std::to_string(rows.size()));
  double worst = 0.0;
  for (const auto& r : rows) {
    const double dev = std::abs(r.lhs_numeric - r.lhs_closed);
    worst = std::max(worst, dev);
    o.require(dev < 1e-9, "p = " + fmt(r.p) + ", eps = " + fmt(r.epsilon) + " lhs deviates by " + fmt(dev));
    if (r.epsilon == 0.0) {
      o.require(std::abs(r.lhs_numeric - 1.0) < 1e-9, "eps = 0 curve at p = " + fmt(r.p) + " is " + fmt(r.lhs_numeric));
    }
  }
  if (o.ok) o.detail = "max |numeric - closed| = " + fmt(worst);
  return o;
}

Outcome conjecture_evidence() {
  Outcome o;
  const auto r = run_conjecture_test(100000, 0, 1);
  o.require(r.samples == 100000, "samples " + std::to_string(r.samples));
  o.require(r.violations == 0, std::to_string(r.violations) + " violations");
  const auto again = run_conjecture_test(1000, 42, 1);
  const auto threaded = run_conjecture_test(1000, 42, 4);
  o.require(again.max_lhs == threaded.max_lhs && again.worst_state_seed == threaded.worst_state_seed,
            "result depends on worker count");
  if (o.ok) o.detail = "0 violations, max lhs = " + fmt(r.max_lhs);
  return o;
}

Outcome invariant_lines(const SuiteReport& report, const std::vector<std::string>& names) {
  Outcome o;
  for (const auto& name : names) {
    const InvariantResult* found = nullptr;
    for (const auto& inv : report.invariants) {
      if (inv.name == name) found = &inv;
    }
    o.require(found != nullptr, "missing invariant " + name);
    if (found) o.require(found->passed(), name + ": " + found->first_failure);
  }
  return o;
}

Outcome property_suite() {
  SuiteOptions opts;
  opts.samples = 10000;
  const auto report = run_property_suite(opts);
  Outcome o = invariant_lines(
      report, {"monogamy.sqrt_pure3", "monogamy.two_thirds_mixed3", "monogamy.two_thirds_pure4",
               "monogamy.n_qubit_mixed5", "monogamy.polygon", "monogamy.concurrence_volume", "monogamy.ckw_mixed3",
               "monogamy.correlation_identity_pure3", "monogamy.correlation_tradeoff_mixed3",
               "monogamy.purity_identities_pure3", "monogamy.purity_identities_pure4",
               "monogamy.canonical_equalities"});
  for (const auto& inv : report.invariants) {
    if (inv.name == "monogamy.n_qubit_mixed5") o.require(inv.samples >= 1000, "5-qubit sample count");
    else if (inv.name.rfind("monogamy.", 0) == 0 && inv.name != "monogamy.w_orbit_saturation") {
      o.require(inv.samples >= 10000, inv.name + " sample count");
    }
  }
  o.require(report.passed(), "suite reported a failure");
  if (o.ok) o.detail = std::to_string(report.invariants.size()) + " invariants passed";
  return o;
}

Outcome noise_monotonicity() {
  Outcome o;
  double worst = -1.0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    auto rng = stream_engine(8, i, 1);
    const auto rho = random_mixed_state(2, 2, rng);
    const auto on_a = random_channel(rng);
    const auto on_b = random_channel(rng);
    const auto r = monotonicity_check(rho, on_a, on_b);
    worst = std::max(worst, r.volume_after - r.volume_before);
    o.require(r.ok, "draw " + std::to_string(i) + ": v grew by " + fmt(r.volume_after - r.volume_before));
  }
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto rng = stream_engine(8, i, 2);
    const auto psi = random_pure_state(3, rng);
    const std::vector<KrausChannel> chans{random_channel(rng), random_channel(rng), random_channel(rng)};
    const double lhs = volume_monogamy_report(apply_local(chans, psi), 0).sqrt_lhs;
    o.require(lhs <= 1.0 + 1e-9, "noisy pure state " + std::to_string(i) + " has lhs " + fmt(lhs));
  }
  if (o.ok) o.detail = "max (v' - v) = " + fmt(worst);
  return o;
}

Outcome separable_bound() {
  Outcome o;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    auto rng = stream_engine(9, i, 1);
    const double v = normalized_volume(suite::random_separable_state(rng));
    worst = std::max(worst, v);
    o.require(v <= 1.0 / 27.0 + 1e-9, "sample " + std::to_string(i) + " has v = " + fmt(v));
  }
  if (o.ok) o.detail = "max v = " + fmt(worst) + " (bound " + fmt(1.0 / 27.0) + ")";
  return o;
}

Outcome slocc_classification() {
  Outcome o;
  auto expect = [&o](const QuantumState& psi, SloccClass want, const std::string& label) {
    const auto got = slocc_classify(psi);
    o.require(got == want, label + " -> " + std::string(to_string(got)));
  };
  const CVector bell = families::bell_phi_plus().amplitudes();
  expect(families::w_state(), SloccClass::WClass, "W");
  expect(families::ghz_state(), SloccClass::GHZClass, "GHZ");
  expect(QuantumState::pure(kron(basis_ket("0"), bell)), SloccClass::BipartiteA_BC, "A x Bell_BC");
  expect(QuantumState::pure(kron(bell, basis_ket("1"))), SloccClass::BipartiteAB_C, "Bell_AB x C");
  // Bell pair on A and C, B in |0>.
  const CVector bell_ac = (basis_ket("000") + basis_ket("101")) / std::numbers::sqrt2;
  expect(QuantumState::pure(bell_ac), SloccClass::BipartiteAC_B, "Bell_AC x B");
  expect(QuantumState::pure(basis_ket("011")), SloccClass::FullyProduct, "product");
  double worst = 0.0;
  for (double theta : open_grid(0.0, std::numbers::pi / 2.0, 20)) {
    const auto psi = families::max_volume(theta);
    expect(psi, SloccClass::WClass, "MaxVolume(" + fmt(theta) + ")");
    const double dev = std::abs(volume_monogamy_report(psi, 0).sqrt_lhs - 1.0);
    worst = std::max(worst, dev);
    o.require(dev < 1e-8, "MaxVolume(" + fmt(theta) + ") lhs deviates by " + fmt(dev));
  }
  if (o.ok) o.detail = "max saturation deviation = " + fmt(worst);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "counterexample reproduction", 1.0, counterexample_reproduction},
      {2, "Werner ellipsoid is a sphere of radius 2/3", 1.0, werner_sphere},
      {3, "W-family saturation", 5.0, w_family_saturation},
      {4, "GHZ-family (x, y) mapping", 30.0, ghz_family_mapping},
      {5, "noisy W-family curves", 60.0, noisy_w_regeneration},
      {6, "4-qubit correlation conjecture, 1e5 samples", 600.0, conjecture_evidence},
      {7, "property suite", 600.0, property_suite},
      {8, "noise monotonicity", 300.0, noise_monotonicity},
      {9, "separable-volume bound", 120.0, separable_bound},
      {10, "SLOCC classification", 60.0, slocc_classification},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.budget_seconds) {
      o.ok = false;
      o.detail = "over budget";
    }
    failures += o.ok ? 0 : 1;
    std::printf("%s criterion %2d: %s (%.2fs / %.0fs) - %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
