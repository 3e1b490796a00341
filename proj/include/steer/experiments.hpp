#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "steer/channels.hpp"
#include "steer/ellipsoid.hpp"
#include "steer/families.hpp"
#include "steer/monogamy.hpp"
#include "steer/qcore.hpp"
#include "steer/rng.hpp"

namespace steer {

// Evaluates fn(i) for i in [0, count) on `workers` threads and returns the
// results in index order. fn must not touch shared mutable state.
template <class Fn>
auto parallel_map(std::size_t count, int workers, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> out(count);
  const auto n_threads = static_cast<std::size_t>(std::max(1, workers));
  if (n_threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t w = 0; w < n_threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += n_threads) out[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

// `steps` evenly spaced interior points of (lo, hi).
inline std::vector<double> open_grid(double lo, double hi, int steps) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  for (int i = 0; i < steps; ++i) out.push_back(lo + (hi - lo) * (i + 1) / (steps + 1));
  return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo scans of open conjectures

struct ConjectureResult {
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;  // lhs > bound + tol
  double max_lhs = -std::numeric_limits<double>::infinity();
  std::uint64_t worst_state_seed = 0;  // stream index of the sample attaining max_lhs
  double bound = 3.0;
  // Samples with lhs > bound - near_miss_window, by stream index.
  std::vector<std::pair<std::uint64_t, double>> near_misses;
};

inline constexpr double kNearMissWindow = 1e-3;
inline constexpr std::uint32_t kConjectureFamily = 0xC0;
inline constexpr std::uint32_t kMixedFourQubitFamily = 0xC1;

namespace detail {

inline ConjectureResult summarize_scan(const std::vector<double>& lhs, double bound, double tol) {
  ConjectureResult r;
  r.samples = lhs.size();
  r.bound = bound;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] > bound + tol) ++r.violations;
    if (lhs[i] > r.max_lhs) {
      r.max_lhs = lhs[i];
      r.worst_state_seed = i;
    }
    if (lhs[i] > bound - kNearMissWindow) r.near_misses.emplace_back(i, lhs[i]);
  }
  return r;
}

}  // namespace detail

// Tr[T_AB T_AB^T] + Tr[T_AC T_AC^T] + Tr[T_AD T_AD^T] of a 4-qubit state.
inline double conjecture_lhs(const QuantumState& rho) {
  return pairwise_correlation_sum(rho, {{0, 1}, {0, 2}, {0, 3}});
}

// The state drawn for sample `index` of a conjecture scan.
inline QuantumState conjecture_sample(std::uint64_t master_seed, std::uint64_t index) {
  auto rng = stream_engine(master_seed, index, kConjectureFamily);
  return random_pure_state(4, rng);
}

// Haar-random pure 4-qubit states against conjecture_lhs <= 3.
inline ConjectureResult run_conjecture_test(std::uint64_t n_samples, std::uint64_t master_seed, int workers = 1,
                                            double tol = 1e-9) {
  const auto lhs = parallel_map(n_samples, workers, [master_seed](std::size_t i) {
    return conjecture_lhs(conjecture_sample(master_seed, i));
  });
  return detail::summarize_scan(lhs, 3.0, tol);
}

// Exploratory: induced-measure mixed 4-qubit states against
// sum_X v_{X|A}^{2/3} <= 1. Violations are logged, not treated as failures.
inline ConjectureResult run_mixed_four_qubit_scan(std::uint64_t n_samples, std::uint64_t master_seed,
                                                  int workers = 1, double tol = 1e-9) {
  const auto lhs = parallel_map(n_samples, workers, [master_seed](std::size_t i) {
    auto rng = stream_engine(master_seed, i, kMixedFourQubitFamily);
    return volume_monogamy_report(random_mixed_state(4, 4, rng), 0).two_thirds_lhs;
  });
  return detail::summarize_scan(lhs, 1.0, tol);
}

// ---------------------------------------------------------------------------
// Figure sweeps

struct GhzSweepRow {
  double alpha = 0.0;
  double beta = 0.0;
  double v_ba = 0.0;
  double v_ca = 0.0;
  double predicted_x = 0.0;
  double predicted_y = 0.0;
  double residual_x = 0.0;
  double residual_y = 0.0;
  double sqrt_lhs = 0.0;  // sqrt(v_ba) + sqrt(v_ca)

  static std::vector<std::string> columns() {
    return {"alpha", "beta", "v_ba", "v_ca", "predicted_x", "predicted_y", "residual_x", "residual_y", "sqrt_lhs"};
  }
  std::vector<double> values() const {
    return {alpha, beta, v_ba, v_ca, predicted_x, predicted_y, residual_x, residual_y, sqrt_lhs};
  }
};

inline GhzSweepRow ghz_sweep_row(double alpha, double beta) {
  const auto fam = families::ghz_family(alpha, beta);
  GhzSweepRow row;
  row.alpha = alpha;
  row.beta = beta;
  const auto report = volume_monogamy_report(fam.state, 0);
  row.v_ba = report.volumes[0];
  row.v_ca = report.volumes[1];
  row.predicted_x = fam.predicted_x;
  row.predicted_y = fam.predicted_y;
  row.residual_x = std::abs(row.v_ba - row.predicted_x);
  row.residual_y = std::abs(row.v_ca - row.predicted_y);
  row.sqrt_lhs = report.sqrt_lhs;
  return row;
}

// GHZ family over a grid_steps x grid_steps interior grid of (0, pi/2)^2.
inline std::vector<GhzSweepRow> sweep_ghz_region(int grid_steps) {
  detail::require(grid_steps >= 2, "sweep_ghz_region: grid_steps must be at least 2");
  const auto grid = open_grid(0.0, std::numbers::pi / 2.0, grid_steps);
  std::vector<GhzSweepRow> rows;
  rows.reserve(grid.size() * grid.size());
  for (double alpha : grid) {
    for (double beta : grid) rows.push_back(ghz_sweep_row(alpha, beta));
  }
  return rows;
}

struct NoisyWSweepRow {
  double p = 0.0;
  double epsilon = 0.0;
  double v_closed = 0.0;  // closed form
  double v_ba = 0.0;      // numeric
  double v_ca = 0.0;      // numeric
  double lhs_closed = 0.0;   // 2 sqrt(v_closed)
  double lhs_numeric = 0.0;  // sqrt(v_ba) + sqrt(v_ca)
  double residual = 0.0;     // max(|v_ba - v_closed|, |v_ca - v_closed|)

  static std::vector<std::string> columns() {
    return {"p", "epsilon", "v_closed", "v_ba", "v_ca", "lhs_closed", "lhs_numeric", "residual"};
  }
  std::vector<double> values() const { return {p, epsilon, v_closed, v_ba, v_ca, lhs_closed, lhs_numeric, residual}; }
};

inline NoisyWSweepRow noisy_w_row(double p, double epsilon) {
  NoisyWSweepRow row;
  row.p = p;
  row.epsilon = epsilon;
  row.v_closed = noisy_w_volume(p, epsilon);
  const QuantumState noisy = apply_uniform(isotropic_channel(epsilon), families::w_family(p));
  const auto report = volume_monogamy_report(noisy, 0);
  row.v_ba = report.volumes[0];
  row.v_ca = report.volumes[1];
  row.lhs_closed = 2.0 * std::sqrt(row.v_closed);
  row.lhs_numeric = report.sqrt_lhs;
  row.residual = std::max(std::abs(row.v_ba - row.v_closed), std::abs(row.v_ca - row.v_closed));
  return row;
}

// Rows ordered by epsilon, then p.
inline std::vector<NoisyWSweepRow> sweep_noisy_w(std::span<const double> p_grid, std::span<const double> epsilons) {
  std::vector<NoisyWSweepRow> rows;
  rows.reserve(p_grid.size() * epsilons.size());
  for (double eps : epsilons) {
    for (double p : p_grid) rows.push_back(noisy_w_row(p, eps));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Property suite

struct InvariantResult {
  std::string name;
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;
  // Smallest (allowed - observed) over all samples; negative means a failure.
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

struct SuiteReport {
  std::vector<InvariantResult> invariants;

  bool passed() const {
    return std::all_of(invariants.begin(), invariants.end(), [](const auto& r) { return r.passed(); });
  }
};

struct SuiteOptions {
  std::uint64_t samples = 10000;  // per invariant; the heaviest checks use samples / 10
  std::uint64_t master_seed = 0;
  int workers = 1;
  // Test hook: adds a state with trace 0.9 to the validation invariant.
  bool inject_corrupted_state = false;
};

namespace suite {

// Outcome of one sample: the margin (allowed - observed) and an optional
// explanation when the sample fails for a reason other than its margin.
struct Sample {
  double margin = std::numeric_limits<double>::infinity();
  std::string defect;
};

inline Sample worst(const Sample& lhs, const Sample& rhs) {
  if (!lhs.defect.empty()) return lhs;
  if (!rhs.defect.empty()) return rhs;
  return lhs.margin <= rhs.margin ? lhs : rhs;
}

inline Sample upper(double observed, double bound) { return {bound - observed, {}}; }
inline Sample equal(double observed, double expected, double tol) { return {tol - std::abs(observed - expected), {}}; }

using Check = std::function<Sample(Engine&)>;

inline InvariantResult run_check(const std::string& name, std::uint32_t family, std::uint64_t samples,
                                 const SuiteOptions& opts, const Check& check) {
  const auto outcomes = parallel_map(samples, opts.workers, [&](std::size_t i) {
    auto rng = stream_engine(opts.master_seed, i, family);
    try {
      return check(rng);
    } catch (const std::exception& e) {
      return Sample{-std::numeric_limits<double>::infinity(), e.what()};
    }
  });
  InvariantResult r;
  r.name = name;
  r.samples = samples;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& s = outcomes[i];
    const bool failed = !s.defect.empty() || !(s.margin >= 0.0);
    if (failed) {
      if (r.failures == 0) {
        r.first_failure = "sample " + std::to_string(i) + ": " +
                          (s.defect.empty() ? "margin " + std::to_string(s.margin) : s.defect);
      }
      ++r.failures;
    }
    r.worst_margin = std::min(r.worst_margin, s.margin);
  }
  return r;
}

// Haar-random single-qubit unitary.
inline Mat2c random_qubit_unitary(Engine& rng) {
  Mat2c g;
  g.col(0) = gaussian_vector(2, rng);
  g.col(1) = gaussian_vector(2, rng);
  const Eigen::HouseholderQR<Mat2c> qr(g);
  Mat2c q = qr.householderQ();
  const Mat2c r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so that Q is Haar distributed.
  for (int i = 0; i < 2; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

inline QuantumState random_local_unitary_orbit(const QuantumState& psi, Engine& rng) {
  CMatrix u = random_qubit_unitary(rng);
  for (int q = 1; q < psi.n_qubits(); ++q) u = kron(u, CMatrix(random_qubit_unitary(rng)));
  return QuantumState::pure(u * psi.amplitudes());
}

// Convex mixture of 1..4 product states of two random pure qubits.
inline QuantumState random_separable_state(Engine& rng) {
  std::uniform_int_distribution<int> count(1, 4);
  std::exponential_distribution<double> weight(1.0);
  const int k = count(rng);
  CMatrix rho = CMatrix::Zero(4, 4);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    const double w = weight(rng);
    const Vec3 a = random_unit_vector(rng);
    const Vec3 b = random_unit_vector(rng);
    rho += w * kron(qubit_density(a), qubit_density(b));
    total += w;
  }
  return QuantumState::trusted(rho / total);
}

inline double max_abs_entry(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double min_eigenvalue(const CMatrix& m) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

}  // namespace suite

// Runs every randomized invariant of the library over fresh ensembles, plus
// the fixed regression checks.
inline SuiteReport run_property_suite(const SuiteOptions& opts) {
  using suite::equal;
  using suite::Sample;
  using suite::upper;
  using suite::worst;

  const std::uint64_t full = opts.samples;
  const std::uint64_t tenth = std::max<std::uint64_t>(opts.samples / 10, opts.samples > 0 ? 1 : 0);
  SuiteReport report;
  std::uint32_t family = 1;
  auto add = [&](const std::string& name, std::uint64_t samples, const suite::Check& check) {
    report.invariants.push_back(suite::run_check(name, family++, samples, opts, check));
  };

  // qcore
  add("qcore.pauli_roundtrip", full, [](Engine& rng) {
    const auto rho = random_mixed_state(2, 2, rng);
    return equal(suite::max_abs_entry(reconstruct(pauli_decomposition(rho)) - rho.matrix()), 0.0, 1e-10);
  });
  add("qcore.partial_trace_composition", full, [](Engine& rng) {
    const auto rho = random_mixed_state(3, 3, rng);
    const CMatrix stepwise = partial_trace(partial_trace(rho, {0, 1}), {0}).matrix();
    return equal(suite::max_abs_entry(stepwise - partial_trace(rho, {0}).matrix()), 0.0, 1e-12);
  });
  add("qcore.bipartition_purity", full, [](Engine& rng) {
    const auto psi = random_pure_state(3, rng);
    return equal(purity(partial_trace(psi, {0, 1})), purity(partial_trace(psi, {2})), 1e-10);
  });
  const bool inject = opts.inject_corrupted_state;
  add("qcore.state_validity", full, [inject](Engine& rng) {
    std::vector<CMatrix> states;
    states.push_back(random_pure_state(3, rng).matrix());
    states.push_back(random_mixed_state(2, 2, rng).matrix());
    states.push_back(random_mixed_state(3, 3, rng).matrix());
    if (inject) {
      CMatrix bad = random_mixed_state(2, 2, rng).matrix();
      states.push_back(0.9 * bad);
    }
    for (const auto& m : states) {
      const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(m.rows()))));
      if (auto defect = density_matrix_defect(m, n, kValidationTol)) return Sample{-1.0, *defect};
    }
    return Sample{kValidationTol, {}};
  });

  // ellipsoid
  add("ellipsoid.volume_matches_canonical", full, [](Engine& rng) {
    const auto rho = random_mixed_state(2, 2, rng);
    const double v = normalized_volume(rho);
    const double canonical = std::abs(spin_correlation_matrix(canonical_form(rho, 0)).determinant());
    return equal(v, canonical, 1e-9);
  });
  add("ellipsoid.semiaxes_product", full, [](Engine& rng) {
    const auto ell = steering_ellipsoid(random_mixed_state(2, 2, rng));
    const double eig_min = Eigen::SelfAdjointEigenSolver<Mat3>(ell.orientation).eigenvalues().minCoeff();
    return worst(equal(ell.semiaxes.prod(), ell.normalized_volume, 1e-9), upper(-eig_min, 1e-10));
  });
  add("ellipsoid.bloch_containment", tenth, [](Engine& rng) {
    const auto rho = random_mixed_state(2, 2, rng);
    const auto d = pauli_decomposition(rho);
    const auto ell = steering_ellipsoid(d);
    Sample s;
    for (int k = 0; k < 100; ++k) {
      const Vec3 e = random_unit_vector(rng);
      s = worst(s, upper(steered_point(d, {1.0, e}).norm(), 1.0 + 1e-8));
      s = worst(s, upper(surface_point(ell, e).norm(), 1.0 + 1e-8));
    }
    return s;
  });
  add("ellipsoid.membership", tenth, [](Engine& rng) {
    const auto d = pauli_decomposition(random_mixed_state(2, 2, rng));
    const auto ell = steering_ellipsoid(d);
    Sample s;
    for (int k = 0; k < 100; ++k) {
      const Vec3 e = random_unit_vector(rng);
      s = worst(s, upper(ellipsoid_quadratic_form(ell, steered_point(d, {1.0, e})), 1.0 + 1e-6));
    }
    return s;
  });
  add("ellipsoid.separable_bound", full, [](Engine& rng) {
    return upper(normalized_volume(suite::random_separable_state(rng)), 1.0 / 27.0 + 1e-9);
  });
  add("ellipsoid.volume_range", full, [](Engine& rng) {
    // Alternate between mixed states and pure (generically entangled) ones.
    const bool pure = std::bernoulli_distribution(0.5)(rng);
    const auto rho = pure ? ket_to_density(random_pure_state(2, rng)) : random_mixed_state(2, 2, rng);
    const double v = normalized_volume(rho);
    Sample s = worst(upper(v, 1.0 + 1e-9), upper(-v, 0.0));
    if (v >= 1.0 - 1e-9 && !(concurrence(rho) > 0.0)) s.defect = "unit volume without entanglement";
    return s;
  });

  // monogamy
  add("monogamy.sqrt_pure3", full, [](Engine& rng) {
    return upper(volume_monogamy_report(random_pure_state(3, rng), 0).sqrt_lhs, 1.0 + 1e-9);
  });
  add("monogamy.two_thirds_mixed3", full, [](Engine& rng) {
    return upper(volume_monogamy_report(random_mixed_state(3, 3, rng), 0).two_thirds_lhs, 1.0 + 1e-9);
  });
  add("monogamy.correlation_tradeoff_mixed3", full, [](Engine& rng) {
    const auto pairs = all_pairs(3);
    return upper(pairwise_correlation_sum(random_mixed_state(3, 3, rng), pairs), 3.0 + 1e-9);
  });
  add("monogamy.correlation_identity_pure3", full, [](Engine& rng) {
    const auto pairs = all_pairs(3);
    return equal(pairwise_correlation_sum(random_pure_state(3, rng), pairs), 3.0, 1e-9);
  });
  add("monogamy.two_thirds_pure4", full, [](Engine& rng) {
    return upper(volume_monogamy_report(random_pure_state(4, rng), 0).two_thirds_lhs, 1.0 + 1e-9);
  });
  add("monogamy.n_qubit_mixed5", tenth, [](Engine& rng) {
    const auto r = volume_monogamy_report(random_mixed_state(5, 5, rng), 0);
    return worst(upper(r.two_thirds_lhs, r.n_bound + 1e-9), upper(r.mean_volume, 0.5 + 1e-9));
  });
  add("monogamy.canonical_equalities", full, [](Engine& rng) {
    const auto psi = random_pure_state(3, rng);
    const auto canon = canonical_form(psi, 0);
    const auto r = volume_monogamy_report(psi, 0);
    const double b2 = bloch_vector(partial_trace(canon, {1})).squaredNorm();
    const double c2 = bloch_vector(partial_trace(canon, {2})).squaredNorm();
    return worst(equal(r.volumes[0], c2, 1e-9), equal(r.volumes[1], b2, 1e-9));
  });
  add("monogamy.polygon", full, [](Engine& rng) {
    return upper(-polygon_residual(random_pure_state(3, rng)), 1e-9);
  });
  add("monogamy.concurrence_volume", full, [](Engine& rng) {
    return upper(-concurrence_volume_residual(random_mixed_state(2, 2, rng)), 1e-9);
  });
  add("monogamy.ckw_mixed3", full, [](Engine& rng) {
    return upper(-ckw_residual(random_mixed_state(3, 3, rng)), 1e-9);
  });
  add("monogamy.purity_identities_pure3", full, [](Engine& rng) {
    const auto res = purity_identity_residuals_3q(random_pure_state(3, rng));
    double m = 0.0;
    for (double x : res) m = std::max(m, std::abs(x));
    return equal(m, 0.0, 1e-9);
  });
  add("monogamy.purity_identities_pure4", full, [](Engine& rng) {
    const auto res = purity_identity_residuals_4q(random_pure_state(4, rng));
    double m = 0.0;
    for (double x : res) m = std::max(m, std::abs(x));
    return equal(m, 0.0, 1e-9);
  });
  add("monogamy.tangle_bound", full, [](Engine& rng) {
    const auto psi = random_pure_state(3, rng);
    const double a2 = bloch_vector(partial_trace(psi, {0})).squaredNorm();
    const auto r = volume_monogamy_report(psi, 0);
    return upper((1.0 - a2) * (1.0 - r.sqrt_lhs) - three_tangle(psi), 1e-9);
  });
  add("monogamy.w_orbit_saturation", full, [](Engine& rng) {
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2.0);
    double theta = 0.0;
    while (theta <= 1e-3 || theta >= std::numbers::pi / 2.0 - 1e-3) theta = angle(rng);
    const auto psi = suite::random_local_unitary_orbit(families::max_volume(theta), rng);
    Sample s = equal(volume_monogamy_report(psi, 0).sqrt_lhs, 1.0, 1e-8);
    if (slocc_classify(psi) != SloccClass::WClass) s.defect = "orbit state not classified as WClass";
    return s;
  });

  // channels
  add("channels.trace_and_positivity", full, [](Engine& rng) {
    const auto rho = random_mixed_state(3, 3, rng);
    const std::vector<KrausChannel> chans{random_channel(rng), random_channel(rng), random_channel(rng)};
    const auto out = apply_local(chans, rho);
    return worst(equal(out.matrix().trace().real(), 1.0, 1e-12), upper(-suite::min_eigenvalue(out.matrix()), 1e-9));
  });
  add("channels.volume_monotonicity", full, [](Engine& rng) {
    const auto rho = random_mixed_state(2, 2, rng);
    const auto r = monotonicity_check(rho, random_channel(rng), random_channel(rng));
    return upper(r.volume_after, r.volume_before + 1e-9);
  });
  add("channels.noisy_pure3_monogamy", tenth, [](Engine& rng) {
    const auto psi = random_pure_state(3, rng);
    const std::vector<KrausChannel> chans{random_channel(rng), random_channel(rng), random_channel(rng)};
    return upper(volume_monogamy_report(apply_local(chans, psi), 0).sqrt_lhs, 1.0 + 1e-9);
  });
  {
    // Fixed 20 x 5 (p, eps) grid rather than random draws.
    InvariantResult r;
    r.name = "channels.noisy_w_closed_form";
    for (double e : {0.0, 0.001, 0.01, 0.1, 0.5}) {
      for (double p : open_grid(0.0, 1.0, 20)) {
        const double margin = 1e-9 - noisy_w_row(p, e).residual;
        ++r.samples;
        if (!(margin >= 0.0)) {
          if (r.failures == 0) r.first_failure = "p=" + std::to_string(p) + " eps=" + std::to_string(e);
          ++r.failures;
        }
        r.worst_margin = std::min(r.worst_margin, margin);
      }
    }
    report.invariants.push_back(r);
  }

  // regressions
  {
    InvariantResult r;
    r.name = "regression.counterexample";
    r.samples = 1;
    const auto rep = volume_monogamy_report(families::counterexample(), 0);
    const double exact = 2.0 * std::sqrt(8.0 / 27.0);
    r.worst_margin = std::min({1e-4 - std::abs(rep.sqrt_lhs - 1.08866), 1e-9 - std::abs(rep.sqrt_lhs - exact),
                               1e-9 - std::abs(rep.volumes[0] - 8.0 / 27.0),
                               1e-9 - std::abs(rep.volumes[1] - 8.0 / 27.0)});
    if (r.worst_margin < 0.0) {
      r.failures = 1;
      r.first_failure = "sqrt_lhs = " + std::to_string(rep.sqrt_lhs);
    }
    report.invariants.push_back(r);
  }
  {
    InvariantResult r;
    r.name = "regression.purified_counterexample";
    r.samples = 1;
    const auto rep = volume_monogamy_report(families::purified_counterexample(), 0);
    r.worst_margin = rep.sqrt_lhs - 1.0;
    if (!(rep.sqrt_lhs > 1.0)) {
      r.failures = 1;
      r.first_failure = "sqrt_lhs = " + std::to_string(rep.sqrt_lhs);
    }
    report.invariants.push_back(r);
  }
  return report;
}

}  // namespace steer
