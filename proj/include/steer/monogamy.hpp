#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <utility>
#include <vector>

#include "steer/ellipsoid.hpp"
#include "steer/families.hpp"
#include "steer/qcore.hpp"

namespace steer {

// Volumes of the ellipsoids one hub qubit steers every other qubit to, and
// the left-hand sides of the volume monogamy relations built from them.
struct MonogamyReport {
  int hub = 0;
  std::vector<int> steered;     // qubit index of each entry in `volumes`
  std::vector<double> volumes;  // v_{X|hub}
  double sqrt_lhs = 0.0;        // sum sqrt(v)
  double two_thirds_lhs = 0.0;  // sum v^{2/3}
  double n_bound = 0.0;         // (n - 1) / 2
  double mean_volume = 0.0;
};

inline MonogamyReport volume_monogamy_report(const QuantumState& rho, int hub = 0) {
  const int n = rho.n_qubits();
  detail::require(n >= 3, "volume_monogamy_report: need at least three qubits");
  detail::require(hub >= 0 && hub < n, "volume_monogamy_report: hub index out of range");
  MonogamyReport report;
  report.hub = hub;
  for (int x = 0; x < n; ++x) {
    if (x == hub) continue;
    const double v = normalized_volume(partial_trace(rho, {hub, x}), Steering::BGivenA);
    report.steered.push_back(x);
    report.volumes.push_back(v);
    report.sqrt_lhs += std::sqrt(v);
    report.two_thirds_lhs += std::cbrt(v * v);
    report.mean_volume += v;
  }
  report.mean_volume /= static_cast<double>(n - 1);
  report.n_bound = 0.5 * static_cast<double>(n - 1);
  return report;
}

// Tr[T^T T] of a two-qubit state: the squared strength of its spin correlations.
inline double correlation_strength(const QuantumState& two_qubit) {
  return spin_correlation_matrix(two_qubit).squaredNorm();
}

// Sum of Tr[T^T T] over the reduced states of the given qubit pairs.
inline double pairwise_correlation_sum(const QuantumState& rho, std::span<const std::pair<int, int>> pairs) {
  double acc = 0.0;
  for (const auto& [i, j] : pairs) acc += correlation_strength(partial_trace(rho, {i, j}));
  return acc;
}

inline double pairwise_correlation_sum(const QuantumState& rho,
                                       std::initializer_list<std::pair<int, int>> pairs) {
  return pairwise_correlation_sum(rho, std::span<const std::pair<int, int>>(pairs.begin(), pairs.size()));
}

// Every unordered pair of the n qubits.
inline std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

namespace detail {

inline double bloch_length_sq(const QuantumState& rho, int q) {
  return bloch_vector(partial_trace(rho, {q})).squaredNorm();
}

}  // namespace detail

// Bipartition purity identities of a pure 3-qubit state, as residuals
// {Tr T_AB^T T_AB + a^2 + b^2 - 1 - 2c^2, (AC, b), (BC, a)}.
inline std::array<double, 3> purity_identity_residuals_3q(const QuantumState& psi) {
  require_qubits(psi, 3, "purity_identity_residuals_3q");
  require_pure(psi, "purity_identity_residuals_3q");
  const double a2 = detail::bloch_length_sq(psi, 0);
  const double b2 = detail::bloch_length_sq(psi, 1);
  const double c2 = detail::bloch_length_sq(psi, 2);
  const double t_ab = correlation_strength(partial_trace(psi, {0, 1}));
  const double t_ac = correlation_strength(partial_trace(psi, {0, 2}));
  const double t_bc = correlation_strength(partial_trace(psi, {1, 2}));
  return {t_ab + a2 + b2 - 1.0 - 2.0 * c2, t_ac + a2 + c2 - 1.0 - 2.0 * b2, t_bc + b2 + c2 - 1.0 - 2.0 * a2};
}

// Sum over l,m,n in {x,y,z} of <1 x sigma_l x sigma_m x sigma_n>^2.
inline double l_bcd(const QuantumState& rho) {
  require_qubits(rho, 4, "l_bcd");
  double acc = 0.0;
  for (int l = 1; l <= 3; ++l) {
    for (int m = 1; m <= 3; ++m) {
      for (int k = 1; k <= 3; ++k) {
        const double c = pauli_coefficient(rho, {0, l, m, k});
        acc += c * c;
      }
    }
  }
  return acc;
}

// Residuals of the purity identities of a pure 4-qubit state for the
// bipartitions (AB,CD), (AC,BD), (AD,BC) and (A,BCD).
inline std::array<double, 4> purity_identity_residuals_4q(const QuantumState& psi) {
  require_qubits(psi, 4, "purity_identity_residuals_4q");
  require_pure(psi, "purity_identity_residuals_4q");
  std::array<double, 4> len2{};
  for (int q = 0; q < 4; ++q) len2[static_cast<std::size_t>(q)] = detail::bloch_length_sq(psi, q);
  const auto [a2, b2, c2, d2] = len2;
  auto t = [&psi](int i, int j) { return correlation_strength(partial_trace(psi, {i, j})); };
  const double t_ab = t(0, 1), t_ac = t(0, 2), t_ad = t(0, 3);
  const double t_bc = t(1, 2), t_bd = t(1, 3), t_cd = t(2, 3);
  return {
      a2 + b2 + t_ab - (c2 + d2 + t_cd),
      a2 + c2 + t_ac - (b2 + d2 + t_bd),
      a2 + d2 + t_ad - (b2 + c2 + t_bc),
      b2 + c2 + d2 + t_bc + t_bd + t_cd + l_bcd(psi) - 3.0 - 4.0 * a2,
  };
}

// 1 + a - b - c for the Bloch lengths of a pure 3-qubit state; never negative.
inline double polygon_residual(const QuantumState& psi) {
  require_qubits(psi, 3, "polygon_residual");
  require_pure(psi, "polygon_residual");
  return 1.0 + std::sqrt(detail::bloch_length_sq(psi, 0)) - std::sqrt(detail::bloch_length_sq(psi, 1)) -
         std::sqrt(detail::bloch_length_sq(psi, 2));
}

// Eigenvalues of a two-qubit state below this are rounding noise; they are
// zeroed before taking square roots.
inline constexpr double kSpectrumFloor = 1e-14;

// Wootters concurrence max(0, l1 - l2 - l3 - l4). The l_i are the singular
// values of sqrt(rho) (sy x sy) sqrt(rho)*, which equal the square roots of
// the eigenvalues of sqrt(rho) rho~ sqrt(rho) but keep full precision when
// rho is rank deficient.
inline double concurrence(const QuantumState& rho) {
  require_qubits(rho, 2, "concurrence");
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (rho.matrix() + rho.matrix().adjoint()));
  const Eigen::VectorXd roots =
      eig.eigenvalues().unaryExpr([](double l) { return l > kSpectrumFloor ? std::sqrt(l) : 0.0; });
  const CMatrix sqrt_rho = eig.eigenvectors() * roots.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
  const CMatrix yy = kron(pauli::y(), pauli::y());
  const Eigen::VectorXd lambda = Eigen::JacobiSVD<CMatrix>(sqrt_rho * yy * sqrt_rho.conjugate()).singularValues();
  return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

// (1 - a^2) sqrt(v) - C^2, where a is the steering qubit's Bloch vector.
inline double concurrence_volume_residual(const QuantumState& rho, Steering dir = Steering::BGivenA) {
  require_qubits(rho, 2, "concurrence_volume_residual");
  const PauliDecomposition d = pauli_decomposition(rho);
  const Vec3& steering = dir == Steering::BGivenA ? d.a : d.b;
  const double c = concurrence(rho);
  return (1.0 - steering.squaredNorm()) * std::sqrt(normalized_volume(d, dir)) - c * c;
}

// 4 det rho_A - C^2(rho_AB) - C^2(rho_AC).
inline double ckw_residual(const QuantumState& rho) {
  require_qubits(rho, 3, "ckw_residual");
  const double four_det = 1.0 - detail::bloch_length_sq(rho, 0);
  const double c_ab = concurrence(partial_trace(rho, {0, 1}));
  const double c_ac = concurrence(partial_trace(rho, {0, 2}));
  return four_det - c_ab * c_ab - c_ac * c_ac;
}

inline double three_tangle(const QuantumState& psi) {
  require_qubits(psi, 3, "three_tangle");
  require_pure(psi, "three_tangle");
  return ckw_residual(psi);
}

enum class SloccClass { FullyProduct, BipartiteA_BC, BipartiteAB_C, BipartiteAC_B, WClass, GHZClass };

inline std::string_view to_string(SloccClass c) {
  switch (c) {
    case SloccClass::FullyProduct: return "FullyProduct";
    case SloccClass::BipartiteA_BC: return "Bipartite_A_BC";
    case SloccClass::BipartiteAB_C: return "Bipartite_AB_C";
    case SloccClass::BipartiteAC_B: return "Bipartite_AC_B";
    case SloccClass::WClass: return "WClass";
    case SloccClass::GHZClass: return "GHZClass";
  }
  return "unknown";
}

inline constexpr double kRankThreshold = 1e-9;
inline constexpr double kTangleThreshold = 1e-9;

// Marginal ranks decide the product and bipartite classes; the 3-tangle
// separates W from GHZ.
inline SloccClass slocc_classify(const QuantumState& psi) {
  require_qubits(psi, 3, "slocc_classify");
  require_pure(psi, "slocc_classify");
  std::array<bool, 3> factors{};
  int n_factors = 0;
  for (int q = 0; q < 3; ++q) {
    const CMatrix m = partial_trace(psi, {q}).matrix();
    const double min_eig =
        Eigen::SelfAdjointEigenSolver<CMatrix>(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    factors[static_cast<std::size_t>(q)] = min_eig < kRankThreshold;
    n_factors += factors[static_cast<std::size_t>(q)] ? 1 : 0;
  }
  // Two factoring qubits force the third to factor as well.
  if (n_factors >= 2) return SloccClass::FullyProduct;
  if (n_factors == 1) {
    if (factors[0]) return SloccClass::BipartiteA_BC;
    if (factors[1]) return SloccClass::BipartiteAC_B;
    return SloccClass::BipartiteAB_C;
  }
  return three_tangle(psi) <= kTangleThreshold ? SloccClass::WClass : SloccClass::GHZClass;
}

}  // namespace steer
