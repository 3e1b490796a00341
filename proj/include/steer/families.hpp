#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "steer/qcore.hpp"

namespace steer::families {

inline QuantumState bell_phi_plus() {
  return QuantumState::pure((basis_ket("00") + basis_ket("11")) / std::numbers::sqrt2);
}

// (|01> - |10>)/sqrt(2)
inline QuantumState singlet() {
  return QuantumState::pure((basis_ket("01") - basis_ket("10")) / std::numbers::sqrt2);
}

// weight * |singlet><singlet| + (1 - weight) * 1/4.
inline QuantumState werner(double weight) {
  detail::require(weight >= 0.0 && weight <= 1.0, "werner: weight outside [0,1]");
  const CMatrix rho = weight * singlet().matrix() +
                      (1.0 - weight) * 0.25 * CMatrix::Identity(4, 4);
  return QuantumState::trusted(rho);
}

// (|100> + |010> + |001>)/sqrt(3)
inline QuantumState w_state() {
  return QuantumState::pure((basis_ket("100") + basis_ket("010") + basis_ket("001")) / std::sqrt(3.0));
}

inline QuantumState ghz_state(int n_qubits = 3) {
  detail::require(n_qubits >= 2, "ghz_state: need at least two qubits");
  return QuantumState::pure((basis_ket(std::string(static_cast<std::size_t>(n_qubits), '0')) +
                             basis_ket(std::string(static_cast<std::size_t>(n_qubits), '1'))) /
                            std::numbers::sqrt2);
}

// p|100> + sqrt((1-p^2)/2) (|010> + |001>), p in (0,1). W-class for every p.
inline QuantumState w_family(double p) {
  detail::require(p > 0.0 && p < 1.0, "w_family: p must lie in (0,1)");
  const double s = std::sqrt((1.0 - p * p) / 2.0);
  return QuantumState::pure(p * basis_ket("100") + s * basis_ket("010") + s * basis_ket("001"));
}

struct GhzFamilyState {
  QuantumState state;
  double predicted_x;  // v_{B|A}
  double predicted_y;  // v_{C|A}
};

// Canonical GHZ-class states
// (sin a |100> + sin b |010> + cos b |001> + cos a |111>)/sqrt(2), a, b in (0, pi/2),
// whose volumes sweep the whole region under the saturating curve.
inline GhzFamilyState ghz_family(double alpha, double beta) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  detail::require(alpha > 0.0 && alpha < half_pi, "ghz_family: alpha must lie in (0, pi/2)");
  detail::require(beta > 0.0 && beta < half_pi, "ghz_family: beta must lie in (0, pi/2)");
  const CVector psi = (std::sin(alpha) * basis_ket("100") + std::sin(beta) * basis_ket("010") +
                       std::cos(beta) * basis_ket("001") + std::cos(alpha) * basis_ket("111")) /
                      std::numbers::sqrt2;
  const double ca = std::cos(2.0 * alpha);
  const double cb = std::cos(2.0 * beta);
  return {QuantumState::pure(psi), 0.25 * (ca + cb) * (ca + cb), 0.25 * (ca - cb) * (ca - cb)};
}

// Canonical maximum-volume state (|100> + cos t |010> + sin t |001>)/sqrt(2),
// t in [0, pi/2]; saturates sqrt(v_B|A) + sqrt(v_C|A) = 1.
inline QuantumState max_volume(double theta) {
  detail::require(theta >= 0.0 && theta <= std::numbers::pi / 2.0, "max_volume: theta must lie in [0, pi/2]");
  return QuantumState::pure((basis_ket("100") + std::cos(theta) * basis_ket("010") +
                             std::sin(theta) * basis_ket("001")) /
                            std::numbers::sqrt2);
}

namespace components {
inline CVector chi1() {
  return (basis_ket("101") - 2.0 * basis_ket("011") + basis_ket("110")) / std::sqrt(6.0);
}
inline CVector chi2() {
  return (basis_ket("010") - 2.0 * basis_ket("100") + basis_ket("001")) / std::sqrt(6.0);
}
}  // namespace components

// Equal mixture of chi1 and chi2. Both two-qubit marginals through A are the
// Werner state with weight 2/3, so sqrt(v_B|A) + sqrt(v_C|A) > 1.
inline QuantumState counterexample() {
  const CVector c1 = components::chi1();
  const CVector c2 = components::chi2();
  return QuantumState::trusted(0.5 * (c1 * c1.adjoint() + c2 * c2.adjoint()));
}

// (|chi1>|0>_D + |chi2>|1>_D)/sqrt(2)
inline QuantumState purified_counterexample() {
  return QuantumState::pure((kron(components::chi1(), basis_ket("0")) + kron(components::chi2(), basis_ket("1"))) /
                            std::numbers::sqrt2);
}

struct WState {};
struct GhzState {};
struct WFamily { double p; };
struct GhzFamily { double alpha; double beta; };
struct MaxVolume { double theta; };
struct Counterexample {};
struct PurifiedCounterexample {};

using FamilySpec =
    std::variant<WState, GhzState, WFamily, GhzFamily, MaxVolume, Counterexample, PurifiedCounterexample>;

inline QuantumState family_state(const FamilySpec& spec) {
  struct Visitor {
    QuantumState operator()(WState) const { return w_state(); }
    QuantumState operator()(GhzState) const { return ghz_state(); }
    QuantumState operator()(WFamily s) const { return w_family(s.p); }
    QuantumState operator()(GhzFamily s) const { return ghz_family(s.alpha, s.beta).state; }
    QuantumState operator()(MaxVolume s) const { return max_volume(s.theta); }
    QuantumState operator()(Counterexample) const { return counterexample(); }
    QuantumState operator()(PurifiedCounterexample) const { return purified_counterexample(); }
  };
  return std::visit(Visitor{}, spec);
}

}  // namespace steer::families
