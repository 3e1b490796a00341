#pragma once

#include <algorithm>
#include <cmath>

#include "steer/qcore.hpp"

namespace steer {

// Which party steers which. BGivenA: qubit 0 measures, qubit 1 is steered.
enum class Steering { BGivenA, AGivenB };

// The set of Bloch vectors one qubit can be steered to by measurements on the
// other: { c + Q^{1/2} u : |u| <= 1 }.
struct SteeringEllipsoid {
  Vec3 center = Vec3::Zero();
  Mat3 orientation = Mat3::Zero();  // Q; eigenvalues are squared semiaxes
  Vec3 semiaxes = Vec3::Zero();     // descending
  Mat3 axes = Mat3::Identity();     // column i is the direction of semiaxes(i)
  double normalized_volume = 0.0;   // volume / (4 pi / 3)
  bool degenerate = false;          // steering marginal pure: ellipsoid is the point {center}
};

namespace detail {

// Roles swapped so that the returned decomposition always reads "B given A".
inline PauliDecomposition oriented(const PauliDecomposition& d, Steering dir) {
  if (dir == Steering::BGivenA) return d;
  return {d.b, d.a, d.T.transpose()};
}

}  // namespace detail

inline SteeringEllipsoid steering_ellipsoid(const PauliDecomposition& decomp,
                                            Steering dir = Steering::BGivenA) {
  const auto [a, b, T] = detail::oriented(decomp, dir);
  SteeringEllipsoid out;
  const double gap = 1.0 - a.squaredNorm();
  if (gap <= kDegeneracyThreshold) {
    out.center = b;
    out.degenerate = true;
    return out;
  }
  const Mat3 shifted = T - a * b.transpose();
  out.center = (b - T.transpose() * a) / gap;
  const Mat3 metric = Mat3::Identity() + a * a.transpose() / gap;
  Mat3 q = shifted.transpose() * metric * shifted / gap;
  q = 0.5 * (q + q.transpose());
  out.orientation = q;

  Eigen::SelfAdjointEigenSolver<Mat3> eig(q);
  // Eigen returns ascending eigenvalues; report semiaxes descending.
  for (int i = 0; i < 3; ++i) {
    const double lambda = std::max(0.0, eig.eigenvalues()(2 - i));
    out.semiaxes(i) = std::sqrt(lambda);
    out.axes.col(i) = eig.eigenvectors().col(2 - i);
  }
  out.normalized_volume = std::abs(shifted.determinant()) / (gap * gap);
  return out;
}

inline SteeringEllipsoid steering_ellipsoid(const QuantumState& rho,
                                            Steering dir = Steering::BGivenA) {
  require_qubits(rho, 2, "steering_ellipsoid");
  return steering_ellipsoid(pauli_decomposition(rho), dir);
}

// |det(T - a b^T)| / (1 - a^2)^2, and 0 when the steering marginal is pure.
inline double normalized_volume(const PauliDecomposition& decomp, Steering dir = Steering::BGivenA) {
  const auto [a, b, T] = detail::oriented(decomp, dir);
  const double gap = 1.0 - a.squaredNorm();
  if (gap <= kDegeneracyThreshold) return 0.0;
  return std::abs((T - a * b.transpose()).determinant()) / (gap * gap);
}

inline double normalized_volume(const QuantumState& rho, Steering dir = Steering::BGivenA) {
  require_qubits(rho, 2, "normalized_volume");
  return normalized_volume(pauli_decomposition(rho), dir);
}

// Local filtering [(2 rho_q)^{-1/2} on qubit q] rho [(2 rho_q)^{-1/2} on qubit q],
// which leaves qubit q maximally mixed and every ellipsoid steered by q unchanged.
inline QuantumState canonical_form(const QuantumState& rho, int steering_qubit) {
  const int n = rho.n_qubits();
  detail::require(steering_qubit >= 0 && steering_qubit < n, "canonical_form: steering qubit out of range");
  const QuantumState marginal = partial_trace(rho, {steering_qubit});
  const double gap = 1.0 - bloch_vector(marginal).squaredNorm();
  if (gap <= kDegeneracyThreshold) {
    throw DegenerateMarginal("canonical_form: steering qubit marginal is pure (1 - a^2 = " +
                             std::to_string(gap) + ")");
  }
  const CMatrix two_rho = 2.0 * marginal.matrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (two_rho + two_rho.adjoint()));
  Eigen::VectorXd inv_sqrt = eig.eigenvalues();
  for (Eigen::Index i = 0; i < inv_sqrt.size(); ++i) inv_sqrt(i) = 1.0 / std::sqrt(std::max(inv_sqrt(i), 1e-14));
  const CMatrix filter = eig.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();

  const CMatrix left = CMatrix::Identity(static_cast<Eigen::Index>(detail::pow2(steering_qubit)),
                                         static_cast<Eigen::Index>(detail::pow2(steering_qubit)));
  const CMatrix right = CMatrix::Identity(static_cast<Eigen::Index>(detail::pow2(n - 1 - steering_qubit)),
                                          static_cast<Eigen::Index>(detail::pow2(n - 1 - steering_qubit)));
  const CMatrix full = kron(kron(left, filter), right);
  CMatrix out = full * rho.matrix() * full;
  out = 0.5 * (out + out.adjoint());
  return QuantumState::trusted(std::move(out));
}

// Bloch vector of the steered qubit after the outcome E of a measurement on
// the steering qubit: (b + T^T e) / (1 + a.e).
inline Vec3 steered_point(const PauliDecomposition& decomp, const PovmElement& povm,
                          Steering dir = Steering::BGivenA) {
  const auto [a, b, T] = detail::oriented(decomp, dir);
  const double weight = 1.0 + a.dot(povm.e);
  if (weight <= 0.0 || povm.e0 <= 0.0) {
    throw ImpossibleOutcome("steered_point: POVM element has zero probability");
  }
  return (b + T.transpose() * povm.e) / weight;
}

// (x - c)^T Q^{-1} (x - c); at most 1 for points of a non-degenerate ellipsoid.
inline double ellipsoid_quadratic_form(const SteeringEllipsoid& ell, const Vec3& x) {
  const Vec3 local = ell.axes.transpose() * (x - ell.center);
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) acc += local(i) * local(i) / (ell.semiaxes(i) * ell.semiaxes(i));
  return acc;
}

// Point c + Q^{1/2} u on the boundary for unit u.
inline Vec3 surface_point(const SteeringEllipsoid& ell, const Vec3& unit) {
  return ell.center + ell.axes * ell.semiaxes.asDiagonal() * ell.axes.transpose() * unit;
}

}  // namespace steer
