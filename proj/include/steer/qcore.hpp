#pragma once

#include <algorithm>
#include <concepts>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "steer/common.hpp"
#include "steer/rng.hpp"

namespace steer {

// Returns a description of the first violated density-matrix invariant, or
// nothing when `rho` is a valid state on `n_qubits` qubits.
inline std::optional<std::string> density_matrix_defect(const CMatrix& rho, int n_qubits,
                                                        double tol = kValidationTol) {
  const auto dim = static_cast<Eigen::Index>(detail::pow2(n_qubits));
  if (rho.rows() != dim || rho.cols() != dim) {
    std::ostringstream os;
    os << "dimension: expected " << dim << "x" << dim << ", got " << rho.rows() << "x" << rho.cols();
    return os.str();
  }
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    std::ostringstream os;
    os << "hermiticity: max |rho - rho^dagger| = " << herm;
    return os.str();
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > tol) {
    std::ostringstream os;
    os << "trace: expected 1, got " << tr.real();
    return os.str();
  }
  const CMatrix sym = 0.5 * (rho + rho.adjoint());
  const double min_eig = Eigen::SelfAdjointEigenSolver<CMatrix>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (min_eig < -tol) {
    std::ostringstream os;
    os << "positivity: min eigenvalue " << min_eig;
    return os.str();
  }
  return std::nullopt;
}

// A state of n qubits, stored as a density matrix. States built from an
// amplitude vector also keep the vector.
//
// Qubit 0 is the leftmost tensor factor; basis index bits are big-endian, so
// |abc> has index 4a + 2b + c.
class QuantumState {
 public:
  enum class Kind { Pure, Mixed };

  static QuantumState pure(CVector amplitudes, double tol = kValidationTol) {
    const auto n = qubits_for(amplitudes.size());
    const double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol) {
      std::ostringstream os;
      os << "normalization: squared norm " << norm2 << " differs from 1";
      throw ValidationError(os.str());
    }
    return QuantumState(n, std::move(amplitudes));
  }

  static QuantumState mixed(CMatrix rho, double tol = kValidationTol) {
    detail::require(rho.rows() == rho.cols(), "dimension: density matrix must be square");
    const auto n = qubits_for(rho.rows());
    if (auto defect = density_matrix_defect(rho, n, tol)) throw ValidationError(*defect);
    return QuantumState(n, std::move(rho));
  }

  // Skips validation; for results of operations that preserve validity.
  static QuantumState trusted(CMatrix rho) {
    const auto n = qubits_for(rho.rows());
    return QuantumState(n, std::move(rho));
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return rho_.rows(); }
  Kind kind() const { return amplitudes_ ? Kind::Pure : Kind::Mixed; }
  const CMatrix& matrix() const { return rho_; }

  const CVector& amplitudes() const {
    if (!amplitudes_) throw ValidationError("representation: state has no amplitude vector");
    return *amplitudes_;
  }

 private:
  QuantumState(int n, CVector amps)
      : n_qubits_(n), rho_(amps * amps.adjoint()), amplitudes_(std::move(amps)) {}
  QuantumState(int n, CMatrix rho) : n_qubits_(n), rho_(std::move(rho)) {}

  static int qubits_for(Eigen::Index dim) {
    int n = 0;
    while (Eigen::Index{1} << n < dim) ++n;
    if (dim < 2 || (Eigen::Index{1} << n) != dim) {
      throw ValidationError("dimension: " + std::to_string(dim) + " is not a power of two >= 2");
    }
    return n;
  }

  int n_qubits_;
  CMatrix rho_;
  std::optional<CVector> amplitudes_;
};

// Bloch vectors of both qubits and their correlation matrix:
// rho = (1x1 + a.sigma x 1 + 1 x b.sigma + sum_jk T_jk sigma_j x sigma_k) / 4.
struct PauliDecomposition {
  Vec3 a = Vec3::Zero();
  Vec3 b = Vec3::Zero();
  Mat3 T = Mat3::Zero();
};

// One outcome E = e0 (1 + e.sigma) of a POVM.
struct PovmElement {
  double e0 = 1.0;
  Vec3 e = Vec3::Zero();

  static PovmElement make(double e0, const Vec3& e) {
    detail::require(e0 >= 0.0, "POVM element: e0 must be nonnegative");
    detail::require(e.norm() <= 1.0 + kValidationTol, "POVM element: |e| must be at most 1");
    return {e0, e};
  }
};

namespace pauli {

inline Mat2c identity() { return Mat2c::Identity(); }
inline Mat2c x() {
  Mat2c m;
  m << 0, 1, 1, 0;
  return m;
}
inline Mat2c y() {
  Mat2c m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline Mat2c z() {
  Mat2c m;
  m << 1, 0, 0, -1;
  return m;
}
// 0 -> identity, 1..3 -> sigma_x, sigma_y, sigma_z.
inline Mat2c by_label(int label) {
  switch (label) {
    case 0: return identity();
    case 1: return x();
    case 2: return y();
    case 3: return z();
    default: throw ValidationError("Pauli label must be in {0,1,2,3}");
  }
}

}  // namespace pauli

// Kronecker product; two column vectors give a column vector.
template <class Lhs, class Rhs>
auto kron(const Eigen::MatrixBase<Lhs>& lhs, const Eigen::MatrixBase<Rhs>& rhs) {
  if constexpr (Lhs::ColsAtCompileTime == 1 && Rhs::ColsAtCompileTime == 1) {
    return CVector(Eigen::kroneckerProduct(CVector(lhs), CVector(rhs)));
  } else {
    return CMatrix(Eigen::kroneckerProduct(CMatrix(lhs), CMatrix(rhs)));
  }
}

// Computational basis ket |bits> on bits.size() qubits, e.g. basis_ket("010").
inline CVector basis_ket(const std::string& bits) {
  detail::require(!bits.empty(), "basis ket needs at least one qubit");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(detail::pow2(static_cast<int>(bits.size()))));
  std::size_t idx = 0;
  for (char c : bits) {
    detail::require(c == '0' || c == '1', "basis ket label must be binary");
    idx = (idx << 1) | static_cast<std::size_t>(c - '0');
  }
  v(static_cast<Eigen::Index>(idx)) = 1.0;
  return v;
}

inline QuantumState ket_to_density(const QuantumState& psi) {
  detail::require(psi.kind() == QuantumState::Kind::Pure, "ket_to_density needs an amplitude vector");
  return QuantumState::trusted(psi.matrix());
}

// Single-qubit density matrix (1 + r.sigma)/2.
inline CMatrix qubit_density(const Vec3& r) {
  return 0.5 * (pauli::identity() + r.x() * pauli::x() + r.y() * pauli::y() + r.z() * pauli::z());
}

// Reduced state on `keep`, with the kept qubits ordered as listed.
inline QuantumState partial_trace(const QuantumState& state, std::span<const int> keep) {
  const int n = state.n_qubits();
  detail::require(!keep.empty(), "partial_trace: keep list is empty");
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int q : keep) {
    detail::require(q >= 0 && q < n, "partial_trace: qubit index out of range");
    detail::require(!kept[static_cast<std::size_t>(q)], "partial_trace: duplicate qubit index");
    kept[static_cast<std::size_t>(q)] = true;
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!kept[static_cast<std::size_t>(q)]) traced.push_back(q);
  }

  const int k = static_cast<int>(keep.size());
  const std::size_t out_dim = detail::pow2(k);
  const std::size_t env_dim = detail::pow2(static_cast<int>(traced.size()));

  // Full-register offsets of every kept-subsystem and traced-subsystem index.
  auto offsets = [n](std::span<const int> qubits) {
    const int m = static_cast<int>(qubits.size());
    std::vector<std::size_t> out(detail::pow2(m), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (int j = 0; j < m; ++j) {
        if (i & detail::qubit_bit(m, j)) out[i] |= detail::qubit_bit(n, qubits[static_cast<std::size_t>(j)]);
      }
    }
    return out;
  };
  const auto keep_off = offsets(keep);
  const auto env_off = offsets(traced);

  const CMatrix& rho = state.matrix();
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(out_dim));
  for (std::size_t i = 0; i < out_dim; ++i) {
    for (std::size_t j = 0; j < out_dim; ++j) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < env_dim; ++t) {
        acc += rho(static_cast<Eigen::Index>(keep_off[i] | env_off[t]),
                   static_cast<Eigen::Index>(keep_off[j] | env_off[t]));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  return QuantumState::trusted(std::move(out));
}

inline QuantumState partial_trace(const QuantumState& state, std::initializer_list<int> keep) {
  return partial_trace(state, std::span<const int>(keep.begin(), keep.size()));
}

// Tr[rho (P_{l0} x P_{l1} x ...)], evaluated without forming the Pauli string.
inline double pauli_coefficient(const QuantumState& state, std::span<const int> labels) {
  const int n = state.n_qubits();
  detail::require(static_cast<int>(labels.size()) == n, "pauli_coefficient: need one label per qubit");
  std::size_t flip = 0;
  for (int q = 0; q < n; ++q) {
    const int l = labels[static_cast<std::size_t>(q)];
    detail::require(l >= 0 && l <= 3, "pauli_coefficient: label out of range");
    if (l == 1 || l == 2) flip |= detail::qubit_bit(n, q);
  }
  const CMatrix& rho = state.matrix();
  Complex acc = 0.0;
  const std::size_t dim = detail::pow2(n);
  for (std::size_t x = 0; x < dim; ++x) {
    // Phase picked up by |x> under the Pauli string: Y|0> = i|1>, Y|1> = -i|0>, Z|1> = -|1>.
    Complex phase = 1.0;
    for (int q = 0; q < n; ++q) {
      const bool bit = (x & detail::qubit_bit(n, q)) != 0;
      switch (labels[static_cast<std::size_t>(q)]) {
        case 2: phase *= bit ? Complex(0, -1) : Complex(0, 1); break;
        case 3: if (bit) phase = -phase; break;
        default: break;
      }
    }
    acc += rho(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x ^ flip)) * phase;
  }
  return acc.real();
}

inline double pauli_coefficient(const QuantumState& state, std::initializer_list<int> labels) {
  return pauli_coefficient(state, std::span<const int>(labels.begin(), labels.size()));
}

inline Vec3 bloch_vector(const QuantumState& state) {
  detail::require(state.n_qubits() == 1, "bloch_vector: expected a single-qubit state");
  return {pauli_coefficient(state, {1}), pauli_coefficient(state, {2}), pauli_coefficient(state, {3})};
}

inline Mat3 spin_correlation_matrix(const QuantumState& state) {
  detail::require(state.n_qubits() == 2, "spin_correlation_matrix: expected a two-qubit state");
  Mat3 t;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) t(j, k) = pauli_coefficient(state, {j + 1, k + 1});
  }
  return t;
}

inline PauliDecomposition pauli_decomposition(const QuantumState& state) {
  detail::require(state.n_qubits() == 2, "pauli_decomposition: expected a two-qubit state");
  PauliDecomposition d;
  for (int j = 0; j < 3; ++j) {
    d.a(j) = pauli_coefficient(state, {j + 1, 0});
    d.b(j) = pauli_coefficient(state, {0, j + 1});
  }
  d.T = spin_correlation_matrix(state);
  return d;
}

inline CMatrix reconstruct(const PauliDecomposition& d) {
  CMatrix rho = kron(pauli::identity(), pauli::identity());
  for (int j = 0; j < 3; ++j) {
    const CMatrix s = pauli::by_label(j + 1);
    rho += d.a(j) * kron(s, pauli::identity()) + d.b(j) * kron(pauli::identity(), s);
    for (int k = 0; k < 3; ++k) rho += d.T(j, k) * kron(s, pauli::by_label(k + 1));
  }
  return 0.25 * rho;
}

inline double purity(const QuantumState& state) {
  // Tr[rho^2] = sum |rho_ij|^2 for Hermitian rho.
  return state.matrix().squaredNorm();
}

// Pure state within `tol`, whichever representation it carries.
inline bool is_pure(const QuantumState& state, double tol = kValidationTol) {
  return state.kind() == QuantumState::Kind::Pure || std::abs(purity(state) - 1.0) <= tol;
}

inline void require_pure(const QuantumState& state, const char* op) {
  if (!is_pure(state)) throw ValidationError(std::string(op) + ": expected a pure state");
}

inline void require_qubits(const QuantumState& state, int n, const char* op) {
  if (state.n_qubits() != n) {
    throw ValidationError(std::string(op) + ": expected " + std::to_string(n) + " qubits, got " +
                          std::to_string(state.n_qubits()));
  }
}

// I.i.d. standard complex Gaussian entries.
template <std::uniform_random_bit_generator Rng>
CVector gaussian_vector(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal;
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

// Haar-random pure state: a normalized complex Gaussian vector.
template <std::uniform_random_bit_generator Rng>
QuantumState random_pure_state(int n_qubits, Rng& rng) {
  detail::require(n_qubits >= 1, "random_pure_state: need at least one qubit");
  CVector v = gaussian_vector(static_cast<Eigen::Index>(detail::pow2(n_qubits)), rng);
  v.normalize();
  return QuantumState::pure(std::move(v));
}

inline QuantumState random_pure_state(int n_qubits, std::uint64_t seed) {
  auto rng = seeded_engine(seed);
  return random_pure_state(n_qubits, rng);
}

// Induced-measure mixed state: a Haar-random pure state on n + ancilla qubits
// with the ancilla traced out.
template <std::uniform_random_bit_generator Rng>
QuantumState random_mixed_state(int n_qubits, int ancilla_qubits, Rng& rng) {
  detail::require(n_qubits >= 1, "random_mixed_state: need at least one qubit");
  detail::require(ancilla_qubits >= 0, "random_mixed_state: ancilla count must be nonnegative");
  const auto sys = static_cast<Eigen::Index>(detail::pow2(n_qubits));
  const auto env = static_cast<Eigen::Index>(detail::pow2(ancilla_qubits));
  CVector joint = gaussian_vector(sys * env, rng);
  joint.normalize();
  // System qubits are the leading bits, so row s of the reshaped vector holds
  // the amplitudes <s, e|psi> and the reduced state is M M^dagger.
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(joint.data(), sys,
                                                                                                    env);
  CMatrix rho = m * m.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return QuantumState::trusted(std::move(rho));
}

inline QuantumState random_mixed_state(int n_qubits, int ancilla_qubits, std::uint64_t seed) {
  auto rng = seeded_engine(seed);
  return random_mixed_state(n_qubits, ancilla_qubits, rng);
}

// Haar-random single-qubit pure Bloch vector (uniform on the sphere).
template <std::uniform_random_bit_generator Rng>
Vec3 random_unit_vector(Rng& rng) {
  std::normal_distribution<double> normal;
  Vec3 v;
  do {
    v = Vec3(normal(rng), normal(rng), normal(rng));
  } while (v.norm() < 1e-12);
  return v.normalized();
}

}  // namespace steer
