#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace steer {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;

// Absolute tolerance used when validating states and channels.
inline constexpr double kValidationTol = 1e-9;
// Default tolerance for equality checks between computed quantities.
inline constexpr double kEqualityTol = 1e-10;
// 1 - |a|^2 at or below this counts as a pure steering marginal.
inline constexpr double kDegeneracyThreshold = 1e-12;

// Thrown when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Local filtering needs a mixed marginal on the steering qubit.
class DegenerateMarginal : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A POVM element whose outcome has zero probability cannot steer.
class ImpossibleOutcome : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

constexpr std::size_t pow2(int n) { return std::size_t{1} << n; }

// Bit of qubit q inside a basis index; qubit 0 is the most significant.
constexpr std::size_t qubit_bit(int n_qubits, int q) {
  return std::size_t{1} << (n_qubits - 1 - q);
}

}  // namespace detail
}  // namespace steer
