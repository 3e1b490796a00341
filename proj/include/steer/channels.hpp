#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "steer/ellipsoid.hpp"
#include "steer/qcore.hpp"

namespace steer {

inline constexpr double kCompletenessTol = 1e-10;

// Single-qubit CPTP map rho -> sum_i K_i rho K_i^dagger.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Mat2c> operators, double tol = kCompletenessTol)
      : operators_(std::move(operators)) {
    detail::require(!operators_.empty(), "KrausChannel: need at least one Kraus operator");
    const double defect = completeness_defect();
    if (defect > tol) {
      throw ValidationError("KrausChannel: trace preservation violated, max |sum K^dagger K - 1| = " +
                            std::to_string(defect));
    }
  }

  static KrausChannel identity() { return KrausChannel({Mat2c::Identity()}); }

  const std::vector<Mat2c>& operators() const { return operators_; }

  double completeness_defect() const {
    Mat2c sum = Mat2c::Zero();
    for (const auto& k : operators_) sum += k.adjoint() * k;
    return (sum - Mat2c::Identity()).cwiseAbs().maxCoeff();
  }

  Mat2c apply(const Mat2c& rho) const {
    Mat2c out = Mat2c::Zero();
    for (const auto& k : operators_) out += k * rho * k.adjoint();
    return out;
  }

 private:
  std::vector<Mat2c> operators_;
};

// rho -> (eps/2) 1 + (1 - eps) rho, with Kraus operators
// sqrt(1 - 3 eps/4) 1 and sqrt(eps/4) sigma_{x,y,z}.
inline KrausChannel isotropic_channel(double epsilon) {
  detail::require(epsilon >= 0.0 && epsilon <= 1.0, "isotropic_channel: epsilon must lie in [0,1]");
  const double keep = std::sqrt(1.0 - 0.75 * epsilon);
  const double flip = std::sqrt(0.25 * epsilon);
  if (flip == 0.0) return KrausChannel::identity();
  return KrausChannel({keep * pauli::identity(), flip * pauli::x(), flip * pauli::y(), flip * pauli::z()});
}

// Channel with four Kraus operators cut from a Haar-random 8x2 isometry
// (Stinespring dilation with a 4-dimensional environment).
template <std::uniform_random_bit_generator Rng>
KrausChannel random_channel(Rng& rng) {
  Eigen::Matrix<Complex, 8, 2> v;
  v.col(0) = gaussian_vector(8, rng);
  v.col(1) = gaussian_vector(8, rng);
  v.col(0).normalize();
  v.col(1) -= v.col(0) * v.col(0).dot(v.col(1));
  v.col(1).normalize();
  std::vector<Mat2c> ops;
  for (int k = 0; k < 4; ++k) ops.emplace_back(v.template block<2, 2>(2 * k, 0));
  return KrausChannel(std::move(ops));
}

inline KrausChannel random_channel(std::uint64_t seed) {
  auto rng = seeded_engine(seed);
  return random_channel(rng);
}

namespace detail {

// (K on qubit q) * m, acting on the row index.
inline CMatrix left_apply(const Mat2c& k, int n, int q, const CMatrix& m) {
  const std::size_t bit = qubit_bit(n, q);
  CMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto base = static_cast<Eigen::Index>(static_cast<std::size_t>(r) & ~bit);
    const auto partner = static_cast<Eigen::Index>(static_cast<std::size_t>(base) | bit);
    const int row_bit = (static_cast<std::size_t>(r) & bit) ? 1 : 0;
    out.row(r) = k(row_bit, 0) * m.row(base) + k(row_bit, 1) * m.row(partner);
  }
  return out;
}

}  // namespace detail

// Applies channels[q] to qubit q of rho for every q.
inline QuantumState apply_local(std::span<const KrausChannel> channels, const QuantumState& rho) {
  const int n = rho.n_qubits();
  detail::require(static_cast<int>(channels.size()) == n, "apply_local: need one channel per qubit");
  CMatrix current = rho.matrix();
  for (int q = 0; q < n; ++q) {
    const auto& ops = channels[static_cast<std::size_t>(q)].operators();
    CMatrix next = CMatrix::Zero(current.rows(), current.cols());
    for (const auto& k : ops) {
      const CMatrix half = detail::left_apply(k, n, q, current);
      // (K rho K^dagger) = (K (K rho)^dagger)^dagger
      next += detail::left_apply(k, n, q, half.adjoint()).adjoint();
    }
    current = std::move(next);
  }
  return QuantumState::trusted(std::move(current));
}

inline QuantumState apply_local(std::initializer_list<KrausChannel> channels, const QuantumState& rho) {
  return apply_local(std::span<const KrausChannel>(channels.begin(), channels.size()), rho);
}

// Same channel on every qubit.
inline QuantumState apply_uniform(const KrausChannel& channel, const QuantumState& rho) {
  const std::vector<KrausChannel> channels(static_cast<std::size_t>(rho.n_qubits()), channel);
  return apply_local(channels, rho);
}

// Closed-form v'_{B|A} = v'_{C|A} of the W family p|100> + sqrt((1-p^2)/2)(|010> + |001>)
// under isotropic noise of strength eps on all three qubits.
inline double noisy_w_volume(double p, double epsilon) {
  detail::require(p > 0.0 && p < 1.0, "noisy_w_volume: p must lie in (0,1)");
  detail::require(epsilon >= 0.0 && epsilon <= 1.0, "noisy_w_volume: epsilon must lie in [0,1]");
  const double p2 = p * p;
  const double s = 1.0 - epsilon;
  const double s2 = s * s;
  const double tilt = 1.0 - 2.0 * p2;
  const double denom = 1.0 - s2 * tilt * tilt;
  return 4.0 * p2 * p2 * (1.0 - p2) * (1.0 - p2) * s2 * s2 * s2 / (denom * denom);
}

struct MonotonicityResult {
  double volume_before = 0.0;
  double volume_after = 0.0;
  bool ok = false;
};

// Local noise on both qubits must not grow v_{B|A}.
inline MonotonicityResult monotonicity_check(const QuantumState& rho, const KrausChannel& on_a,
                                             const KrausChannel& on_b, double tol = 1e-9) {
  require_qubits(rho, 2, "monotonicity_check");
  MonotonicityResult r;
  r.volume_before = normalized_volume(rho);
  r.volume_after = normalized_volume(apply_local({on_a, on_b}, rho));
  r.ok = r.volume_after <= r.volume_before + tol;
  return r;
}

}  // namespace steer
