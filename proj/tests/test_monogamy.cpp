#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "oracles.hpp"
#include "steer/families.hpp"
#include "steer/monogamy.hpp"

using namespace steer;

namespace {

QuantumState product3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return QuantumState::mixed(kron(kron(qubit_density(a), qubit_density(b)), qubit_density(c)));
}

QuantumState random_product_pure(int n, Engine& rng) {
  CVector psi = CVector::Ones(1);
  for (int q = 0; q < n; ++q) psi = kron(psi, random_pure_state(1, rng).amplitudes());
  return QuantumState::pure(psi);
}

QuantumState bell_times_zero() { return QuantumState::pure(kron(families::bell_phi_plus().amplitudes(), basis_ket("0"))); }

}  // namespace

TEST(monogamy, report_for_counterexample) {
  const auto r = volume_monogamy_report(families::counterexample());
  ASSERT_EQ(r.volumes.size(), 2u);
  EXPECT_NEAR(r.volumes[0], 8.0 / 27.0, 1e-12);
  EXPECT_NEAR(r.volumes[1], 8.0 / 27.0, 1e-12);
  EXPECT_NEAR(r.sqrt_lhs, 2.0 * std::sqrt(8.0 / 27.0), 1e-12);
  EXPECT_NEAR(r.sqrt_lhs, 1.0888, 1e-3);
  EXPECT_GT(r.sqrt_lhs, 1.0);
  EXPECT_LE(r.two_thirds_lhs, 1.0 + 1e-9);
  EXPECT_NEAR(r.two_thirds_lhs, 8.0 / 9.0, 1e-12);
}

TEST(monogamy, report_for_w_family_saturates) {
  for (double p : {0.05, 0.3, 1.0 / std::sqrt(3.0), 0.8, 0.97}) {
    const auto r = volume_monogamy_report(families::w_family(p));
    EXPECT_NEAR(r.sqrt_lhs, 1.0, 1e-9) << p;
  }
  for (double t : {0.0, 0.4, std::numbers::pi / 4.0, 1.3}) {
    EXPECT_NEAR(volume_monogamy_report(families::max_volume(t)).sqrt_lhs, 1.0, 1e-9) << t;
  }
}

TEST(monogamy, report_for_product_and_errors) {
  const auto r = volume_monogamy_report(product3(Vec3(0, 0, 1), Vec3(0.6, 0, 0), Vec3(0, 0.3, 0.1)));
  EXPECT_EQ(r.steered, (std::vector<int>{1, 2}));
  EXPECT_NEAR(r.volumes[0], 0.0, 1e-15);
  EXPECT_NEAR(r.volumes[1], 0.0, 1e-15);
  EXPECT_NEAR(r.sqrt_lhs, 0.0, 1e-7);
  EXPECT_NEAR(r.two_thirds_lhs, 0.0, 1e-9);
  EXPECT_THROW(volume_monogamy_report(families::werner(0.5)), ValidationError);
  EXPECT_THROW(volume_monogamy_report(families::ghz_state(), 3), ValidationError);
  const auto hub2 = volume_monogamy_report(families::counterexample(), 2);
  EXPECT_EQ(hub2.steered, (std::vector<int>{0, 1}));
  EXPECT_NEAR(hub2.n_bound, 1.0, 0.0);
}

TEST(monogamy, pairwise_correlation_examples) {
  const auto pairs = all_pairs(3);
  EXPECT_EQ(pairs.size(), 3u);
  EXPECT_NEAR(pairwise_correlation_sum(QuantumState::mixed(CMatrix::Identity(8, 8) / 8.0), pairs), 0.0, 1e-15);
  auto rng = seeded_engine(31);
  EXPECT_NEAR(pairwise_correlation_sum(random_product_pure(3, rng), pairs), 3.0, 1e-12);
  for (int i = 0; i < 100; ++i) {
    EXPECT_NEAR(pairwise_correlation_sum(random_pure_state(3, rng), pairs), 3.0, 1e-9);
  }
}

TEST(monogamy, purity_identities_3q) {
  for (const auto& psi : {families::ghz_state(), families::w_state()}) {
    for (double r : purity_identity_residuals_3q(psi)) EXPECT_NEAR(r, 0.0, 1e-12);
  }
  EXPECT_THROW(purity_identity_residuals_3q(families::counterexample()), ValidationError);
}

TEST(monogamy, purity_identities_4q) {
  for (const auto& psi : {QuantumState::pure(basis_ket("0000")), families::ghz_state(4)}) {
    for (double r : purity_identity_residuals_4q(psi)) EXPECT_NEAR(r, 0.0, 1e-12);
  }
  EXPECT_THROW(purity_identity_residuals_4q(QuantumState::mixed(CMatrix::Identity(16, 16) / 16.0)), ValidationError);
}

TEST(monogamy, l_bcd_examples) {
  EXPECT_NEAR(l_bcd(QuantumState::mixed(CMatrix::Identity(16, 16) / 16.0)), 0.0, 1e-15);
  const auto zero_ghz = QuantumState::pure(kron(basis_ket("0"), families::ghz_state().amplitudes()));
  double brute = 0.0;
  for (int l = 1; l <= 3; ++l) {
    for (int m = 1; m <= 3; ++m) {
      for (int k = 1; k <= 3; ++k) {
        const double c = oracle::pauli_expectation(zero_ghz.matrix(), {0, l, m, k});
        brute += c * c;
      }
    }
  }
  EXPECT_GE(l_bcd(zero_ghz), 1.0);
  EXPECT_NEAR(l_bcd(zero_ghz), brute, 1e-12);
  auto rng = seeded_engine(32);
  EXPECT_NEAR(l_bcd(random_product_pure(4, rng)), 1.0, 1e-12);
}

TEST(monogamy, polygon_examples) {
  // a = b = c = 1: 1 + 1 - 1 - 1.
  EXPECT_NEAR(polygon_residual(QuantumState::pure(basis_ket("010"))), 0.0, 1e-15);
  EXPECT_NEAR(polygon_residual(families::ghz_state()), 1.0, 1e-15);
  EXPECT_NEAR(polygon_residual(families::w_state()), 2.0 / 3.0, 1e-15);
  EXPECT_THROW(polygon_residual(families::counterexample()), ValidationError);
}

TEST(monogamy, concurrence_examples) {
  EXPECT_NEAR(concurrence(ket_to_density(families::bell_phi_plus())), 1.0, 1e-12);
  EXPECT_NEAR(concurrence(ket_to_density(families::singlet())), 1.0, 1e-12);
  EXPECT_NEAR(concurrence(QuantumState::mixed(kron(qubit_density(Vec3(0.2, 0, 0.3)), qubit_density(Vec3(0, 0, 1))))), 0.0,
              1e-12);
  EXPECT_NEAR(concurrence(families::werner(2.0 / 3.0)), 0.5, 1e-12);
  EXPECT_NEAR(concurrence(families::werner(0.3)), 0.0, 1e-12);
}

TEST(monogamy, concurrence_matches_non_hermitian_route) {
  for (int i = 0; i < 1000; ++i) {
    auto rng = stream_engine(33, static_cast<std::uint64_t>(i));
    const auto rho = i % 4 == 0 ? ket_to_density(random_pure_state(2, rng)) : random_mixed_state(2, i % 3 + 1, rng);
    ASSERT_NEAR(concurrence(rho), oracle::wootters_concurrence(rho.matrix()), 1e-7);
  }
}

TEST(monogamy, concurrence_volume_examples) {
  EXPECT_NEAR(concurrence_volume_residual(ket_to_density(families::bell_phi_plus())), 0.0, 1e-12);
  EXPECT_NEAR(concurrence_volume_residual(QuantumState::mixed(kron(qubit_density(Vec3(0.2, 0, 0.3)), qubit_density(Vec3(0, 0, 0.5))))),
              0.0, 1e-12);
}

TEST(monogamy, ckw_and_tangle_examples) {
  EXPECT_NEAR(ckw_residual(bell_times_zero()), 0.0, 1e-12);
  EXPECT_NEAR(ckw_residual(families::ghz_state()), 1.0, 1e-12);
  EXPECT_NEAR(three_tangle(families::ghz_state()), 1.0, 1e-12);
  EXPECT_NEAR(three_tangle(families::w_state()), 0.0, 1e-12);
  EXPECT_NEAR(three_tangle(QuantumState::pure(basis_ket("011"))), 0.0, 1e-12);
  EXPECT_THROW(three_tangle(families::counterexample()), ValidationError);
}

TEST(monogamy, three_tangle_matches_cayley_hyperdeterminant) {
  // tau = 4 |d1 - 2 d2 + 4 d3| for amplitudes a_ijk.
  for (int i = 0; i < 200; ++i) {
    const auto psi = random_pure_state(3, static_cast<std::uint64_t>(1000 + i));
    const CVector& v = psi.amplitudes();
    auto a = [&v](int x, int y, int z) { return v(4 * x + 2 * y + z); };
    const Complex d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) + a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                       a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) + a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
    const Complex d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                       a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                       a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    const Complex d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    ASSERT_NEAR(three_tangle(psi), 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3), 1e-7);
  }
}

TEST(monogamy, slocc_examples) {
  EXPECT_EQ(slocc_classify(families::w_state()), SloccClass::WClass);
  EXPECT_EQ(slocc_classify(families::ghz_state()), SloccClass::GHZClass);
  EXPECT_EQ(slocc_classify(bell_times_zero()), SloccClass::BipartiteAB_C);
  EXPECT_EQ(slocc_classify(QuantumState::pure(kron(basis_ket("1"), families::singlet().amplitudes()))),
            SloccClass::BipartiteA_BC);
  EXPECT_EQ(slocc_classify(QuantumState::pure(basis_ket("101"))), SloccClass::FullyProduct);
  EXPECT_EQ(to_string(SloccClass::BipartiteAB_C), "Bipartite_AB_C");
  // Bell on A,C with B in |+>.
  const CVector bell_ac = (basis_ket("000") + basis_ket("101") + basis_ket("010") + basis_ket("111")) / 2.0;
  EXPECT_EQ(slocc_classify(QuantumState::pure(bell_ac)), SloccClass::BipartiteAC_B);
  for (double p : {0.2, 0.6, 0.9}) EXPECT_EQ(slocc_classify(families::w_family(p)), SloccClass::WClass);
  EXPECT_EQ(slocc_classify(families::ghz_family(0.3, 0.9).state), SloccClass::GHZClass);
  EXPECT_EQ(slocc_classify(random_pure_state(3, std::uint64_t{5})), SloccClass::GHZClass);
}

TEST(monogamy, family_examples) {
  for (double alpha : {0.1, 0.5, 1.2}) {
    const auto fam = families::ghz_family(alpha, alpha);
    const double c = std::cos(2.0 * alpha);
    EXPECT_NEAR(fam.predicted_x, c * c, 1e-15);
    EXPECT_NEAR(fam.predicted_y, 0.0, 1e-15);
    const auto r = volume_monogamy_report(fam.state);
    EXPECT_NEAR(r.volumes[0], fam.predicted_x, 1e-9);
    EXPECT_NEAR(r.volumes[1], fam.predicted_y, 1e-9);
  }
  EXPECT_LT((families::w_family(1.0 / std::sqrt(3.0)).amplitudes() - families::w_state().amplitudes()).norm(), 1e-15);
  EXPECT_THROW(families::w_family(0.0), ValidationError);
  EXPECT_THROW(families::w_family(1.0), ValidationError);
  EXPECT_THROW(families::ghz_family(0.0, 0.3), ValidationError);
  EXPECT_THROW(families::ghz_family(0.3, std::numbers::pi / 2.0), ValidationError);
  EXPECT_THROW(families::max_volume(-0.1), ValidationError);
  EXPECT_NO_THROW(families::max_volume(std::numbers::pi / 2.0));
  const auto purified = families::purified_counterexample();
  EXPECT_LT((partial_trace(purified, {0, 1, 2}).matrix() - families::counterexample().matrix()).cwiseAbs().maxCoeff(),
            1e-12);
  EXPECT_EQ(family_state(families::WState{}).amplitudes(), families::w_state().amplitudes());
  EXPECT_EQ(family_state(families::MaxVolume{0.3}).amplitudes(), families::max_volume(0.3).amplitudes());
}

TEST(monogamy, ghz_family_covers_region_property) {
  for (int i = 0; i < 500; ++i) {
    auto rng = stream_engine(34, static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> u(1e-3, std::numbers::pi / 2.0 - 1e-3);
    const auto fam = families::ghz_family(u(rng), u(rng));
    const auto r = volume_monogamy_report(fam.state);
    ASSERT_NEAR(r.volumes[0], fam.predicted_x, 1e-9);
    ASSERT_NEAR(r.volumes[1], fam.predicted_y, 1e-9);
    ASSERT_LE(r.sqrt_lhs, 1.0 + 1e-9);
  }
}

TEST(monogamy, sqrt_relation_pure3_property) {
  for (int i = 0; i < 10000; ++i) {
    auto rng = stream_engine(35, static_cast<std::uint64_t>(i));
    const auto psi = random_pure_state(3, rng);
    const auto r = volume_monogamy_report(psi);
    ASSERT_LE(r.sqrt_lhs, 1.0 + 1e-9);
    ASSERT_GE(polygon_residual(psi), -1e-9);
    for (double x : purity_identity_residuals_3q(psi)) ASSERT_NEAR(x, 0.0, 1e-9);
    const double tau = three_tangle(psi);
    ASSERT_GE(tau, -1e-9);
    ASSERT_LE(tau, 1.0 + 1e-9);
  }
}

TEST(monogamy, two_thirds_relation_mixed3_property) {
  const auto pairs = all_pairs(3);
  for (int i = 0; i < 10000; ++i) {
    auto rng = stream_engine(36, static_cast<std::uint64_t>(i));
    const auto rho = random_mixed_state(3, 3, rng);
    ASSERT_LE(volume_monogamy_report(rho).two_thirds_lhs, 1.0 + 1e-9);
    ASSERT_LE(pairwise_correlation_sum(rho, pairs), 3.0 + 1e-9);
    if (i % 10 == 0) {
      ASSERT_GE(ckw_residual(rho), -1e-9);
    }
  }
}

TEST(monogamy, pure4_relation_property) {
  for (int i = 0; i < 10000; ++i) {
    auto rng = stream_engine(37, static_cast<std::uint64_t>(i));
    const auto psi = random_pure_state(4, rng);
    ASSERT_LE(volume_monogamy_report(psi).two_thirds_lhs, 1.0 + 1e-9);
    if (i % 10 == 0) {
      for (double x : purity_identity_residuals_4q(psi)) ASSERT_NEAR(x, 0.0, 1e-9);
    }
  }
}

TEST(monogamy, n_qubit_relation_property) {
  for (int i = 0; i < 1000; ++i) {
    auto rng = stream_engine(38, static_cast<std::uint64_t>(i));
    const auto rho = random_mixed_state(5, 5, rng);
    const auto r = volume_monogamy_report(rho, i % 5);
    ASSERT_NEAR(r.n_bound, 2.0, 0.0);
    ASSERT_LE(r.two_thirds_lhs, r.n_bound + 1e-9);
    ASSERT_LE(r.mean_volume, 0.5 + 1e-9);
  }
}

TEST(monogamy, concurrence_volume_property) {
  for (int i = 0; i < 10000; ++i) {
    auto rng = stream_engine(39, static_cast<std::uint64_t>(i));
    const auto rho = random_mixed_state(2, 1 + i % 3, rng);
    ASSERT_GE(concurrence_volume_residual(rho, Steering::BGivenA), -1e-9);
    ASSERT_GE(concurrence_volume_residual(rho, Steering::AGivenB), -1e-9);
  }
}

TEST(monogamy, w_orbit_saturation_property) {
  // Local unitaries preserve sqrt(v_B|A) + sqrt(v_C|A) = 1 for the W state.
  for (int i = 0; i < 200; ++i) {
    auto rng = stream_engine(40, static_cast<std::uint64_t>(i));
    std::vector<Mat2c> u;
    for (int q = 0; q < 3; ++q) {
      Eigen::HouseholderQR<Mat2c> qr(Mat2c(gaussian_vector(4, rng).reshaped(2, 2)));
      u.push_back(qr.householderQ());
    }
    const CVector psi = oracle::kron_all(u) * families::w_state().amplitudes();
    ASSERT_NEAR(volume_monogamy_report(QuantumState::pure(psi, 1e-9)).sqrt_lhs, 1.0, 1e-9);
  }
}
