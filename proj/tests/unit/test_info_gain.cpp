#include <cmath>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tradeoff/info_gain.hpp"
#include "tradeoff/random.hpp"

using namespace tradeoff;
using namespace testing_util;

namespace {

Ensemble random_pure(Rng& rng, int d, int k) {
  std::vector<Vector> v;
  for (int i = 0; i < k; ++i) v.push_back(haar_state(d, rng));
  return Ensemble::from_pure_states(v, random_simplex(k, rng));
}

}  // namespace

TEST(InfoGain, MutualInformationOfOrthogonalStates) {
  const auto s = Ensemble::from_pure_states({ket0(), ket1()}, {0.5, 0.5});
  const auto mi = mutual_information(s, von_neumann_instrument(identity(2)));
  EXPECT_NEAR(mi.bits, 1.0, 1e-12);
  EXPECT_NEAR(mi.joint.p(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(mi.joint.p(0, 1), 0.0, 1e-15);
}

TEST(InfoGain, MutualInformationMatchesTableOracle) {
  Rng rng(31);
  for (int t = 0; t < 40; ++t) {
    const int d = 2 + t % 2;
    const auto s = random_pure(rng, d, 2 + t % 4);
    const auto mi = mutual_information(s, random_instrument(t, d, 1 + t % 3, 1 + t % 2));
    EXPECT_NEAR(mi.bits, oracle::mutual_information_table(mi.joint.p), 1e-12);
    EXPECT_NEAR(mi.joint.p.sum(), 1.0, 1e-12);
  }
}

TEST(InfoGain, IotaExamples) {
  const auto mixed = DensityOperator::maximally_mixed(2);
  EXPECT_NEAR(quantum_info_gain(mixed, von_neumann_instrument(identity(2))), 1.0, 1e-12);
  EXPECT_NEAR(quantum_info_gain(mixed, identity_instrument(2)), 0.0, 1e-12);
  EXPECT_NEAR(quantum_info_gain(DensityOperator::maximally_mixed(3), channel_instrument(depolarizing_channel(3, 1.0))),
              0.0, 1e-12);
  // Pure input: nothing to learn about the reference.
  EXPECT_NEAR(quantum_info_gain(DensityOperator::from_pure(ket_plus()), von_neumann_instrument(identity(2))), 0.0,
              1e-12);
}

TEST(InfoGain, IotaIsBetweenZeroAndEntropy) {
  Rng rng(2);
  for (int t = 0; t < 40; ++t) {
    const int d = 2 + t % 3;
    const auto rho = random_density(d, rng);
    const double iota = quantum_info_gain(rho, random_instrument(1000 + t, d, 1 + t % 3, 1 + t % 2));
    EXPECT_GE(iota, 0.0);
    EXPECT_LE(iota, von_neumann_entropy(rho) + 1e-10);
  }
}

TEST(InfoGain, ReferenceEnsembleAveragesToReferenceMarginal) {
  Rng rng(9);
  const auto rho = random_density(3, rng);
  const auto ref = reference_ensemble(rho, random_instrument(5, 3, 3, 2));
  EXPECT_LT((average_state(ref).matrix() - purify(rho).marginal_r().matrix()).norm(), 1e-10);
}

TEST(InfoGain, MutualInformationBelowIotaForSourceEnsembles) {
  // Any ensemble of rho_s is steered from the reference, so I(X:M) <= iota.
  Rng rng(77);
  for (int t = 0; t < 40; ++t) {
    const int d = 2 + t % 2;
    const auto s = random_pure(rng, d, 2 + t % 3);
    const auto instr = random_instrument(500 + t, d, 1 + t % 3, 1 + t % 2);
    EXPECT_LE(mutual_information(s, instr).bits, quantum_info_gain(average_state(s), instr) + 1e-9);
  }
}

TEST(InfoGain, AccessibleLowerBoundForProjectiveMeasurement) {
  const auto r = accessible_info_lower(DensityOperator::maximally_mixed(2), von_neumann_instrument(identity(2)));
  EXPECT_NEAR(r.bits, 1.0, 1e-9);
}

TEST(InfoGain, AccessibleLowerBoundIsSeededAndBelowIota) {
  Rng rng(12);
  for (int t = 0; t < 8; ++t) {
    const int d = 2 + t % 2;
    const auto rho = random_density(d, rng);
    const auto instr = random_instrument(t, d, 2, 1 + t % 2);
    AccessibleSearch search;
    search.seed = 3;
    const auto a = accessible_info_lower(rho, instr, search);
    const auto b = accessible_info_lower(rho, instr, search);
    EXPECT_EQ(a.bits, b.bits);
    EXPECT_EQ(a.candidate, b.candidate);
    EXPECT_LE(a.bits, quantum_info_gain(rho, instr) + 1e-9);
  }
}

TEST(InfoGain, FrameConstantsOfTightFrames) {
  // Canonical duals are (d + 1) P - I for complete MUBs and the qubit SIC.
  EXPECT_NEAR(build_dual_frame(mub_povm(2)).frame_const, 3.0, 1e-10);
  EXPECT_NEAR(build_dual_frame(mub_povm(3)).frame_const, 5.0, 1e-10);
  EXPECT_NEAR(build_dual_frame(qubit_sic_povm()).frame_const, 3.0, 1e-10);
}

TEST(InfoGain, DualFrameReconstructs) {
  Rng rng(40);
  for (const auto& povm : {mub_povm(2), mub_povm(3), mub_povm(5), qubit_sic_povm(), default_frame_povm(4)}) {
    const auto frame = build_dual_frame(povm);
    for (int t = 0; t < 5; ++t) {
      const Matrix h = random_hermitian(povm.dim(), rng);
      EXPECT_LT((frame.reconstruct(h) - h).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(InfoGain, IncompletePovmIsRejected) {
  EXPECT_EQ(code_of([] { build_dual_frame(Povm::from_bases({identity(2)})); }), ErrorCode::NotInfoComplete);
  EXPECT_EQ(code_of([] { mub_povm(4); }), ErrorCode::InvalidParams);
}

TEST(InfoGain, TBound) {
  EXPECT_EQ(t_bound(0.0, 2), 0.0);
  EXPECT_NEAR(t_bound(1.0, 2), 1.0, 1e-15);
  EXPECT_NEAR(t_bound(0.5, 2), 1.0, 1e-15);
  EXPECT_NEAR(t_bound(0.25, 5), 0.25 * std::log2(16.0), 1e-15);
  EXPECT_EQ(code_of([] { t_bound(1.5, 2); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { t_bound(-0.1, 2); }), ErrorCode::DomainError);
}

TEST(InfoGain, ReportChainHolds) {
  Rng rng(60);
  for (int t = 0; t < 12; ++t) {
    const int d = 2 + t % 2;
    const auto rho = random_density(d, rng);
    const auto instr = random_instrument(900 + t, d, 1 + t % 3, 1 + t % 2);
    const auto r = info_equivalence_report(rho, instr, build_dual_frame(default_frame_povm(d)));
    EXPECT_GE(r.holevo_slack, -1e-9);
    EXPECT_GE(r.norm_slack, -1e-7);
    if (!r.bound_saturated) EXPECT_GE(r.t_slack, -1e-7);
    EXPECT_LE(r.i_acc_lower, r.i_acc_upper + 1e-9);
  }
}

TEST(InfoGain, ReportOnProjectiveMeasurementOfMaximallyMixedQubit) {
  const auto r = info_equivalence_report(DensityOperator::maximally_mixed(2), von_neumann_instrument(identity(2)),
                                         build_dual_frame(mub_povm(2)));
  EXPECT_NEAR(r.iota, 1.0, 1e-12);
  EXPECT_NEAR(r.norm_sum, 1.0, 1e-12);
  EXPECT_GE(r.norm_slack, 0.0);
}

TEST(InfoGain, MutualInformationOfNonOrthogonalPair) {
  // Joint table {1/2, 0; 1/4, 1/4}: H(M) - H(M|X) = h(1/4) - 1/2.
  const auto s = Ensemble::from_pure_states({ket0(), ket_plus()}, {0.5, 0.5});
  const double expected = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75)) - 0.5;
  EXPECT_NEAR(mutual_information(s, von_neumann_instrument(identity(2))).bits, expected, 1e-12);
  EXPECT_NEAR(expected, 0.311278, 1e-6);
}

TEST(InfoGain, TBoundIsIncreasingBelowItsPeak) {
  for (int d = 2; d <= 8; ++d) {
    const double peak = std::min(1.0, 2.0 * std::sqrt(d - 1.0) / std::exp(1.0));
    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double x = peak * i / 200.0;
      const double t = t_bound(x, d);
      EXPECT_GT(t, prev) << "d=" << d << " x=" << x;
      prev = t;
    }
  }
  // For qubits the peak sits inside (0, 1).
  EXPECT_GT(t_bound(2.0 / std::exp(1.0), 2), t_bound(1.0, 2));
}
