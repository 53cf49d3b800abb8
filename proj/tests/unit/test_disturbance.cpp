#include <cmath>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tradeoff/disturbance.hpp"
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

Ensemble zero_plus() { return Ensemble::from_pure_states({ket0(), ket_plus()}, {0.5, 0.5}); }

QuantumInstrument split_first_kraus(const QuantumInstrument& instr) {
  auto branches = instr.outcomes();
  const Matrix e = branches[0].kraus[0] / std::sqrt(2.0);
  branches[0].kraus[0] = e;
  branches[0].kraus.push_back(e);
  return QuantumInstrument::from_branches(branches);
}

// Holevo quantity of explicit output states through the library-independent entropy.
double holevo_direct(const std::vector<double>& p, const std::vector<Matrix>& states) {
  Matrix avg = Matrix::Zero(states[0].rows(), states[0].cols());
  double chi = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    avg += p[x] * states[x];
    chi -= p[x] * oracle::entropy_bits(states[x]);
  }
  return chi + oracle::entropy_bits(avg);
}

}  // namespace

TEST(Disturbance, Examples) {
  Rng rng(1);
  const auto rho = random_density(3, rng);
  EXPECT_NEAR(quantum_disturbance(rho, identity_instrument(3)), 0.0, 1e-10);
  const auto mixed = DensityOperator::maximally_mixed(2);
  EXPECT_NEAR(quantum_disturbance(mixed, von_neumann_instrument(identity(2))), 1.0, 1e-10);
  // Complete depolarization leaves the reference maximally mixed and uncorrelated: delta = 2 S.
  EXPECT_NEAR(quantum_disturbance(mixed, channel_instrument(depolarizing_channel(2, 1.0))), 2.0, 1e-10);
}

TEST(Disturbance, BlockRouteMatchesFullOutput) {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    const int d = 2 + t % 3;
    const auto rho = random_density(d, rng);
    const auto instr = random_instrument(t, d, 1 + t % 3, 1 + t % 2);
    EXPECT_NEAR(quantum_disturbance(rho, instr), channel_disturbance(rho, channelize(instr)), 1e-9);
  }
}

TEST(Disturbance, FullOutputRouteFromExplicitState) {
  Rng rng(3);
  const auto rho = random_density(2, rng);
  const auto ch = channelize(random_instrument(4, 2, 2, 2));
  const Vector psi = purify(rho).amplitudes();
  const int out = ch.out_dim();
  Matrix joint = Matrix::Zero(2 * out, 2 * out);
  for (const auto& k : ch.kraus()) {
    const Matrix lifted = kron(identity(2), k);
    joint += lifted * psi * psi.adjoint() * lifted.adjoint();
  }
  const double ic = oracle::entropy_bits(oracle::trace_out_first(joint, 2, out)) - oracle::entropy_bits(joint);
  EXPECT_NEAR(channel_disturbance(rho, ch), oracle::entropy_bits(rho.matrix()) - ic, 1e-9);
}

TEST(Disturbance, DeltaIsNonNegative) {
  Rng rng(4);
  for (int t = 0; t < 40; ++t) {
    const int d = 2 + t % 3;
    EXPECT_GE(quantum_disturbance(random_density(d, rng), random_instrument(50 + t, d, 1 + t % 3, 1 + t % 2)), 0.0);
  }
}

TEST(Disturbance, LemmaOneOnDephasing) {
  const auto check = lemma1_identity_check(zero_plus(), channel_instrument(dephasing_channel(2)));
  EXPECT_LE(check.slack, 1e-9);
  EXPECT_GT(check.delta, 0.0);
}

TEST(Disturbance, LemmaOneOnRandomInstances) {
  Rng rng(5);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int d = 2 + t % 3;
    const auto s = random_pure(rng, d, 2 + t % 4);
    const auto check = lemma1_identity_check(s, random_instrument(1000 + t, d, 1 + t % 3, 1 + t % 2));
    worst = std::max(worst, check.slack);
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(Disturbance, LemmaOneNearDegenerate) {
  Rng rng(6);
  const Vector a = haar_state(3, rng);
  Vector b = a + 1e-4 * haar_state(3, rng);
  b.normalize();
  const auto s = Ensemble::from_pure_states({a, b, haar_state(3, rng)}, {1e-9, 0.5, 0.5 - 1e-9});
  EXPECT_LE(lemma1_identity_check(s, random_instrument(3, 3, 2, 2)).slack, 1e-8);
  EXPECT_EQ(code_of([] {
              lemma1_identity_check(Ensemble::from_entries({{"m", 1.0, DensityOperator::maximally_mixed(2)}}),
                                    identity_instrument(2));
            }),
            ErrorCode::MixedStates);
}

TEST(Disturbance, EntropyDefectLossOnOrthogonalStates) {
  const auto s = Ensemble::from_pure_states({ket0(), ket1()}, {0.5, 0.5});
  const auto loss = entropy_defect_loss(s, von_neumann_instrument(identity(2)));
  EXPECT_NEAR(loss.chi_input, 1.0, 1e-12);
  EXPECT_NEAR(loss.chi_output, 1.0, 1e-12);
  EXPECT_NEAR(loss.delta_chi, 0.0, 1e-12);
  EXPECT_NEAR(loss.mutual_info, 1.0, 1e-12);
  EXPECT_NEAR(loss.conditional_sum, 0.0, 1e-12);
}

TEST(Disturbance, OutputHolevoMatchesDirect) {
  Rng rng(7);
  const auto s = random_pure(rng, 3, 4);
  const auto ch = channelize(random_instrument(8, 3, 2, 2));
  std::vector<double> p;
  std::vector<Matrix> out;
  for (const auto& e : s.entries()) {
    p.push_back(e.probability);
    out.push_back(ch.apply(e.state.matrix()));
  }
  EXPECT_NEAR(output_holevo(s, ch), holevo_direct(p, out), 1e-10);
}

TEST(Disturbance, EntropyDefectDecomposes) {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    const int d = 2 + t % 2;
    const Ensemble s = t % 3 == 0 ? Ensemble::from_entries({{"a", 0.3, random_density(d, rng)},
                                                             {"b", 0.7, random_density(d, rng)}})
                                  : random_pure(rng, d, 2 + t % 4);
    const auto loss = entropy_defect_loss(s, random_instrument(2000 + t, d, 1 + t % 3, 1 + t % 2));
    EXPECT_LE(loss.decomposition_residual, 1e-9);
    EXPECT_GE(loss.delta_chi, -1e-9);
  }
}

TEST(Disturbance, DeltaDominatesIota) {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + t % 2;
    const auto rho = random_density(d, rng);
    const auto instr = random_instrument(3000 + t, d, 1 + t % 3, 1 + t % 2);
    const auto check = eq18_check(rho, instr);
    EXPECT_GE(check.slack, -1e-9);
    EXPECT_EQ(check.equality_expected, t % 2 == 0);
    if (check.equality_expected) EXPECT_LE(std::abs(check.slack), 1e-8);
  }
}

TEST(Disturbance, DeltaIotaExamples) {
  const auto mixed = DensityOperator::maximally_mixed(2);
  const auto vn = eq18_check(mixed, von_neumann_instrument(identity(2)));
  EXPECT_TRUE(vn.equality_expected);
  EXPECT_NEAR(vn.slack, 0.0, 1e-10);
  const auto depol = eq18_check(mixed, channel_instrument(depolarizing_channel(2, 0.5)));
  EXPECT_FALSE(depol.equality_expected);
  EXPECT_GT(depol.slack, 1e-3);
}

TEST(Disturbance, LowerBoundFromEntanglementFidelity) {
  Rng rng(10);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 2;
    EXPECT_GE(eq17_lower_check(random_density(d, rng), random_instrument(4000 + t, d, 1 + t % 3, 1 + t % 2)), -1e-7);
  }
}

TEST(Disturbance, SandwichOnProjectiveMeasurement) {
  const auto cw = cw_sandwich_check(DensityOperator::maximally_mixed(2), von_neumann_instrument(identity(2)));
  EXPECT_NEAR(cw.delta, 1.0, 1e-10);
  EXPECT_GE(cw.lower_slack, 0.0);
  EXPECT_GE(cw.upper_slack, 0.0);
}

TEST(Disturbance, SandwichOnRandomInstances) {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + t % 2;
    const auto rho = t % 4 == 0 ? DensityOperator::maximally_mixed(d) : random_density(d, rng);
    const auto cw = cw_sandwich_check(rho, random_instrument(5000 + t, d, 1 + t % 3, 1 + t % 2));
    EXPECT_GE(cw.lower_slack, -1e-7);
    EXPECT_GE(cw.upper_slack, -1e-7);
  }
}

TEST(Disturbance, BoundFunctions) {
  EXPECT_NEAR(bound_f1(0.01, 2, 2), 0.4 * std::log2(200.0), 1e-12);
  EXPECT_NEAR(bound_f1(0.01, 2, 2), 3.0575425, 1e-7);
  EXPECT_NEAR(bound_f2(0.25, 2, 2), 12.0, 1e-12);
  EXPECT_NEAR(bound_f(0.25, 2, 2), 18.0, 1e-12);
  EXPECT_EQ(bound_f1(0.0, 3, 3), 0.0);
  EXPECT_EQ(bound_f2(0.0, 3, 3), 0.0);
  EXPECT_EQ(bound_f(0.0, 3, 3), 0.0);
  EXPECT_EQ(code_of([] { bound_f1(0.3, 2, 2); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { bound_f2(1.1, 2, 2); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { bound_f(-0.1, 2, 2); }), ErrorCode::DomainError);
}

TEST(Disturbance, OrthogonalStatesAreRecoveredButDisturbed) {
  const auto s = Ensemble::from_pure_states({ket0(), ket1()}, {0.5, 0.5});
  const auto r = theorem_one_report(s, von_neumann_instrument(identity(2)));
  EXPECT_NEAR(r.f_av, 1.0, 1e-6);
  EXPECT_NEAR(r.delta, 1.0, 1e-9);
  EXPECT_EQ(r.zeta, 0.0);
  EXPECT_FALSE(r.applicable);
  EXPECT_FALSE(r.x.has_value());
  EXPECT_FALSE(r.slack_c.has_value());
}

TEST(Disturbance, ChainOnNonOrthogonalPair) {
  const auto r = theorem_one_report(zero_plus(), von_neumann_instrument(identity(2)));
  EXPECT_NEAR(r.zeta, std::sqrt(2.0) / 8, 1e-12);
  EXPECT_EQ(r.path_length, 2);
  EXPECT_LT(r.f_av, 1.0);
  EXPECT_GE(r.slack_a, -1e-7);
  EXPECT_GE(r.slack_b, -1e-7);
  if (r.applicable) EXPECT_GE(*r.slack_c, -1e-7);
}

TEST(Disturbance, ChainOnRandomInstruments) {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 2;
    const auto s = random_pure(rng, d, 2 + t % 2);
    const auto r = theorem_one_report(s, random_instrument(6000 + t, d, 1 + t % 3, 1 + t % 2));
    EXPECT_GE(r.slack_a, -1e-7);
    EXPECT_GE(r.slack_b, -1e-7);
    EXPECT_EQ(r.applicable, r.zeta_positive && r.x_in_domain && r.fidelity_condition);
    if (r.applicable) {
      EXPECT_NEAR(*r.rhs, bound_f(*r.x, r.path_length, d), 1e-12);
      EXPECT_GE(*r.slack_c, -1e-7);
    }
  }
}

TEST(Disturbance, ReportRangesAndFlags) {
  const auto s = Ensemble::from_pure_states({ket0(), ket1(), ket_plus(), ket({1 / std::sqrt(2.0), -1 / std::sqrt(2.0)})},
                                            {0.25, 0.25, 0.25, 0.25});
  const auto r = disturbance_report(s, channel_instrument(depolarizing_channel(2, 1.0)));
  EXPECT_NEAR(r.delta, 2.0, 1e-9);
  EXPECT_TRUE(r.delta_above_entropy);
  EXPECT_NEAR(r.f_e, 0.25, 1e-6);
  EXPECT_LE(r.f_e, r.f_av + 1e-7);
}

TEST(Disturbance, KrausSplitInvariance) {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 2;
    const auto rho = random_density(d, rng);
    const auto instr = random_instrument(7000 + t, d, 1 + t % 3, 1 + t % 2);
    const auto split = split_first_kraus(instr);
    EXPECT_NEAR(quantum_disturbance(rho, instr), quantum_disturbance(rho, split), 1e-8);
    EXPECT_NEAR(quantum_info_gain(rho, instr), quantum_info_gain(rho, split), 1e-8);
  }
}

TEST(Disturbance, DimensionMismatch) {
  EXPECT_EQ(code_of([] { quantum_disturbance(DensityOperator::maximally_mixed(3), identity_instrument(2)); }),
            ErrorCode::DimMismatch);
}
