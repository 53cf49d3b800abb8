#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tradeoff/ensemble.hpp"
#include "tradeoff/random.hpp"

using namespace tradeoff;
using namespace testing_util;

namespace {

double binary_entropy(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

Ensemble uniform(const std::vector<Vector>& states) {
  return Ensemble::from_pure_states(states, std::vector<double>(states.size(), 1.0 / states.size()));
}

RealMatrix overlaps_of(const std::vector<Vector>& v) {
  const auto k = static_cast<Eigen::Index>(v.size());
  RealMatrix ov(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      const double a = std::abs(v[i].dot(v[j]));
      ov(i, j) = a < 1e-12 ? 0.0 : a;
    }
  return ov;
}

// Random mix of Haar states and fixed basis columns; ties and zero overlaps are common.
std::vector<Vector> structured_states(Rng& rng, int d, int k) {
  std::vector<Vector> out;
  const Matrix f = fourier_basis(d);
  for (int i = 0; i < k; ++i) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: out.push_back(haar_state(d, rng)); break;
      case 1: out.push_back(basis_vector(d, std::uniform_int_distribution<int>(0, d - 1)(rng))); break;
      default: out.push_back(f.col(std::uniform_int_distribution<int>(0, d - 1)(rng))); break;
    }
  }
  return out;
}

}  // namespace

TEST(Ensemble, AverageStateAndEntropyDefect) {
  const auto s = uniform({ket0(), ket_plus()});
  const Matrix avg = average_state(s).matrix();
  EXPECT_NEAR(avg(0, 0).real(), 0.75, 1e-12);
  EXPECT_NEAR(avg(0, 1).real(), 0.25, 1e-12);
  EXPECT_NEAR(entropy_defect(s), binary_entropy(0.5 + 0.5 / std::sqrt(2.0)), 1e-12);
  EXPECT_NEAR(entropy_defect(uniform({ket0(), ket1()})), 1.0, 1e-12);
}

TEST(Ensemble, EntropyDefectOfMixedEntries) {
  const auto s = Ensemble::from_entries(
      {{"a", 0.5, DensityOperator::maximally_mixed(2)}, {"b", 0.5, DensityOperator::from_pure(ket0())}});
  EXPECT_FALSE(s.is_pure());
  EXPECT_NEAR(entropy_defect(s), binary_entropy(0.75) - 0.5, 1e-12);
  EXPECT_EQ(code_of([&] { s.pure_vectors(); }), ErrorCode::MixedStates);
}

TEST(Ensemble, ValidationErrors) {
  EXPECT_EQ(code_of([] { Ensemble::from_pure_states({ket0(), ket1()}, {0.7, 0.7}); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { Ensemble::from_pure_states({ket0(), ket1()}, {1.0, 0.0}); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { Ensemble::from_pure_states({ket0(), ket({1, 0, 0})}, {0.5, 0.5}); }), ErrorCode::DimMismatch);
  EXPECT_EQ(code_of([] { Povm::from_elements({{"a", identity(2) * 0.5}}); }), ErrorCode::InvalidParams);
}

TEST(Ensemble, PovmOnReferenceReproducesAverage) {
  Rng rng(4);
  for (int d = 2; d <= 3; ++d) {
    const auto rho = random_density(d, rng);
    const auto psi = purify(rho);
    const auto s = ensemble_from_povm(psi, Povm::from_bases({identity(d), fourier_basis(d)}));
    EXPECT_EQ(s.size(), static_cast<std::size_t>(2 * d));
    EXPECT_TRUE(s.is_pure());
    EXPECT_LT((average_state(s).matrix() - rho.matrix()).norm(), 1e-10);
  }
}

TEST(Ensemble, ChristandlWinterEnsemble) {
  Rng rng(6);
  for (int d = 2; d <= 3; ++d) {
    const auto rho = random_density(d, rng);
    const auto cw = christandl_winter_ensemble(rho);
    EXPECT_EQ(cw.size(), static_cast<std::size_t>(2 * d));
    EXPECT_TRUE(cw.is_pure());
    EXPECT_LT((average_state(cw).matrix() - rho.matrix()).norm(), 1e-10);
    // The eigenbasis half carries the eigenvectors of rho with weights lambda / 2.
    const auto es = eig_hermitian(rho.matrix());
    for (int i = 0; i < d; ++i) EXPECT_NEAR(cw.entry(i).probability, 0.5 * es.values(i), 1e-10);
  }
  EXPECT_EQ(code_of([] { christandl_winter_ensemble(DensityOperator::from_pure(ket0())); }), ErrorCode::RankDeficient);
}

TEST(Ensemble, FourierBasisIsUnitary) {
  for (int d = 2; d <= 5; ++d) {
    const Matrix f = fourier_basis(d);
    EXPECT_LT((f.adjoint() * f - identity(d)).norm(), 1e-12);
  }
}

TEST(Ensemble, OverlapMatrix) {
  const RealMatrix ov = overlap_matrix(uniform({ket0(), ket1(), ket_plus()}));
  EXPECT_EQ(ov(0, 1), 0.0);
  EXPECT_NEAR(ov(0, 2), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(ov(1, 1), 1.0);
}

TEST(Ensemble, EtaHandCases) {
  const auto two = zeta(uniform({ket0(), ket_plus()}));
  EXPECT_NEAR(two.eta, 1 / (2 * std::sqrt(2.0)), 1e-12);
  EXPECT_NEAR(two.zeta, std::sqrt(2.0) / 8, 1e-12);
  EXPECT_EQ(two.witness.labels, (std::vector<std::size_t>{0, 1}));

  const auto three = eta(uniform({ket0(), ket1(), ket_plus()}));
  EXPECT_NEAR(three.eta, std::sqrt(2.0) / 6, 1e-12);
  EXPECT_EQ(three.witness.labels, (std::vector<std::size_t>{0, 2, 1}));

  const auto orthogonal = eta(uniform({ket0(), ket1()}));
  EXPECT_EQ(orthogonal.eta, 0.0);
  EXPECT_EQ(orthogonal.zeta, 0.0);
  EXPECT_TRUE(orthogonal.witness.labels.empty());

  const auto single = zeta(Ensemble::from_pure_states({ket_plus()}, {1.0}));
  EXPECT_EQ(single.eta, 1.0);
  EXPECT_EQ(single.zeta, 1.0);
}

TEST(Ensemble, EtaRespectsWalkCap) {
  const auto s = uniform({ket0(), ket1(), ket_plus()});
  EXPECT_EQ(eta(s, 2).eta, 0.0);
  EXPECT_NEAR(eta(s, 3).eta, std::sqrt(2.0) / 6, 1e-12);
  EXPECT_EQ(code_of([&] { eta(s, 0); }), ErrorCode::InvalidParams);
}

TEST(Ensemble, EtaIsInvariantUnderPhases) {
  Rng rng(17);
  const auto v = structured_states(rng, 3, 4);
  auto w = v;
  for (auto& x : w) x *= std::polar(1.0, std::uniform_real_distribution<double>(0, 6.28)(rng));
  EXPECT_NEAR(eta(uniform(v)).eta, eta(uniform(w)).eta, 1e-14);
}

TEST(Ensemble, EtaMatchesWalkEnumeration) {
  Rng rng(1234);
  for (int t = 0; t < 60; ++t) {
    const int d = 2 + t % 2;
    const int k = 2 + t % 4;
    const auto v = structured_states(rng, d, k);
    const auto s = Ensemble::from_pure_states(v, random_simplex(k, rng));
    const auto fast = zeta(s);
    const RealMatrix ov = overlap_matrix(s);
    EXPECT_LT((ov - overlaps_of(v)).cwiseAbs().maxCoeff(), 1e-12);
    const auto slow = oracle::eta_by_enumeration(ov, 2 * k - 1);
    EXPECT_EQ(fast.eta, slow.eta) << "trial " << t;
    EXPECT_EQ(fast.witness.labels, slow.walk) << "trial " << t;
    EXPECT_NEAR(fast.zeta, slow.eta * s.min_probability(), 1e-15);
  }
}

TEST(Ensemble, EtaIsNotAboveHalf) {
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    const auto v = structured_states(rng, 2, 2 + t % 3);
    EXPECT_LE(eta(uniform(v)).eta, 0.5);
  }
}
