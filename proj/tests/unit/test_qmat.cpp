#include <cmath>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tradeoff/errors.hpp"
#include "tradeoff/qmat.hpp"
#include "tradeoff/random.hpp"

using namespace tradeoff;
using testing_util::code_of;
using testing_util::ket;

namespace {

Matrix diag(std::initializer_list<double> d) {
  RealVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (auto x : d) v(i++) = x;
  return v.cast<Complex>().asDiagonal();
}

}  // namespace

TEST(Qmat, EntropyOfDiagonalStates) {
  EXPECT_NEAR(von_neumann_entropy(DensityOperator::from_matrix(diag({0.5, 0.25, 0.25}))), 1.5, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(DensityOperator::maximally_mixed(4)), 2.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(DensityOperator::from_pure(ket({1, 0, 0}))), 0.0, 1e-12);
}

TEST(Qmat, EntropyMatchesOracle) {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    const auto rho = random_density(2 + t % 3, rng);
    EXPECT_NEAR(von_neumann_entropy(rho), oracle::entropy_bits(rho.matrix()), 1e-10);
  }
}

TEST(Qmat, FidelityOfPureStates) {
  const double s = 1.0 / std::sqrt(2.0);
  const auto zero = DensityOperator::from_pure(ket({1, 0}));
  const auto plus = DensityOperator::from_pure(ket({s, s}));
  EXPECT_NEAR(fidelity(zero, plus), 0.5, 1e-12);
  EXPECT_NEAR(fidelity(zero, zero), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(zero, DensityOperator::maximally_mixed(2)), 0.5, 1e-12);
}

TEST(Qmat, FidelityIsSymmetricAndBounded) {
  Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    const int d = 2 + t % 3;
    const auto a = random_density(d, rng);
    const auto b = random_density(d, rng);
    const double f = fidelity(a, b);
    EXPECT_NEAR(f, fidelity(b, a), 1e-10);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
    // Fuchs-van de Graaf.
    const double dist = 0.5 * trace_norm(a.matrix() - b.matrix());
    EXPECT_LE(1.0 - std::sqrt(f), dist + 1e-10);
    EXPECT_LE(dist, std::sqrt(1.0 - f) + 1e-10);
  }
}

TEST(Qmat, TraceNormMatchesSvd) {
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const int d = 2 + t % 4;
    const Matrix h = random_hermitian(d, rng);
    const Matrix g = ginibre(d, d, rng);
    EXPECT_NEAR(trace_norm(h), oracle::trace_norm_svd(h), 1e-10);
    EXPECT_NEAR(trace_norm(g), oracle::trace_norm_svd(g), 1e-10);
  }
}

TEST(Qmat, PartialTraceMatchesIndexLoops) {
  Rng rng(8);
  for (int da = 2; da <= 3; ++da)
    for (int db = 2; db <= 4; ++db) {
      const Matrix m = ginibre(da * db, da * db, rng);
      EXPECT_LT((partial_trace(m, da, db, Subsystem::A) - oracle::trace_out_second(m, da, db)).norm(), 1e-12);
      EXPECT_LT((partial_trace(m, da, db, Subsystem::B) - oracle::trace_out_first(m, da, db)).norm(), 1e-12);
    }
}

TEST(Qmat, PartialTraceOfProduct) {
  Rng rng(9);
  const auto a = random_density(2, rng);
  const auto b = random_density(3, rng);
  const Matrix ab = kron(a.matrix(), b.matrix());
  EXPECT_LT((partial_trace(ab, 2, 3, Subsystem::A) - a.matrix()).norm(), 1e-12);
  EXPECT_LT((partial_trace(ab, 2, 3, Subsystem::B) - b.matrix()).norm(), 1e-12);
}

TEST(Qmat, PurificationReproducesState) {
  Rng rng(21);
  for (int d = 2; d <= 4; ++d) {
    const auto rho = random_density(d, rng);
    const auto psi = purify(rho);
    EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-12);
    EXPECT_LT((psi.marginal_q().matrix() - rho.matrix()).norm(), 1e-10);
    EXPECT_NEAR(von_neumann_entropy(psi.marginal_r()), von_neumann_entropy(rho), 1e-10);
  }
}

TEST(Qmat, PurificationOfPureStateUsesLastReferenceVector) {
  const auto psi = purify(DensityOperator::from_pure(ket({0, 1})));
  EXPECT_NEAR(std::abs(psi.amplitudes()(3)), 1.0, 1e-12);
}

TEST(Qmat, RelativeEntropy) {
  const auto zero = DensityOperator::from_pure(ket({1, 0}));
  const auto mixed = DensityOperator::maximally_mixed(2);
  EXPECT_NEAR(relative_entropy(zero, mixed), 1.0, 1e-12);
  EXPECT_TRUE(std::isinf(relative_entropy(mixed, zero)));
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_density(3, rng);
    const auto b = random_density(3, rng);
    EXPECT_GE(relative_entropy(a, b), -1e-12);
    EXPECT_NEAR(relative_entropy(a, a), 0.0, 1e-9);
  }
}

TEST(Qmat, CoherentInformationOfMaximallyEntangledState) {
  const double s = 1.0 / std::sqrt(2.0);
  const Vector bell = ket({s, 0, 0, s});
  EXPECT_NEAR(coherent_information(bell * bell.adjoint(), 2, 2), 1.0, 1e-12);
  const Matrix product = kron(diag({1, 0}), diag({0.5, 0.5}));
  EXPECT_NEAR(coherent_information(product, 2, 2), 0.0, 1e-12);
}

TEST(Qmat, SpectralFunctions) {
  Rng rng(6);
  const auto rho = random_density(3, rng);
  const Matrix r = sqrt_psd(rho.matrix());
  EXPECT_LT((r * r - rho.matrix()).norm(), 1e-10);
  const Matrix inv = pinv_sqrt_psd(rho.matrix());
  EXPECT_LT((inv * rho.matrix() * inv - identity(3)).norm(), 1e-8);
  const Matrix p = support_projector(diag({0.5, 0.5, 0}));
  EXPECT_LT((p - diag({1, 1, 0})).norm(), 1e-12);
}

TEST(Qmat, ValidationErrors) {
  EXPECT_EQ(code_of([] { DensityOperator::from_matrix(diag({0.5, 0.6})); }), ErrorCode::InvalidState);
  EXPECT_EQ(code_of([] { DensityOperator::from_matrix(diag({1.5, -0.5})); }), ErrorCode::InvalidState);
  Matrix skew = diag({0.5, 0.5});
  skew(0, 1) = 0.1;
  EXPECT_EQ(code_of([&] { eig_hermitian(skew); }), ErrorCode::NonHermitian);
  EXPECT_EQ(code_of([] { fidelity(DensityOperator::maximally_mixed(2), DensityOperator::maximally_mixed(3)); }),
            ErrorCode::DimMismatch);
}

TEST(Qmat, EntropyIsConcave) {
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    const auto a = random_density(3, rng);
    const auto b = random_density(3, rng);
    const double w = std::uniform_real_distribution<double>(0, 1)(rng);
    const auto mix = DensityOperator::from_matrix(w * a.matrix() + (1 - w) * b.matrix());
    EXPECT_GE(von_neumann_entropy(mix), w * von_neumann_entropy(a) + (1 - w) * von_neumann_entropy(b) - 1e-12);
  }
}
