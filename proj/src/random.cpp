#include "tradeoff/random.hpp"

#include <cmath>

#include "tradeoff/errors.hpp"

namespace tradeoff {

Matrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

Matrix haar_isometry(int rows, int cols, Rng& rng) {
  if (rows < cols || cols < 1) raise(ErrorCode::InvalidParams, "isometry needs rows >= cols >= 1");
  const Matrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR();
  for (int j = 0; j < cols; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return q;
}

Matrix haar_unitary(int d, Rng& rng) { return haar_isometry(d, d, rng); }

Vector haar_state(int d, Rng& rng) {
  Vector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

DensityOperator random_density(int d, Rng& rng) {
  const Matrix g = ginibre(d, d, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator::from_matrix(rho);
}

std::vector<double> random_simplex(int k, Rng& rng) {
  if (k < 1) raise(ErrorCode::InvalidParams, "simplex needs at least one entry");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(k);
  double total = 0.0;
  for (auto& x : p) {
    x = expo(rng) + 1e-9;
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

Matrix random_hermitian(int d, Rng& rng) { return hermitian_part(ginibre(d, d, rng)); }

}  // namespace tradeoff
