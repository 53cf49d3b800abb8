#pragma once

// Dense complex-matrix layer. Every entropic quantity is in bits.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace tradeoff {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Spectrum of a Hermitian matrix: eigenvalues ascending, eigenvectors as orthonormal columns.
struct EigenSystem {
  RealVector values;
  Matrix vectors;
};

bool is_hermitian(const Matrix& m, double tolerance);
Matrix hermitian_part(const Matrix& m);

/// Throws NonHermitian when |m - m^dagger| exceeds tol::herm entrywise.
EigenSystem eig_hermitian(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix identity(int d);
Vector basis_vector(int d, int index);

/// Applies f to the spectrum of a Hermitian matrix.
template <typename F>
Matrix spectral_map(const EigenSystem& es, F&& f) {
  RealVector mapped(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) mapped(i) = f(es.values(i));
  return es.vectors * mapped.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

/// Square root of a PSD matrix; eigenvalues below tol::eig are set to zero.
Matrix sqrt_psd(const Matrix& m);

/// (Pseudo-)inverse square root on the support (eigenvalues >= tol::eig).
Matrix pinv_sqrt_psd(const Matrix& m);

/// Projector onto the eigenspace with eigenvalues >= tol::eig.
Matrix support_projector(const Matrix& m);

/// -sum lambda log2 lambda over the spectrum; entries below tol::eig contribute 0.
/// Does not renormalize, so sub-normalized blocks of block-diagonal states can be summed.
double entropy_of_spectrum(const RealVector& spectrum);

/// Entropy of a (possibly sub-normalized) PSD block.
double block_entropy(const Matrix& psd_block);

class DensityOperator {
 public:
  /// Validates the operator against the central tolerances.
  static DensityOperator from_matrix(const Matrix& m);
  static DensityOperator from_pure(const Vector& psi);
  static DensityOperator maximally_mixed(int d);

  const Matrix& matrix() const noexcept { return matrix_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }

  double purity() const;
  bool is_pure(double tolerance) const;

  /// Top eigenvector; meaningful for pure states.
  Vector dominant_vector() const;

 private:
  explicit DensityOperator(Matrix m) : matrix_(std::move(m)) {}
  Matrix matrix_;
};

class PureState {
 public:
  static PureState from_vector(const Vector& amplitudes);

  const Vector& amplitudes() const noexcept { return amplitudes_; }
  int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }
  DensityOperator projector() const { return DensityOperator::from_pure(amplitudes_); }

 private:
  explicit PureState(Vector v) : amplitudes_(std::move(v)) {}
  Vector amplitudes_;
};

/// Pure state on R (x) Q; amplitude index is r * dim_q + q.
class BipartitePureState {
 public:
  static BipartitePureState from_vector(const Vector& amplitudes, int dim_r, int dim_q);

  const Vector& amplitudes() const noexcept { return amplitudes_; }
  int dim_r() const noexcept { return dim_r_; }
  int dim_q() const noexcept { return dim_q_; }

  /// Coefficients c(r, q) as a dim_r x dim_q matrix.
  Matrix coefficients() const;
  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }
  DensityOperator marginal_r() const;
  DensityOperator marginal_q() const;

 private:
  BipartitePureState(Vector v, int dr, int dq) : amplitudes_(std::move(v)), dim_r_(dr), dim_q_(dq) {}
  Vector amplitudes_;
  int dim_r_;
  int dim_q_;
};

double von_neumann_entropy(const DensityOperator& rho);

double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

double trace_norm(const Matrix& m);

/// Bits; +infinity when supp(rho) is not contained in supp(sigma).
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

enum class Subsystem { A, B };

/// Partial trace of an operator on A (x) B (row index a * dim_b + b), keeping `keep`.
Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Subsystem keep);

DensityOperator reduced_state(const DensityOperator& joint, int dim_a, int dim_b, Subsystem keep);

/// Canonical purification sum_i sqrt(lambda_i) |i>_R |v_i>_Q with ascending eigenvalues.
BipartitePureState purify(const DensityOperator& rho);

/// Coherent information S(B) - S(AB) of a bipartite operator on A (x) B.
double coherent_information(const Matrix& joint, int dim_a, int dim_b);

}  // namespace tradeoff
