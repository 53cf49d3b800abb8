#include "tradeoff/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tradeoff/errors.hpp"
#include "tradeoff/tolerances.hpp"

namespace tradeoff {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::MixedStates: return "MixedStates";
    case ErrorCode::NotInfoComplete: return "NotInfoComplete";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateBranch: return "DegenerateBranch";
    case ErrorCode::InternalError: return "InternalError";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a nonempty square matrix, got " << m.rows() << "x" << m.cols();
    raise(ErrorCode::DimMismatch, os.str());
  }
}

}  // namespace

bool is_hermitian(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

EigenSystem eig_hermitian(const Matrix& m) {
  require_square(m, "eig_hermitian");
  if (!is_hermitian(m, tol::herm)) {
    raise(ErrorCode::NonHermitian, "matrix deviates from its adjoint beyond tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) raise(ErrorCode::InternalError, "eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix identity(int d) { return Matrix::Identity(d, d); }

Vector basis_vector(int d, int index) {
  Vector v = Vector::Zero(d);
  v(index) = 1.0;
  return v;
}

Matrix sqrt_psd(const Matrix& m) {
  return spectral_map(eig_hermitian(m), [](double x) { return x < tol::eig ? 0.0 : std::sqrt(x); });
}

Matrix pinv_sqrt_psd(const Matrix& m) {
  return spectral_map(eig_hermitian(m), [](double x) { return x < tol::eig ? 0.0 : 1.0 / std::sqrt(x); });
}

Matrix support_projector(const Matrix& m) {
  return spectral_map(eig_hermitian(m), [](double x) { return x < tol::eig ? 0.0 : 1.0; });
}

double entropy_of_spectrum(const RealVector& spectrum) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double x = spectrum(i);
    if (x >= tol::eig) s -= x * std::log2(x);
  }
  return s;
}

double block_entropy(const Matrix& psd_block) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(psd_block), Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(solver.eigenvalues());
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator DensityOperator::from_matrix(const Matrix& m) {
  require_square(m, "DensityOperator");
  if (!is_hermitian(m, tol::herm)) raise(ErrorCode::InvalidState, "density operator is not Hermitian");
  Matrix h = hermitian_part(m);
  const Complex tr = h.trace();
  if (std::abs(tr.real() - 1.0) > tol::trace) {
    std::ostringstream os;
    os << "density operator trace " << tr.real() << " differs from 1";
    raise(ErrorCode::InvalidState, os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol::psd) {
    std::ostringstream os;
    os << "density operator has negative eigenvalue " << solver.eigenvalues().minCoeff();
    raise(ErrorCode::InvalidState, os.str());
  }
  return DensityOperator(std::move(h));
}

DensityOperator DensityOperator::from_pure(const Vector& psi) {
  if (psi.size() == 0) raise(ErrorCode::InvalidState, "empty state vector");
  if (std::abs(psi.norm() - 1.0) > tol::trace) raise(ErrorCode::InvalidState, "state vector is not normalized");
  const Vector v = psi / psi.norm();
  return DensityOperator(v * v.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(int d) {
  if (d < 1) raise(ErrorCode::InvalidParams, "dimension must be positive");
  return DensityOperator(identity(d) / static_cast<double>(d));
}

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

bool DensityOperator::is_pure(double tolerance) const { return std::abs(purity() - 1.0) <= tolerance; }

Vector DensityOperator::dominant_vector() const {
  const auto es = eig_hermitian(matrix_);
  return es.vectors.col(es.values.size() - 1);
}

PureState PureState::from_vector(const Vector& amplitudes) {
  if (amplitudes.size() == 0) raise(ErrorCode::InvalidState, "empty state vector");
  if (std::abs(amplitudes.norm() - 1.0) > tol::trace) raise(ErrorCode::InvalidState, "state vector is not normalized");
  return PureState(amplitudes);
}

BipartitePureState BipartitePureState::from_vector(const Vector& amplitudes, int dim_r, int dim_q) {
  if (dim_r < 1 || dim_q < 1 || amplitudes.size() != static_cast<Eigen::Index>(dim_r) * dim_q)
    raise(ErrorCode::DimMismatch, "bipartite amplitudes do not factorize as declared");
  if (std::abs(amplitudes.norm() - 1.0) > tol::trace) raise(ErrorCode::InvalidState, "bipartite state is not normalized");
  return BipartitePureState(amplitudes, dim_r, dim_q);
}

Matrix BipartitePureState::coefficients() const {
  Matrix c(dim_r_, dim_q_);
  for (int r = 0; r < dim_r_; ++r)
    for (int q = 0; q < dim_q_; ++q) c(r, q) = amplitudes_(r * dim_q_ + q);
  return c;
}

DensityOperator BipartitePureState::marginal_r() const {
  const Matrix c = coefficients();
  return DensityOperator::from_matrix(c * c.adjoint());
}

DensityOperator BipartitePureState::marginal_q() const {
  const Matrix c = coefficients();
  return DensityOperator::from_matrix((c.adjoint() * c).transpose());
}

// ---------------------------------------------------------------------------

double von_neumann_entropy(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  RealVector lambda = solver.eigenvalues().cwiseMax(0.0);
  lambda /= lambda.sum();
  return entropy_of_spectrum(lambda);
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) raise(ErrorCode::DimMismatch, "fidelity of states with different dimensions");
  const Matrix product = sqrt_psd(rho.matrix()) * sqrt_psd(sigma.matrix());
  Eigen::JacobiSVD<Matrix> svd(product);
  const double root = svd.singularValues().sum();
  return std::clamp(root * root, 0.0, 1.0);
}

double trace_norm(const Matrix& m) {
  require_square(m, "trace_norm");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (is_hermitian(m, 1e-14 * scale)) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) raise(ErrorCode::DimMismatch, "relative entropy of states with different dimensions");
  const auto es = eig_hermitian(sigma.matrix());
  double outside_support = 0.0;
  double cross = 0.0;
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    const Vector v = es.vectors.col(j);
    const double weight = (v.adjoint() * rho.matrix() * v)(0).real();
    if (es.values(j) < tol::eig) {
      outside_support += weight;
    } else {
      cross -= weight * std::log2(es.values(j));
    }
  }
  if (outside_support > tol::eig) return std::numeric_limits<double>::infinity();
  return std::max(0.0, cross - von_neumann_entropy(rho));
}

Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Subsystem keep) {
  if (dim_a < 1 || dim_b < 1 || m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b || m.cols() != m.rows())
    raise(ErrorCode::DimMismatch, "operator does not factorize as declared");
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int a = 0; a < dim_a; ++a)
      for (int ap = 0; ap < dim_a; ++ap)
        for (int b = 0; b < dim_b; ++b) out(a, ap) += m(a * dim_b + b, ap * dim_b + b);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int a = 0; a < dim_a; ++a) out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
  return out;
}

DensityOperator reduced_state(const DensityOperator& joint, int dim_a, int dim_b, Subsystem keep) {
  return DensityOperator::from_matrix(partial_trace(joint.matrix(), dim_a, dim_b, keep));
}

BipartitePureState purify(const DensityOperator& rho) {
  const int d = rho.dim();
  const auto es = eig_hermitian(rho.matrix());
  Vector amplitudes = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) {
    const double weight = std::sqrt(std::max(0.0, es.values(i)));
    amplitudes.segment(static_cast<Eigen::Index>(i) * d, d) = weight * es.vectors.col(i);
  }
  amplitudes /= amplitudes.norm();
  return BipartitePureState::from_vector(amplitudes, d, d);
}

double coherent_information(const Matrix& joint, int dim_a, int dim_b) {
  return block_entropy(partial_trace(joint, dim_a, dim_b, Subsystem::B)) - block_entropy(joint);
}

}  // namespace tradeoff
