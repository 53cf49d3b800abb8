#include "tradeoff/instrument.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tradeoff/errors.hpp"
#include "tradeoff/random.hpp"
#include "tradeoff/tolerances.hpp"

namespace tradeoff {

namespace {

void check_kraus_shapes(const std::vector<Matrix>& kraus, Eigen::Index rows, Eigen::Index cols, const std::string& where) {
  if (kraus.empty()) raise(ErrorCode::InvalidParams, where + ": empty Kraus list");
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    if (kraus[k].rows() != rows || kraus[k].cols() != cols) {
      std::ostringstream os;
      os << where << ": Kraus operator " << k << " has shape " << kraus[k].rows() << "x" << kraus[k].cols()
         << ", expected " << rows << "x" << cols;
      raise(ErrorCode::DimMismatch, os.str());
    }
  }
}

void check_trace_preserving(const Matrix& effect_sum, const std::string& where) {
  const double dev = (effect_sum - identity(static_cast<int>(effect_sum.rows()))).cwiseAbs().maxCoeff();
  if (dev > tol::normalization) {
    std::ostringstream os;
    os << where << ": not trace preserving (deviation " << dev << ")";
    raise(ErrorCode::InvalidParams, os.str());
  }
}

}  // namespace

Channel Channel::from_kraus(std::vector<Matrix> kraus) {
  if (kraus.empty()) raise(ErrorCode::InvalidParams, "channel: empty Kraus list");
  const auto rows = kraus.front().rows();
  const auto cols = kraus.front().cols();
  check_kraus_shapes(kraus, rows, cols, "channel");
  Matrix sum = Matrix::Zero(cols, cols);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  check_trace_preserving(sum, "channel");
  return Channel(std::move(kraus), static_cast<int>(cols), static_cast<int>(rows));
}

Matrix Channel::apply(const Matrix& x) const {
  Matrix out = Matrix::Zero(out_dim_, out_dim_);
  for (const auto& k : kraus_) out += k * x * k.adjoint();
  return out;
}

Matrix Channel::choi() const {
  const int n = in_dim_ * out_dim_;
  Matrix j = Matrix::Zero(n, n);
  for (const auto& k : kraus_) {
    Vector v(n);
    for (int i = 0; i < in_dim_; ++i) v.segment(static_cast<Eigen::Index>(i) * out_dim_, out_dim_) = k.col(i);
    j += v * v.adjoint();
  }
  return j;
}

Matrix OutcomeBranch::apply(const Matrix& x) const {
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out += k * x * k.adjoint();
  return out;
}

Matrix OutcomeBranch::effect() const {
  Matrix out = Matrix::Zero(kraus.front().cols(), kraus.front().cols());
  for (const auto& k : kraus) out += k.adjoint() * k;
  return out;
}

QuantumInstrument QuantumInstrument::from_branches(std::vector<OutcomeBranch> outcomes) {
  if (outcomes.empty()) raise(ErrorCode::InvalidParams, "instrument: no outcomes");
  if (outcomes.front().kraus.empty()) raise(ErrorCode::InvalidParams, "instrument: outcome 0 has no Kraus operators");
  const auto rows = outcomes.front().kraus.front().rows();
  const auto cols = outcomes.front().kraus.front().cols();
  Matrix sum = Matrix::Zero(cols, cols);
  for (std::size_t m = 0; m < outcomes.size(); ++m) {
    check_kraus_shapes(outcomes[m].kraus, rows, cols, "instrument outcome " + std::to_string(m));
    sum += outcomes[m].effect();
  }
  check_trace_preserving(sum, "instrument");
  return QuantumInstrument(std::move(outcomes), static_cast<int>(cols), static_cast<int>(rows));
}

std::size_t QuantumInstrument::total_kraus() const {
  std::size_t n = 0;
  for (const auto& b : outcomes_) n += b.kraus.size();
  return n;
}

BranchOutcome apply_branch(const QuantumInstrument& instr, std::size_t m, const DensityOperator& rho) {
  if (rho.dim() != instr.in_dim()) raise(ErrorCode::DimMismatch, "state dimension does not match instrument input");
  const Matrix out = instr.branch(m).apply(rho.matrix());
  BranchOutcome result;
  result.probability = std::clamp(out.trace().real(), 0.0, 1.0);
  if (result.probability > tol::prob) result.state = DensityOperator::from_matrix(out / out.trace().real());
  return result;
}

Channel channelize(const QuantumInstrument& instr) {
  const int n = static_cast<int>(instr.size());
  std::vector<Matrix> kraus;
  kraus.reserve(instr.total_kraus());
  for (int m = 0; m < n; ++m) {
    const Matrix reg = basis_vector(n, m);
    for (const auto& e : instr.branch(m).kraus) kraus.push_back(kron(e, reg));
  }
  return Channel::from_kraus(std::move(kraus));
}

StinespringDilation stinespring(const Channel& ch) {
  const int anc = static_cast<int>(ch.kraus().size());
  StinespringDilation dil;
  dil.in_dim = ch.in_dim();
  dil.out_dim = ch.out_dim();
  dil.anc_dim = anc;
  dil.isometry = Matrix::Zero(static_cast<Eigen::Index>(ch.out_dim()) * anc, ch.in_dim());
  for (int k = 0; k < anc; ++k)
    for (int q = 0; q < ch.out_dim(); ++q) dil.isometry.row(q * anc + k) = ch.kraus()[k].row(q);
  return dil;
}

Channel channel_from_dilation(const StinespringDilation& dil) {
  std::vector<Matrix> kraus;
  for (int a = 0; a < dil.anc_dim; ++a) {
    Matrix k(dil.out_dim, dil.in_dim);
    for (int q = 0; q < dil.out_dim; ++q) k.row(q) = dil.isometry.row(q * dil.anc_dim + a);
    kraus.push_back(std::move(k));
  }
  return Channel::from_kraus(std::move(kraus));
}

Channel complement_channel(const StinespringDilation& dil) {
  std::vector<Matrix> kraus;
  for (int q = 0; q < dil.out_dim; ++q)
    kraus.push_back(dil.isometry.block(static_cast<Eigen::Index>(q) * dil.anc_dim, 0, dil.anc_dim, dil.in_dim));
  return Channel::from_kraus(std::move(kraus));
}

Matrix branch_choi(const OutcomeBranch& branch, int in_dim) {
  const int out_dim = static_cast<int>(branch.kraus.front().rows());
  const int n = in_dim * out_dim;
  Matrix j = Matrix::Zero(n, n);
  for (const auto& k : branch.kraus) {
    Vector v(n);
    for (int i = 0; i < in_dim; ++i) v.segment(static_cast<Eigen::Index>(i) * out_dim, out_dim) = k.col(i);
    j += v * v.adjoint();
  }
  return j;
}

int branch_kraus_rank(const OutcomeBranch& branch, int in_dim) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(branch_choi(branch, in_dim), Eigen::EigenvaluesOnly);
  int rank = 0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    if (solver.eigenvalues()(i) > tol::rank) ++rank;
  return rank;
}

bool is_single_kraus(const QuantumInstrument& instr) {
  for (const auto& b : instr.outcomes())
    if (branch_kraus_rank(b, instr.in_dim()) > 1) return false;
  return true;
}

QuantumInstrument random_instrument(std::uint64_t seed, int d, int n_outcomes, int kraus_per_outcome) {
  if (d < 1 || n_outcomes < 1 || kraus_per_outcome < 1)
    raise(ErrorCode::InvalidParams, "random_instrument parameters must be >= 1");
  Rng rng(seed);
  const int blocks = n_outcomes * kraus_per_outcome;
  const Matrix v = haar_isometry(d * blocks, d, rng);
  std::vector<OutcomeBranch> outcomes;
  for (int m = 0; m < n_outcomes; ++m) {
    OutcomeBranch b;
    b.label = std::to_string(m);
    for (int k = 0; k < kraus_per_outcome; ++k)
      b.kraus.push_back(v.block(static_cast<Eigen::Index>(m * kraus_per_outcome + k) * d, 0, d, d));
    outcomes.push_back(std::move(b));
  }
  return QuantumInstrument::from_branches(std::move(outcomes));
}

QuantumInstrument identity_instrument(int d) { return QuantumInstrument::from_branches({{"0", {identity(d)}}}); }

QuantumInstrument von_neumann_instrument(const Matrix& basis) {
  std::vector<OutcomeBranch> outcomes;
  for (Eigen::Index m = 0; m < basis.cols(); ++m) {
    const Vector v = basis.col(m);
    outcomes.push_back({std::to_string(m), {v * v.adjoint()}});
  }
  return QuantumInstrument::from_branches(std::move(outcomes));
}

QuantumInstrument channel_instrument(const Channel& ch, std::string label) {
  return QuantumInstrument::from_branches({{std::move(label), ch.kraus()}});
}

QuantumInstrument unitary_branch_instrument(const std::vector<Matrix>& unitaries, const std::vector<double>& weights) {
  if (unitaries.size() != weights.size()) raise(ErrorCode::InvalidParams, "one weight per unitary required");
  std::vector<OutcomeBranch> outcomes;
  for (std::size_t m = 0; m < unitaries.size(); ++m)
    outcomes.push_back({std::to_string(m), {std::sqrt(weights[m]) * unitaries[m]}});
  return QuantumInstrument::from_branches(std::move(outcomes));
}

Channel depolarizing_channel(int d, double p) {
  if (p < 0.0 || p > 1.0) raise(ErrorCode::InvalidParams, "depolarizing parameter outside [0,1]");
  std::vector<Matrix> kraus;
  if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * identity(d));
  if (p > 0.0) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Matrix k = Matrix::Zero(d, d);
        k(i, j) = std::sqrt(p / d);
        kraus.push_back(std::move(k));
      }
  }
  return Channel::from_kraus(std::move(kraus));
}

Channel dephasing_channel(int d) {
  std::vector<Matrix> kraus;
  for (int i = 0; i < d; ++i) {
    const Vector e = basis_vector(d, i);
    kraus.push_back(e * e.adjoint());
  }
  return Channel::from_kraus(std::move(kraus));
}

Channel identity_channel(int d) { return Channel::from_kraus({identity(d)}); }

}  // namespace tradeoff
