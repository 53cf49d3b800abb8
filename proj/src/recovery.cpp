#include "tradeoff/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "tradeoff/errors.hpp"
#include "tradeoff/tolerances.hpp"

namespace tradeoff {

const char* to_string(RecoveryProvenance p) {
  switch (p) {
    case RecoveryProvenance::Optimized: return "optimized";
    case RecoveryProvenance::Petz: return "petz";
    case RecoveryProvenance::Trivial: return "trivial";
    case RecoveryProvenance::Supplied: return "supplied";
  }
  return "unknown";
}

namespace {

Matrix clip_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  const RealVector v = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * v.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix project_affine(const Matrix& j, int in_dim, int out_dim) {
  const Matrix excess = partial_trace(j, in_dim, out_dim, Subsystem::A) - identity(in_dim);
  return j - kron(excess, identity(out_dim)) / static_cast<double>(out_dim);
}

double linear_value(const Matrix& c, const Matrix& j) { return c.cwiseProduct(j.transpose()).sum().real(); }

// X -> Tr[X] omega.
Channel replacement_channel(int in_dim, const DensityOperator& omega) {
  const auto es = eig_hermitian(omega.matrix());
  std::vector<Matrix> kraus;
  for (Eigen::Index l = 0; l < es.values.size(); ++l) {
    if (es.values(l) <= 0.0) continue;
    for (int i = 0; i < in_dim; ++i) {
      Matrix k = Matrix::Zero(omega.dim(), in_dim);
      k.col(i) = std::sqrt(es.values(l)) * es.vectors.col(l);
      kraus.push_back(std::move(k));
    }
  }
  return Channel::from_kraus(std::move(kraus));
}

double branch_probability(const DensityOperator& rho, const OutcomeBranch& branch) {
  return (branch.effect() * rho.matrix()).trace().real();
}

}  // namespace

Channel channel_from_choi(const Matrix& choi, int in_dim, int out_dim) {
  if (choi.rows() != static_cast<Eigen::Index>(in_dim) * out_dim) raise(ErrorCode::DimMismatch, "Choi matrix has the wrong size");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(choi));
  std::vector<Matrix> kraus;
  for (Eigen::Index l = 0; l < es.eigenvalues().size(); ++l) {
    const double lambda = es.eigenvalues()(l);
    if (lambda <= 1e-15) continue;
    Matrix k(out_dim, in_dim);
    for (int i = 0; i < in_dim; ++i)
      k.col(i) = std::sqrt(lambda) * es.eigenvectors().col(l).segment(static_cast<Eigen::Index>(i) * out_dim, out_dim);
    kraus.push_back(std::move(k));
  }
  return Channel::from_kraus(std::move(kraus));
}

Matrix repair_cptp(const Matrix& choi, int in_dim, int out_dim) {
  Matrix j = clip_psd(choi);
  Matrix t = partial_trace(j, in_dim, out_dim, Subsystem::A);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(t));
  if (es.eigenvalues().minCoeff() < 1e-12) {
    j += 1e-12 * identity(in_dim * out_dim);
    t = partial_trace(j, in_dim, out_dim, Subsystem::A);
    es.compute(hermitian_part(t));
  }
  const RealVector inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const Matrix s = es.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  const Matrix a = kron(s, identity(out_dim));
  return hermitian_part(a * j * a);
}

Matrix project_cptp_dykstra(const Matrix& z, int in_dim, int out_dim, int sweeps, double tolerance) {
  // The affine set needs no correction term in Dykstra's scheme.
  Matrix x = hermitian_part(z);
  Matrix p = Matrix::Zero(x.rows(), x.cols());
  for (int s = 0; s < sweeps; ++s) {
    const Matrix y = project_affine(x, in_dim, out_dim);
    const Matrix w = clip_psd(y + p);
    p += y - w;
    const double change = (w - x).norm();
    x = w;
    if (change < tolerance * std::max(1.0, x.norm())) break;
  }
  return project_affine(x, in_dim, out_dim);
}

namespace {

// Orthonormal basis of Hermitian a x a matrices under Re Tr[A^dagger B].
std::vector<Matrix> hermitian_basis(int a) {
  std::vector<Matrix> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < a; ++j) {
    Matrix e = Matrix::Zero(a, a);
    e(j, j) = 1.0;
    basis.push_back(e);
  }
  for (int j = 0; j < a; ++j)
    for (int k = j + 1; k < a; ++k) {
      Matrix re = Matrix::Zero(a, a);
      re(j, k) = r;
      re(k, j) = r;
      basis.push_back(re);
      Matrix im = Matrix::Zero(a, a);
      im(j, k) = Complex(0.0, -r);
      im(k, j) = Complex(0.0, r);
      basis.push_back(im);
    }
  return basis;
}

struct DualPoint {
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  Matrix positive;
  double theta = 0.0;
};

// theta(Y) = 1/2 ||(Z - Y (x) I)_+||^2 + Tr Y.
DualPoint evaluate_dual(const Matrix& z, const Matrix& y, int out_dim) {
  DualPoint p;
  p.es.compute(hermitian_part(z - kron(y, identity(out_dim))));
  const RealVector plus = p.es.eigenvalues().cwiseMax(0.0);
  p.positive = p.es.eigenvectors() * plus.cast<Complex>().asDiagonal() * p.es.eigenvectors().adjoint();
  p.theta = 0.5 * plus.squaredNorm() + y.trace().real();
  return p;
}

}  // namespace

Matrix project_cptp_newton(const Matrix& z, int in_dim, int out_dim, int max_steps, double tolerance) {
  const int a = in_dim;
  const auto basis = hermitian_basis(a);
  const auto nb = static_cast<Eigen::Index>(basis.size());
  const Matrix zh = hermitian_part(z);
  // Multiplier of the affine projection: Z - Y (x) I already has Tr_out = I.
  Matrix y = (partial_trace(zh, a, out_dim, Subsystem::A) - identity(a)) / static_cast<double>(out_dim);
  double mu = 1e-2;
  DualPoint cur = evaluate_dual(zh, y, out_dim);
  for (int step = 0; step < max_steps; ++step) {
    const Matrix grad_m = identity(a) - partial_trace(cur.positive, a, out_dim, Subsystem::A);
    RealVector g(nb);
    for (Eigen::Index p = 0; p < nb; ++p) g(p) = (basis[p].adjoint() * grad_m).trace().real();
    if (g.norm() <= tolerance * std::max(1.0, zh.norm())) break;

    // Generalized Hessian: Tr_out of the derivative of the PSD projection.
    const RealVector& lambda = cur.es.eigenvalues();
    const Matrix& q = cur.es.eigenvectors();
    const auto n = lambda.size();
    RealMatrix omega(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const double li = lambda(i), lj = lambda(j);
        if (li > 0.0 && lj > 0.0)
          omega(i, j) = 1.0;
        else if (li <= 0.0 && lj <= 0.0)
          omega(i, j) = 0.0;
        else
          omega(i, j) = (std::max(li, 0.0) - std::max(lj, 0.0)) / (li - lj);
      }
    RealMatrix h(nb, nb);
    for (Eigen::Index c = 0; c < nb; ++c) {
      const Matrix dir = q.adjoint() * kron(basis[c], identity(out_dim)) * q;
      const Matrix dp = q * omega.cast<Complex>().cwiseProduct(dir) * q.adjoint();
      const Matrix reduced = partial_trace(dp, a, out_dim, Subsystem::A);
      for (Eigen::Index p = 0; p < nb; ++p) h(p, c) = (basis[p].adjoint() * reduced).trace().real();
    }
    h = 0.5 * (h + h.transpose()).eval();
    h.diagonal().array() += mu * std::min(1.0, g.norm()) + 1e-14;
    const RealVector dir = h.ldlt().solve(-g);

    double t = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 40; ++ls) {
      Matrix trial = y;
      for (Eigen::Index p = 0; p < nb; ++p) trial += t * dir(p) * basis[p];
      DualPoint next = evaluate_dual(zh, trial, out_dim);
      if (next.theta <= cur.theta + 1e-4 * t * g.dot(dir)) {
        y = trial;
        cur = std::move(next);
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
    mu = t == 1.0 ? std::max(mu * 0.1, 1e-10) : std::min(mu * 10.0, 1e4);
  }
  return cur.positive;
}

LinearChannelSolution maximize_linear_over_channels(const LinearChannelProblem& problem, const Matrix& start,
                                                    const RecoveryOptions& options) {
  const int a = problem.in_dim;
  const int b = problem.out_dim;
  const Matrix& c = problem.objective;
  LinearChannelSolution best{start, linear_value(c, start), false, 0};
  const double scale = c.norm();
  if (scale <= 0.0) {
    best.converged = true;
    return best;
  }
  Matrix j = start;
  auto project = [&](const Matrix& z) {
    if (options.projection == ProjectionMethod::Dykstra)
      return project_cptp_dykstra(z, a, b, options.projection_sweeps, options.projection_tol);
    return project_cptp_newton(z, a, b, options.projection_sweeps, options.projection_tol);
  };
  double step = 1.0 / scale;
  std::deque<double> history{best.value};
  for (int it = 1; it <= options.max_iterations; ++it) {
    const Matrix candidate =
        repair_cptp(project(j + step * c), a, b);
    const double value = linear_value(c, candidate);
    if (value > best.value) {
      best.choi = candidate;
      best.value = value;
      step = std::min(step * 1.5, 1e6 / scale);
    } else {
      step = std::max(step * 0.5, 1e-3 / scale);
    }
    j = best.choi;
    best.iterations = it;
    history.push_back(best.value);
    if (static_cast<int>(history.size()) > options.stall_window) {
      if (history.back() - history.front() < options.tol) {
        best.converged = true;
        break;
      }
      history.pop_front();
    }
  }
  return best;
}

Matrix entanglement_objective(const DensityOperator& rho_s, const OutcomeBranch& branch) {
  const Matrix cpsi = purify(rho_s).coefficients();
  const int dr = static_cast<int>(cpsi.rows());
  const int dq = static_cast<int>(cpsi.cols());
  const int dout = static_cast<int>(branch.kraus.front().rows());
  Matrix obj = Matrix::Zero(dout * dq, dout * dq);
  for (const auto& e : branch.kraus) {
    const Matrix w = cpsi * e.transpose();
    Vector u = Vector::Zero(dout * dq);
    for (int r = 0; r < dr; ++r) u += kron(w.row(r).adjoint(), cpsi.row(r).transpose());
    obj += u * u.adjoint();
  }
  return obj;
}

Matrix average_objective(const Ensemble& s, const OutcomeBranch& branch) {
  const auto vectors = s.pure_vectors();
  const int dout = static_cast<int>(branch.kraus.front().rows());
  const int d = s.dim();
  Matrix obj = Matrix::Zero(dout * d, dout * d);
  for (std::size_t x = 0; x < vectors.size(); ++x) {
    const Matrix psi = vectors[x] * vectors[x].adjoint();
    obj += s.entry(x).probability * kron(branch.apply(psi).transpose(), psi);
  }
  return obj;
}

Channel petz_recovery(const DensityOperator& rho_s, const OutcomeBranch& branch) {
  const double p = branch_probability(rho_s, branch);
  if (p < tol::prob) raise(ErrorCode::DegenerateBranch, "branch '" + branch.label + "' has negligible probability");
  const Matrix sigma = branch.apply(rho_s.matrix());
  const Matrix sqrt_rho = sqrt_psd(rho_s.matrix());
  const Matrix inv_sqrt_sigma = pinv_sqrt_psd(sigma);
  std::vector<Matrix> kraus;
  for (const auto& e : branch.kraus) kraus.push_back(sqrt_rho * e.adjoint() * inv_sqrt_sigma);
  // Off the support of sigma the map prepares rho_s.
  const Matrix off = identity(static_cast<int>(sigma.rows())) - support_projector(sigma);
  const auto off_es = eig_hermitian(off);
  const Channel fill = replacement_channel(static_cast<int>(sigma.rows()), rho_s);
  for (Eigen::Index l = 0; l < off_es.values.size(); ++l) {
    if (off_es.values(l) < 0.5) continue;
    const Matrix proj = off_es.vectors.col(l) * off_es.vectors.col(l).adjoint();
    for (const auto& k : fill.kraus()) kraus.push_back(k * proj);
  }
  return Channel::from_kraus(std::move(kraus));
}

double entanglement_fidelity_with(const DensityOperator& rho_s, const QuantumInstrument& instr,
                                  const RecoveryChannel& recovery) {
  if (recovery.per_outcome.size() != instr.size()) raise(ErrorCode::DimMismatch, "one recovery channel per outcome required");
  double f = 0.0;
  for (std::size_t m = 0; m < instr.size(); ++m)
    for (const auto& r : recovery.per_outcome[m].kraus())
      for (const auto& e : instr.branch(m).kraus) f += std::norm((r * e * rho_s.matrix()).trace());
  return std::clamp(f, 0.0, 1.0);
}

double average_fidelity_with(const Ensemble& s, const QuantumInstrument& instr, const RecoveryChannel& recovery) {
  if (recovery.per_outcome.size() != instr.size()) raise(ErrorCode::DimMismatch, "one recovery channel per outcome required");
  double f = 0.0;
  for (const auto& entry : s.entries()) {
    Matrix out = Matrix::Zero(s.dim(), s.dim());
    for (std::size_t m = 0; m < instr.size(); ++m)
      out += recovery.per_outcome[m].apply(instr.branch(m).apply(entry.state.matrix()));
    f += entry.probability * fidelity(DensityOperator::from_matrix(hermitian_part(out)), entry.state);
  }
  return std::clamp(f, 0.0, 1.0);
}

namespace {

template <typename ObjectiveFn>
RecoveryResult optimize_branches(const DensityOperator& rho_s, const QuantumInstrument& instr,
                                 const RecoveryOptions& options, const RecoveryChannel* warm_start,
                                 ObjectiveFn&& objective) {
  const int d = instr.in_dim();
  const int dout = instr.out_dim();
  RecoveryResult result;
  for (std::size_t m = 0; m < instr.size(); ++m) {
    const OutcomeBranch& branch = instr.branch(m);
    if (branch_probability(rho_s, branch) < tol::prob) {
      result.recovery.per_outcome.push_back(replacement_channel(dout, rho_s));
      result.recovery.provenance.push_back(RecoveryProvenance::Trivial);
      continue;
    }
    const Matrix start = warm_start ? warm_start->per_outcome.at(m).choi() : petz_recovery(rho_s, branch).choi();
    const LinearChannelSolution sol =
        maximize_linear_over_channels({objective(branch), dout, d}, start, options);
    result.recovery.per_outcome.push_back(channel_from_choi(sol.choi, dout, d));
    result.recovery.provenance.push_back(RecoveryProvenance::Optimized);
    result.objective += sol.value;
    result.converged = result.converged && sol.converged;
    result.iterations = std::max(result.iterations, sol.iterations);
  }
  return result;
}

}  // namespace

RecoveryResult optimize_recovery_entanglement(const DensityOperator& rho_s, const QuantumInstrument& instr,
                                              const RecoveryOptions& options) {
  if (rho_s.dim() != instr.in_dim()) raise(ErrorCode::DimMismatch, "state dimension does not match instrument input");
  RecoveryResult result = optimize_branches(rho_s, instr, options, nullptr,
                                            [&](const OutcomeBranch& b) { return entanglement_objective(rho_s, b); });
  result.fidelity = entanglement_fidelity_with(rho_s, instr, result.recovery);
  return result;
}

RecoveryResult optimize_recovery_average(const Ensemble& s, const QuantumInstrument& instr,
                                         const RecoveryOptions& options, const RecoveryChannel* warm_start) {
  if (s.dim() != instr.in_dim()) raise(ErrorCode::DimMismatch, "ensemble dimension does not match instrument input");
  if (!s.is_pure()) raise(ErrorCode::MixedStates, "average-fidelity recovery needs a pure ensemble");
  const DensityOperator rho_s = average_state(s);
  RecoveryResult result = optimize_branches(rho_s, instr, options, warm_start,
                                            [&](const OutcomeBranch& b) { return average_objective(s, b); });
  result.fidelity = average_fidelity_with(s, instr, result.recovery);
  return result;
}

}  // namespace tradeoff
