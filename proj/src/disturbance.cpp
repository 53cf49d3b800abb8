#include "tradeoff/disturbance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tradeoff/errors.hpp"
#include "tradeoff/info_gain.hpp"
#include "tradeoff/tolerances.hpp"

namespace tradeoff {

namespace {

// Row-major vectorization of a coefficient matrix, index r * cols + c.
Vector row_major(const Matrix& m) {
  Vector v(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r) v.segment(r * m.cols(), m.cols()) = m.row(r).transpose();
  return v;
}

// Entropy of sum_k |v_k><v_k| through the Gram matrix of the v_k.
double gram_entropy(const std::vector<Vector>& vectors) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = vectors[i].dot(vectors[j]);
  return block_entropy(g);
}

double holevo_of(const std::vector<double>& p, const std::vector<Matrix>& states) {
  Matrix avg = Matrix::Zero(states.front().rows(), states.front().cols());
  double chi = 0.0;
  for (std::size_t x = 0; x < states.size(); ++x) {
    avg += p[x] * states[x];
    chi -= p[x] * block_entropy(states[x]);
  }
  return chi + block_entropy(avg);
}

void require_dims(int d, const QuantumInstrument& instr) {
  if (d != instr.in_dim()) raise(ErrorCode::DimMismatch, "state dimension does not match instrument input");
}

}  // namespace

double quantum_disturbance(const DensityOperator& rho_s, const QuantumInstrument& instr) {
  require_dims(rho_s.dim(), instr);
  const Matrix c = purify(rho_s).coefficients();
  double s_out = 0.0;
  double s_joint = 0.0;
  for (const auto& b : instr.outcomes()) {
    s_out += block_entropy(b.apply(rho_s.matrix()));
    std::vector<Vector> vectors;
    for (const auto& e : b.kraus) vectors.push_back(row_major(c * e.transpose()));
    s_joint += gram_entropy(vectors);
  }
  const double delta = von_neumann_entropy(rho_s) - (s_out - s_joint);
  if (delta < -1e-9) raise(ErrorCode::InternalError, "quantum disturbance is negative");
  return std::max(0.0, delta);
}

double channel_disturbance(const DensityOperator& rho, const Channel& ch) {
  if (rho.dim() != ch.in_dim()) raise(ErrorCode::DimMismatch, "state dimension does not match channel input");
  const Matrix c = purify(rho).coefficients();
  const auto n = static_cast<Eigen::Index>(c.rows()) * ch.out_dim();
  Matrix joint = Matrix::Zero(n, n);
  for (const auto& k : ch.kraus()) {
    const Vector v = row_major(c * k.transpose());
    joint += v * v.adjoint();
  }
  return von_neumann_entropy(rho) - coherent_information(joint, static_cast<int>(c.rows()), ch.out_dim());
}

double output_holevo(const Ensemble& s, const Channel& ch) {
  std::vector<double> p;
  std::vector<Matrix> outputs;
  for (const auto& e : s.entries()) {
    p.push_back(e.probability);
    outputs.push_back(ch.apply(e.state.matrix()));
  }
  return holevo_of(p, outputs);
}

EntropyDefectLoss entropy_defect_loss(const Ensemble& s, const QuantumInstrument& instr) {
  require_dims(s.dim(), instr);
  EntropyDefectLoss out;
  out.chi_input = entropy_defect(s);
  out.chi_output = output_holevo(s, channelize(instr));
  out.delta_chi = out.chi_input - out.chi_output;
  if (out.delta_chi < -1e-9) raise(ErrorCode::InternalError, "entropy defect increased under the instrument");

  const MutualInformation mi = mutual_information(s, instr);
  out.mutual_info = mi.bits;
  for (std::size_t m = 0; m < instr.size(); ++m) {
    const double pm = mi.joint.p.col(static_cast<Eigen::Index>(m)).sum();
    out.outcome_probability.push_back(pm);
    double chi_m = 0.0;
    if (pm >= tol::prob) {
      std::vector<double> p;
      std::vector<Matrix> states;
      for (std::size_t x = 0; x < s.size(); ++x) {
        const double pxm = mi.joint.p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(m));
        if (pxm <= 0.0) continue;
        p.push_back(pxm / pm);
        // E_m(rho_x) / p(m|x) weighted by p(x|m) equals p(x) E_m(rho_x) / p(m).
        states.push_back(instr.branch(m).apply(s.entry(x).state.matrix()) * (s.entry(x).probability / pxm));
      }
      chi_m = holevo_of(p, states);
    }
    out.conditional_chi.push_back(chi_m);
    out.conditional_sum += pm * chi_m;
  }
  out.decomposition_residual = std::abs(out.chi_output - out.mutual_info - out.conditional_sum);
  return out;
}

Lemma1Check lemma1_identity_check(const Ensemble& s, const QuantumInstrument& instr) {
  require_dims(s.dim(), instr);
  if (!s.is_pure()) raise(ErrorCode::MixedStates, "the identity holds for pure ensembles only");
  const Channel hybrid = channelize(instr);
  const StinespringDilation dil = stinespring(hybrid);
  const Channel main = channel_from_dilation(dil);
  Lemma1Check out;
  out.delta = channel_disturbance(average_state(s), main);
  out.delta_chi = entropy_defect(s) - output_holevo(s, main);
  out.chi_complement = output_holevo(s, complement_channel(dil));
  out.slack = std::abs(out.delta - out.delta_chi - out.chi_complement);
  return out;
}

double bound_f1(double eps, int k, int d) {
  const double limit = 2.0 / (std::numbers::e * std::numbers::e);
  if (!(eps >= 0.0 && eps <= limit)) raise(ErrorCode::DomainError, "f1 is defined on [0, 2/e^2]");
  if (eps == 0.0) return 0.0;
  return 2.0 * k * std::sqrt(eps) * std::log2(d / eps);
}

double bound_f2(double eps, int n, int d) {
  if (!(eps >= 0.0 && eps <= 1.0)) raise(ErrorCode::DomainError, "f2 is defined on [0, 1]");
  if (eps == 0.0) return 0.0;
  return 4.0 * n * std::sqrt(eps) * std::log2(d / eps);
}

double bound_f(double x, int n, int d) {
  if (!(x >= 0.0 && x <= 1.0)) raise(ErrorCode::DomainError, "f is defined on [0, 1]");
  if (x == 0.0) return 0.0;
  return 6.0 * n * std::sqrt(x) * std::log2(d / x);
}

DisturbanceReport disturbance_report(const Ensemble& s, const QuantumInstrument& instr, const RecoveryOptions& options) {
  require_dims(s.dim(), instr);
  if (!s.is_pure()) raise(ErrorCode::MixedStates, "disturbance report needs a pure ensemble");
  const DensityOperator rho_s = average_state(s);
  DisturbanceReport out;
  const RecoveryResult e = optimize_recovery_entanglement(rho_s, instr, options);
  const RecoveryResult av = optimize_recovery_average(s, instr, options, &e.recovery);
  out.f_e = e.fidelity;
  out.f_av = av.fidelity;
  out.recovery_e = e.recovery;
  out.recovery_av = av.recovery;
  out.converged = e.converged && av.converged;
  out.delta = quantum_disturbance(rho_s, instr);
  out.entropy = von_neumann_entropy(rho_s);
  out.delta_above_entropy = out.delta > out.entropy + 1e-9;
  out.delta_chi = entropy_defect_loss(s, instr).delta_chi;
  out.chi_complement = output_holevo(s, complement_channel(stinespring(channelize(instr))));
  return out;
}

TheoremOneReport theorem_one_report(const Ensemble& s, const DisturbanceReport& disturbance,
                                    const IrreducibilityResult& irreducibility) {
  TheoremOneReport out;
  out.f_av = disturbance.f_av;
  out.f_e = disturbance.f_e;
  out.lhs1 = (1.0 - out.f_av) * (1.0 - out.f_av) / 4.0;
  out.lhs2 = (1.0 - out.f_e) * (1.0 - out.f_e) / 4.0;
  out.delta = disturbance.delta;
  out.eta = irreducibility.eta;
  out.zeta = irreducibility.zeta;
  out.path_length = static_cast<int>(irreducibility.witness.length());
  out.states = static_cast<int>(s.size());
  out.slack_a = out.lhs2 - out.lhs1;
  out.slack_b = out.delta - out.lhs2;
  out.zeta_positive = out.zeta > 0.0;
  out.fidelity_condition = out.f_av >= 1.0 - out.zeta * out.zeta;
  if (out.zeta_positive) {
    out.x = std::sqrt(std::max(0.0, 1.0 - out.f_av)) / out.zeta;
    out.x_in_domain = *out.x <= 1.0;
  }
  out.applicable = out.zeta_positive && out.x_in_domain && out.fidelity_condition;
  if (out.applicable) {
    out.rhs = bound_f(*out.x, out.path_length, s.dim());
    out.slack_c = *out.rhs - out.delta;
  }
  return out;
}

TheoremOneReport theorem_one_report(const Ensemble& s, const QuantumInstrument& instr, const RecoveryOptions& options) {
  return theorem_one_report(s, disturbance_report(s, instr, options), eta(s));
}

double eq17_lower_check(const DensityOperator& rho_s, const QuantumInstrument& instr, const RecoveryOptions& options) {
  const double f_e = optimize_recovery_entanglement(rho_s, instr, options).fidelity;
  return quantum_disturbance(rho_s, instr) - (1.0 - f_e) * (1.0 - f_e) / 4.0;
}

Eq18Check eq18_check(const DensityOperator& rho_s, const QuantumInstrument& instr) {
  return {quantum_disturbance(rho_s, instr) - quantum_info_gain(rho_s, instr), is_single_kraus(instr)};
}

CwSandwich cw_sandwich_check(const DensityOperator& rho, const QuantumInstrument& instr) {
  const Ensemble cw = christandl_winter_ensemble(rho);
  CwSandwich out;
  out.delta = quantum_disturbance(rho, instr);
  out.delta_chi = entropy_defect_loss(cw, instr).delta_chi;
  out.lower_slack = out.delta - out.delta_chi;
  out.upper_slack = 2.0 * out.delta_chi - out.delta;
  return out;
}

}  // namespace tradeoff
