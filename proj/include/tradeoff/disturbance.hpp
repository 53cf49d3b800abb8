#pragma once

// Disturbance quantities and the information-disturbance inequalities.

#include <optional>
#include <vector>

#include "tradeoff/ensemble.hpp"
#include "tradeoff/instrument.hpp"
#include "tradeoff/recovery.hpp"

namespace tradeoff {

/// delta = S(rho_s) - I_c(R > Q'X) on the channelized output, evaluated block by block.
/// Throws InternalError when delta < -1e-9. Values above S(rho_s) are returned unchanged.
double quantum_disturbance(const DensityOperator& rho_s, const QuantumInstrument& instr);

/// S(rho) - I_c(R > out) of (I (x) ch)(Psi), with the full output operator.
double channel_disturbance(const DensityOperator& rho, const Channel& ch);

/// Holevo quantity of { p(x), ch(rho_x) }.
double output_holevo(const Ensemble& s, const Channel& ch);

struct EntropyDefectLoss {
  double chi_input = 0.0;
  /// chi(M(s)) evaluated on the channelized outputs.
  double chi_output = 0.0;
  double delta_chi = 0.0;
  double mutual_info = 0.0;
  std::vector<double> outcome_probability;
  /// chi of the conditional ensembles { p(x|m), E_m(rho_x) / p(m|x) }.
  std::vector<double> conditional_chi;
  double conditional_sum = 0.0;
  /// |chi_output - mutual_info - conditional_sum|.
  double decomposition_residual = 0.0;
};

EntropyDefectLoss entropy_defect_loss(const Ensemble& s, const QuantumInstrument& instr);

struct Lemma1Check {
  double delta = 0.0;
  double delta_chi = 0.0;
  double chi_complement = 0.0;
  double slack = 0.0;
};

/// delta and the complement go through the Stinespring dilation of the channelized instrument.
/// Throws MixedStates for impure ensembles.
Lemma1Check lemma1_identity_check(const Ensemble& s, const QuantumInstrument& instr);

/// 2K sqrt(eps) log2(d / eps) on (0, 2/e^2]; 0 at eps = 0.
double bound_f1(double eps, int k, int d);
/// 4N sqrt(eps) log2(d / eps) on (0, 1]; 0 at eps = 0.
double bound_f2(double eps, int n, int d);
/// 6N sqrt(x) log2(d / x) on (0, 1]; 0 at x = 0.
double bound_f(double x, int n, int d);

struct DisturbanceReport {
  double f_av = 0.0;
  double f_e = 0.0;
  double delta = 0.0;
  double delta_chi = 0.0;
  double chi_complement = 0.0;
  double entropy = 0.0;
  /// delta > S(rho_s) + 1e-9: logged, never asserted.
  bool delta_above_entropy = false;
  RecoveryChannel recovery_av;
  RecoveryChannel recovery_e;
  bool converged = true;
};

/// Pure ensembles only. f_av is optimized from the f_e-optimal recovery, so f_av >= f_e.
DisturbanceReport disturbance_report(const Ensemble& s, const QuantumInstrument& instr, const RecoveryOptions& options = {});

struct TheoremOneReport {
  double f_av = 0.0;
  double f_e = 0.0;
  double lhs1 = 0.0;
  double lhs2 = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double zeta = 0.0;
  int path_length = 0;
  int states = 0;
  /// sqrt(1 - f_av) / zeta; unset when zeta = 0.
  std::optional<double> x;
  std::optional<double> rhs;
  bool zeta_positive = false;
  bool x_in_domain = false;
  bool fidelity_condition = false;
  bool applicable = false;

  double slack_a = 0.0;  // lhs2 - lhs1
  double slack_b = 0.0;  // delta - lhs2
  std::optional<double> slack_c;  // rhs - delta
};

TheoremOneReport theorem_one_report(const Ensemble& s, const DisturbanceReport& disturbance,
                                    const IrreducibilityResult& irreducibility);
TheoremOneReport theorem_one_report(const Ensemble& s, const QuantumInstrument& instr, const RecoveryOptions& options = {});

/// delta - (1 - f_e)^2 / 4.
double eq17_lower_check(const DensityOperator& rho_s, const QuantumInstrument& instr, const RecoveryOptions& options = {});

struct Eq18Check {
  double slack = 0.0;
  bool equality_expected = false;
};

/// delta - iota; equality expected for single-Kraus instruments.
Eq18Check eq18_check(const DensityOperator& rho_s, const QuantumInstrument& instr);

struct CwSandwich {
  double delta = 0.0;
  double delta_chi = 0.0;
  double lower_slack = 0.0;  // delta - delta_chi
  double upper_slack = 0.0;  // 2 delta_chi - delta
};

/// Throws RankDeficient when rho is not full rank.
CwSandwich cw_sandwich_check(const DensityOperator& rho, const QuantumInstrument& instr);

}  // namespace tradeoff
