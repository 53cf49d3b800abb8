#pragma once

// Information gained by an instrument about an ensemble, classical and quantum.
// Informationally complete POVMs and their dual frames feed the norm bound t(x).

#include <cstdint>
#include <vector>

#include "tradeoff/ensemble.hpp"
#include "tradeoff/instrument.hpp"

namespace tradeoff {

/// p(x, m) with ensemble labels on rows and outcomes on columns.
struct JointDistribution {
  RealMatrix p;

  RealVector marginal_x() const { return p.rowwise().sum(); }
  RealVector marginal_m() const { return p.colwise().sum().transpose(); }
  /// Bits; cells with p(m) < tol::prob are dropped.
  double mutual_information() const;
};

struct MutualInformation {
  JointDistribution joint;
  double bits = 0.0;
};

/// p(x, m) = p(x) Tr[E_m(rho_x)].
MutualInformation mutual_information(const Ensemble& s, const QuantumInstrument& instr);

/// {p(m), tau^R_m} induced on the canonical reference by the instrument; negligible outcomes dropped.
Ensemble reference_ensemble(const DensityOperator& rho_s, const QuantumInstrument& instr);

/// iota = S(rho^R) - sum_m p(m) S(tau^R_m).
double quantum_info_gain(const DensityOperator& rho_s, const QuantumInstrument& instr);

struct AccessibleSearch {
  std::uint64_t seed = 0;
  /// Qubit: Fibonacci-sphere directions for projective measurements on the reference.
  int sphere_points = 2000;
  /// Qubit: grid optima refined by pattern search.
  int refine_starts = 3;
  /// d >= 3: random projective and rank-one restarts, each refined by hill climbing.
  int restarts = 48;
  int climb_steps = 120;
};

struct AccessibleInfoResult {
  double bits = 0.0;
  /// Index of the winning candidate in evaluation order (ties keep the earliest).
  std::size_t candidate = 0;
};

/// Best I(X:X^) over ensembles with average rho_s, searched through POVMs on the reference.
/// Always a valid lower bound on the accessible information.
AccessibleInfoResult accessible_info_lower(const DensityOperator& rho_s, const QuantumInstrument& instr,
                                           const AccessibleSearch& search = {}, const std::vector<Povm>& extra_candidates = {});

struct DualFrame {
  Povm povm;
  std::vector<Matrix> duals;
  /// max_m ||K_m||_1.
  double frame_const = 0.0;

  /// sum_m Tr[X P_m] K_m.
  Matrix reconstruct(const Matrix& x) const;
};

/// Canonical dual K_m = F^{-1}(P_m) of the frame operator F(X) = sum_m Tr[X P_m] P_m.
/// Throws NotInfoComplete when F has rank below d^2.
DualFrame build_dual_frame(const Povm& povm);

/// Complete set of mutually unbiased bases for d = 2 or odd prime d, each element weighted 1/(d+1).
Povm mub_povm(int d);
/// Tetrahedral qubit SIC POVM.
Povm qubit_sic_povm();
/// Informationally complete POVM used by the report for dimension d.
Povm default_frame_povm(int d);

/// t(x) = x log2(2 sqrt(d-1) / x) for 0 < x <= 1, t(0) = 0. Throws DomainError outside [0, 1].
double t_bound(double x, int d);

struct InfoReport {
  double iota = 0.0;
  double i_acc_lower = 0.0;
  /// Holevo side: iota itself.
  double i_acc_upper = 0.0;
  /// Mutual information between the reference ensemble and the frame POVM outcome.
  double frame_mutual_info = 0.0;
  double frame_const = 0.0;
  /// c sqrt(2 I_frame) before clamping.
  double frame_argument = 0.0;
  bool bound_saturated = false;
  double t_bound = 0.0;
  /// sum_m p(m) ||tau_m - rho^R||_1.
  double norm_sum = 0.0;

  double holevo_slack = 0.0;  // iota - i_acc_lower
  double t_slack = 0.0;       // t_bound - iota (asserted only when not saturated)
  double norm_slack = 0.0;    // frame_argument - norm_sum
};

InfoReport info_equivalence_report(const DensityOperator& rho_s, const QuantumInstrument& instr, const DualFrame& frame,
                                   const AccessibleSearch& search = {});

}  // namespace tradeoff
