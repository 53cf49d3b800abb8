#pragma once

// Recovery channels R_m: Q' -> Q maximizing entanglement fidelity or average
// output fidelity. Each branch objective is linear in the Choi matrix of R_m,
// maximized over the CPTP set by projected ascent.

#include <vector>

#include "tradeoff/ensemble.hpp"
#include "tradeoff/instrument.hpp"

namespace tradeoff {

enum class RecoveryProvenance { Optimized, Petz, Trivial, Supplied };

const char* to_string(RecoveryProvenance p);

struct RecoveryChannel {
  std::vector<Channel> per_outcome;
  std::vector<RecoveryProvenance> provenance;
};

enum class ProjectionMethod { DualNewton, Dykstra };

struct RecoveryOptions {
  /// Stop once the best objective improved by less than this over `stall_window` iterations.
  double tol = 1e-9;
  int stall_window = 50;
  int max_iterations = 5000;
  ProjectionMethod projection = ProjectionMethod::DualNewton;
  /// Newton steps or Dykstra sweeps per projection onto the CPTP set.
  int projection_sweeps = 50;
  double projection_tol = 1e-10;
};

struct RecoveryResult {
  RecoveryChannel recovery;
  /// Direct evaluation of the fidelity with the returned channels.
  double fidelity = 0.0;
  /// Sum of the optimized branch objectives; agrees with `fidelity` to round-off.
  double objective = 0.0;
  bool converged = true;
  int iterations = 0;
};

/// Kraus decomposition of a CPTP Choi matrix (input factor first).
Channel channel_from_choi(const Matrix& choi, int in_dim, int out_dim);

/// Exactly trace-preserving completely positive map nearest in spirit to `choi`:
/// clips negative eigenvalues, then applies (T^{-1/2} (x) I) . (T^{-1/2} (x) I), T = Tr_out.
Matrix repair_cptp(const Matrix& choi, int in_dim, int out_dim);

/// Projection onto {J >= 0, Tr_out J = I} by Dykstra's alternating projections.
Matrix project_cptp_dykstra(const Matrix& z, int in_dim, int out_dim, int sweeps, double tolerance);

/// Same projection through the dual: J = (Z - Y (x) I)_+ with Y solving Tr_out J = I by
/// semismooth Newton, started from the multiplier of the affine projection.
Matrix project_cptp_newton(const Matrix& z, int in_dim, int out_dim, int max_steps, double tolerance);

struct LinearChannelProblem {
  /// Objective Tr[C J] with J the Choi matrix on (in (x) out).
  Matrix objective;
  int in_dim = 0;
  int out_dim = 0;
};

struct LinearChannelSolution {
  Matrix choi;
  double value = 0.0;
  bool converged = true;
  int iterations = 0;
};

/// Projected ascent on Tr[C J] over CPTP Choi matrices, starting from the feasible `start`.
LinearChannelSolution maximize_linear_over_channels(const LinearChannelProblem& problem, const Matrix& start,
                                                    const RecoveryOptions& options);

/// Branch objective matrices: Tr[C_m J(R_m)] is the branch contribution to the fidelity.
Matrix entanglement_objective(const DensityOperator& rho_s, const OutcomeBranch& branch);
Matrix average_objective(const Ensemble& s, const OutcomeBranch& branch);

/// Transpose-channel recovery sqrt(rho) E^dagger(E(rho)^{-1/2} . E(rho)^{-1/2}) sqrt(rho),
/// completed on the orthogonal complement of supp E(rho) so that it is trace preserving.
/// Throws DegenerateBranch when p(m|rho) < tol::prob.
Channel petz_recovery(const DensityOperator& rho_s, const OutcomeBranch& branch);

/// Entanglement fidelity evaluated directly: sum_m sum_{j,k} |Tr[R_{m,j} E_{m,k} rho_s]|^2.
double entanglement_fidelity_with(const DensityOperator& rho_s, const QuantumInstrument& instr,
                                  const RecoveryChannel& recovery);

/// sum_x p(x) F(sum_m R_m(E_m(rho_x)), rho_x), using the general fidelity.
double average_fidelity_with(const Ensemble& s, const QuantumInstrument& instr, const RecoveryChannel& recovery);

RecoveryResult optimize_recovery_entanglement(const DensityOperator& rho_s, const QuantumInstrument& instr,
                                              const RecoveryOptions& options = {});

/// Pure ensembles only (MixedStates otherwise). When `warm_start` is given, each branch starts
/// from it and the result never falls below its value.
RecoveryResult optimize_recovery_average(const Ensemble& s, const QuantumInstrument& instr,
                                         const RecoveryOptions& options = {},
                                         const RecoveryChannel* warm_start = nullptr);

}  // namespace tradeoff
