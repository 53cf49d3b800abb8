#pragma once

// Quantum instruments and channels in Kraus form, with their dilations
// and the hybrid quantum-classical channelization.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tradeoff/qmat.hpp"

namespace tradeoff {

/// A CPTP map Q -> Q' given by Kraus operators (out_dim x in_dim each).
class Channel {
 public:
  /// Validates shapes and sum_k K_k^dagger K_k = I within tol::normalization.
  static Channel from_kraus(std::vector<Matrix> kraus);

  const std::vector<Matrix>& kraus() const noexcept { return kraus_; }
  int in_dim() const noexcept { return in_dim_; }
  int out_dim() const noexcept { return out_dim_; }

  /// Acts on any in_dim x in_dim operator (not only states).
  Matrix apply(const Matrix& x) const;

  /// Choi matrix sum_ij |i><j| (x) E(|i><j|), input factor first.
  Matrix choi() const;

 private:
  Channel(std::vector<Matrix> kraus, int in_dim, int out_dim)
      : kraus_(std::move(kraus)), in_dim_(in_dim), out_dim_(out_dim) {}
  std::vector<Matrix> kraus_;
  int in_dim_;
  int out_dim_;
};

struct OutcomeBranch {
  std::string label;
  std::vector<Matrix> kraus;

  Matrix apply(const Matrix& x) const;
  /// Heisenberg-picture effect sum_k E_k^dagger E_k.
  Matrix effect() const;
};

class QuantumInstrument {
 public:
  /// Validates branch shapes and trace preservation of the summed map.
  static QuantumInstrument from_branches(std::vector<OutcomeBranch> outcomes);

  const std::vector<OutcomeBranch>& outcomes() const noexcept { return outcomes_; }
  const OutcomeBranch& branch(std::size_t m) const { return outcomes_.at(m); }
  std::size_t size() const noexcept { return outcomes_.size(); }
  int in_dim() const noexcept { return in_dim_; }
  int out_dim() const noexcept { return out_dim_; }
  std::size_t total_kraus() const;

 private:
  QuantumInstrument(std::vector<OutcomeBranch> outcomes, int in_dim, int out_dim)
      : outcomes_(std::move(outcomes)), in_dim_(in_dim), out_dim_(out_dim) {}
  std::vector<OutcomeBranch> outcomes_;
  int in_dim_;
  int out_dim_;
};

/// Stinespring isometry V: Q -> Q' (x) A with row index q' * anc_dim + a.
struct StinespringDilation {
  Matrix isometry;
  int in_dim = 0;
  int out_dim = 0;
  int anc_dim = 0;
};

struct BranchOutcome {
  double probability = 0.0;
  std::optional<DensityOperator> state;
};

BranchOutcome apply_branch(const QuantumInstrument& instr, std::size_t m, const DensityOperator& rho);

/// Channel Q -> Q' (x) X with Kraus operators E_{m,k} (x) |m>; register index is the minor index.
Channel channelize(const QuantumInstrument& instr);

StinespringDilation stinespring(const Channel& ch);

/// Tr_A of the dilation; rebuilds the original channel.
Channel channel_from_dilation(const StinespringDilation& dil);

/// Tr_{Q'} of the dilation: the map Q -> A.
Channel complement_channel(const StinespringDilation& dil);

Matrix branch_choi(const OutcomeBranch& branch, int in_dim);
int branch_kraus_rank(const OutcomeBranch& branch, int in_dim);
bool is_single_kraus(const QuantumInstrument& instr);

/// Haar isometry Q -> Q' (x) outcome register (x) multiplicity register, cut into branches.
QuantumInstrument random_instrument(std::uint64_t seed, int d, int n_outcomes, int kraus_per_outcome);

// Standard instruments used by scenarios and tests.
QuantumInstrument identity_instrument(int d);
/// Projective measurement in the orthonormal basis given by the columns of `basis`.
QuantumInstrument von_neumann_instrument(const Matrix& basis);
QuantumInstrument channel_instrument(const Channel& ch, std::string label = "0");
/// Branch m applies sqrt(weight_m) U_m.
QuantumInstrument unitary_branch_instrument(const std::vector<Matrix>& unitaries, const std::vector<double>& weights);
/// rho -> (1 - p) rho + p I / d.
Channel depolarizing_channel(int d, double p);
/// Kraus operators are the computational projectors.
Channel dephasing_channel(int d);
Channel identity_channel(int d);

}  // namespace tradeoff
