#pragma once

// State ensembles and POVMs, related through a purification of the average state.
// Pure ensembles also carry the irreducibility measures eta / zeta.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tradeoff/qmat.hpp"

namespace tradeoff {

struct EnsembleEntry {
  std::string label;
  double probability;
  DensityOperator state;
};

class Ensemble {
 public:
  /// Probabilities must be > 0 and sum to 1 within tol::normalization; states share one dimension.
  static Ensemble from_entries(std::vector<EnsembleEntry> entries);
  static Ensemble from_pure_states(const std::vector<Vector>& states, const std::vector<double>& probabilities);

  const std::vector<EnsembleEntry>& entries() const noexcept { return entries_; }
  const EnsembleEntry& entry(std::size_t i) const { return entries_.at(i); }
  std::size_t size() const noexcept { return entries_.size(); }
  int dim() const noexcept { return dim_; }

  bool is_pure() const;
  double min_probability() const;
  /// State vectors of a pure ensemble; throws MixedStates otherwise.
  std::vector<Vector> pure_vectors() const;

 private:
  Ensemble(std::vector<EnsembleEntry> entries, int dim) : entries_(std::move(entries)), dim_(dim) {}
  std::vector<EnsembleEntry> entries_;
  int dim_;
};

struct PovmElement {
  std::string label;
  Matrix effect;
};

class Povm {
 public:
  /// Elements must be PSD within tol::psd and sum to the identity within tol::normalization.
  static Povm from_elements(std::vector<PovmElement> elements);
  /// Rank-one POVM { weight |b_j><b_j| } from the columns of several orthonormal bases.
  static Povm from_bases(const std::vector<Matrix>& bases);

  const std::vector<PovmElement>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  int dim() const noexcept { return dim_; }

 private:
  Povm(std::vector<PovmElement> elements, int dim) : elements_(std::move(elements)), dim_(dim) {}
  std::vector<PovmElement> elements_;
  int dim_;
};

DensityOperator average_state(const Ensemble& s);

/// chi(s) = S(rho_s) - sum_x p(x) S(rho_x), in bits.
double entropy_defect(const Ensemble& s);

/// p(x) rho_x = Tr_R[(R_x (x) I) Psi]; outcomes below tol::prob are dropped.
Ensemble ensemble_from_povm(const BipartitePureState& psi, const Povm& reference_povm);

/// Columns are the Fourier basis (1/sqrt d) sum_j omega^{jk} |j>.
Matrix fourier_basis(int d);

/// 2d pure states induced on Q by the POVM {1/2 |e_i><e_i|, 1/2 |f_k><f_k|} on R, where e is the
/// eigenbasis of the reference marginal and f the Fourier basis relative to it.
/// Throws RankDeficient when rho has an eigenvalue below tol::eig.
Ensemble christandl_winter_ensemble(const DensityOperator& rho);

struct CompletePath {
  std::vector<std::size_t> labels;
  std::size_t length() const noexcept { return labels.size(); }
};

struct IrreducibilityResult {
  double eta = 0.0;
  double zeta = 0.0;
  double min_p = 0.0;
  CompletePath witness;
};

/// |<psi_i|psi_j>| with entries below tol::overlap set to exactly zero and a unit diagonal.
RealMatrix overlap_matrix(const Ensemble& s);

/// Bottleneck DP over (visited subset, last state, walk length). Walks of length <= n_max
/// (default K^2) are searched; the witness is the shortest optimal walk, lexicographically
/// smallest among those. K = 1 yields eta = 1. Throws MixedStates for impure entries.
IrreducibilityResult eta(const Ensemble& s, std::optional<int> n_max = std::nullopt);

/// Same result as eta(); zeta = eta * min_x p(x) is filled in both.
IrreducibilityResult zeta(const Ensemble& s, std::optional<int> n_max = std::nullopt);

}  // namespace tradeoff
