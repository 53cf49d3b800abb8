#include "tradeoff/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tradeoff/errors.hpp"
#include "tradeoff/tolerances.hpp"

namespace tradeoff {

Ensemble Ensemble::from_entries(std::vector<EnsembleEntry> entries) {
  if (entries.empty()) raise(ErrorCode::InvalidParams, "ensemble has no entries");
  const int d = entries.front().state.dim();
  double total = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].state.dim() != d) raise(ErrorCode::DimMismatch, "ensemble entries have different dimensions");
    if (!(entries[i].probability > 0.0)) {
      raise(ErrorCode::InvalidParams, "ensemble entry " + std::to_string(i) + " has nonpositive probability");
    }
    total += entries[i].probability;
  }
  if (std::abs(total - 1.0) > tol::normalization) {
    std::ostringstream os;
    os << "ensemble probabilities sum to " << total;
    raise(ErrorCode::InvalidParams, os.str());
  }
  return Ensemble(std::move(entries), d);
}

Ensemble Ensemble::from_pure_states(const std::vector<Vector>& states, const std::vector<double>& probabilities) {
  if (states.size() != probabilities.size()) raise(ErrorCode::InvalidParams, "one probability per state required");
  std::vector<EnsembleEntry> entries;
  for (std::size_t i = 0; i < states.size(); ++i)
    entries.push_back({std::to_string(i), probabilities[i], DensityOperator::from_pure(states[i])});
  return from_entries(std::move(entries));
}

bool Ensemble::is_pure() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const EnsembleEntry& e) { return e.state.is_pure(tol::purity); });
}

double Ensemble::min_probability() const {
  double p = 1.0;
  for (const auto& e : entries_) p = std::min(p, e.probability);
  return p;
}

std::vector<Vector> Ensemble::pure_vectors() const {
  std::vector<Vector> out;
  out.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!entries_[i].state.is_pure(tol::purity))
      raise(ErrorCode::MixedStates, "ensemble entry " + std::to_string(i) + " is not pure");
    out.push_back(entries_[i].state.dominant_vector());
  }
  return out;
}

Povm Povm::from_elements(std::vector<PovmElement> elements) {
  if (elements.empty()) raise(ErrorCode::InvalidParams, "POVM has no elements");
  const auto d = elements.front().effect.rows();
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const Matrix& e = elements[i].effect;
    if (e.rows() != d || e.cols() != d) raise(ErrorCode::DimMismatch, "POVM elements have different shapes");
    const auto es = eig_hermitian(e);
    if (es.values.minCoeff() < -tol::psd)
      raise(ErrorCode::InvalidParams, "POVM element " + std::to_string(i) + " is not positive");
    sum += e;
  }
  if ((sum - identity(static_cast<int>(d))).cwiseAbs().maxCoeff() > tol::normalization)
    raise(ErrorCode::InvalidParams, "POVM elements do not sum to the identity");
  return Povm(std::move(elements), static_cast<int>(d));
}

Povm Povm::from_bases(const std::vector<Matrix>& bases) {
  const double weight = 1.0 / static_cast<double>(bases.size());
  std::vector<PovmElement> elements;
  for (std::size_t b = 0; b < bases.size(); ++b)
    for (Eigen::Index j = 0; j < bases[b].cols(); ++j) {
      const Vector v = bases[b].col(j);
      elements.push_back({std::to_string(b) + ":" + std::to_string(j), weight * v * v.adjoint()});
    }
  return from_elements(std::move(elements));
}

DensityOperator average_state(const Ensemble& s) {
  Matrix avg = Matrix::Zero(s.dim(), s.dim());
  for (const auto& e : s.entries()) avg += e.probability * e.state.matrix();
  return DensityOperator::from_matrix(avg);
}

double entropy_defect(const Ensemble& s) {
  double chi = von_neumann_entropy(average_state(s));
  for (const auto& e : s.entries()) chi -= e.probability * von_neumann_entropy(e.state);
  return std::max(0.0, chi);
}

Ensemble ensemble_from_povm(const BipartitePureState& psi, const Povm& reference_povm) {
  if (reference_povm.dim() != psi.dim_r()) raise(ErrorCode::DimMismatch, "POVM does not act on the reference factor");
  const Matrix c = psi.coefficients();
  std::vector<EnsembleEntry> entries;
  for (const auto& el : reference_povm.elements()) {
    const Matrix weighted = c.transpose() * el.effect.transpose() * c.conjugate();
    const double p = weighted.trace().real();
    if (p <= tol::prob) continue;
    entries.push_back({el.label, p, DensityOperator::from_matrix(weighted / p)});
  }
  // Probabilities sum to Tr[Psi] = 1 up to the dropped mass; renormalize that residue away.
  double total = 0.0;
  for (const auto& e : entries) total += e.probability;
  for (auto& e : entries) e.probability /= total;
  return Ensemble::from_entries(std::move(entries));
}

Matrix fourier_basis(int d) {
  Matrix f(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) f(j, k) = norm * std::polar(1.0, 2.0 * std::numbers::pi * j * k / d);
  return f;
}

Ensemble christandl_winter_ensemble(const DensityOperator& rho) {
  const int d = rho.dim();
  const auto es = eig_hermitian(rho.matrix());
  if (es.values.minCoeff() < tol::eig)
    raise(ErrorCode::RankDeficient, "Christandl-Winter ensemble needs a full-rank average state");
  // The canonical purification makes the reference marginal diagonal in the computational basis.
  const BipartitePureState psi = purify(rho);
  const Matrix eigenbasis = identity(d);
  const Matrix unbiased = fourier_basis(d);
  std::vector<PovmElement> elements;
  for (int i = 0; i < d; ++i) {
    const Vector v = eigenbasis.col(i);
    elements.push_back({"e" + std::to_string(i), 0.5 * v * v.adjoint()});
  }
  for (int k = 0; k < d; ++k) {
    const Vector v = unbiased.col(k);
    elements.push_back({"f" + std::to_string(k), 0.5 * v * v.adjoint()});
  }
  return ensemble_from_povm(psi, Povm::from_elements(std::move(elements)));
}

RealMatrix overlap_matrix(const Ensemble& s) {
  const auto vectors = s.pure_vectors();
  const auto k = static_cast<Eigen::Index>(vectors.size());
  RealMatrix ov(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    ov(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < k; ++j) {
      double x = std::abs(vectors[i].dot(vectors[j]));
      if (x < tol::overlap) x = 0.0;
      ov(i, j) = x;
      ov(j, i) = x;
    }
  }
  return ov;
}

namespace {

// Lexicographically smallest walk of exactly `length` states using only edges with
// overlap >= threshold and visiting every state.
std::vector<std::size_t> smallest_walk(const RealMatrix& ov, int length, double threshold) {
  const int k = static_cast<int>(ov.rows());
  const std::size_t subsets = std::size_t{1} << k;
  const std::size_t full = subsets - 1;
  // feasible[r][subset * k + last]: r more steps can complete the cover.
  std::vector<std::vector<char>> feasible(length, std::vector<char>(subsets * k, 0));
  for (int last = 0; last < k; ++last) feasible[0][full * k + last] = 1;
  for (int r = 1; r < length; ++r)
    for (std::size_t set = 1; set < subsets; ++set)
      for (int last = 0; last < k; ++last) {
        if (!(set >> last & 1U)) continue;
        for (int j = 0; j < k; ++j) {
          if (ov(last, j) < threshold) continue;
          if (feasible[r - 1][(set | (std::size_t{1} << j)) * k + j]) {
            feasible[r][set * k + last] = 1;
            break;
          }
        }
      }
  std::vector<std::size_t> walk;
  std::size_t set = 0;
  int last = -1;
  for (int pos = 0; pos < length; ++pos) {
    const int remaining = length - 1 - pos;
    for (int j = 0; j < k; ++j) {
      if (last >= 0 && ov(last, j) < threshold) continue;
      const std::size_t next = set | (std::size_t{1} << j);
      if (feasible[remaining][next * k + j]) {
        walk.push_back(static_cast<std::size_t>(j));
        set = next;
        last = j;
        break;
      }
    }
  }
  return walk;
}

}  // namespace

IrreducibilityResult eta(const Ensemble& s, std::optional<int> n_max) {
  const RealMatrix ov = overlap_matrix(s);
  const int k = static_cast<int>(ov.rows());
  IrreducibilityResult result;
  result.min_p = s.min_probability();
  if (k == 1) {
    result.eta = 1.0;
    result.zeta = result.eta * result.min_p;
    result.witness.labels = {0};
    return result;
  }
  if (k > 20) raise(ErrorCode::InvalidParams, "path search supports at most 20 ensemble states");
  const int cap = n_max.value_or(k * k);
  if (cap < 1) raise(ErrorCode::InvalidParams, "n_max must be positive");

  const std::size_t subsets = std::size_t{1} << k;
  const std::size_t full = subsets - 1;
  constexpr double unreachable = -1.0;
  constexpr double open = 2.0;  // bottleneck of a single-state walk (no consecutive pair yet)
  std::vector<double> best(subsets * k, unreachable);
  for (int i = 0; i < k; ++i) best[(std::size_t{1} << i) * k + i] = open;
  std::vector<double> next(subsets * k);

  double best_eta = 0.0;
  int best_length = 0;
  double best_bottleneck = 0.0;
  for (int length = 2; length <= cap; ++length) {
    std::fill(next.begin(), next.end(), unreachable);
    for (std::size_t set = 1; set < subsets; ++set)
      for (int last = 0; last < k; ++last) {
        const double b = best[set * k + last];
        if (b <= 0.0) continue;
        for (int j = 0; j < k; ++j) {
          const double edge = ov(last, j);
          if (edge <= 0.0) continue;
          const double nb = std::min(b, edge);
          double& slot = next[(set | (std::size_t{1} << j)) * k + j];
          if (nb > slot) slot = nb;
        }
      }
    best.swap(next);
    double complete = 0.0;
    for (int last = 0; last < k; ++last) complete = std::max(complete, best[full * k + last]);
    const double candidate = complete / length;
    if (complete > 0.0 && candidate > best_eta) {
      best_eta = candidate;
      best_length = length;
      best_bottleneck = complete;
    }
  }
  result.eta = best_eta;
  result.zeta = result.eta * result.min_p;
  if (best_length > 0) result.witness.labels = smallest_walk(ov, best_length, best_bottleneck);
  return result;
}

IrreducibilityResult zeta(const Ensemble& s, std::optional<int> n_max) { return eta(s, n_max); }

}  // namespace tradeoff
