#include "tradeoff/info_gain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tradeoff/errors.hpp"
#include "tradeoff/random.hpp"
#include "tradeoff/tolerances.hpp"

namespace tradeoff {

double JointDistribution::mutual_information() const {
  const RealVector px = marginal_x();
  const RealVector pm = marginal_m();
  double info = 0.0;
  for (Eigen::Index x = 0; x < p.rows(); ++x)
    for (Eigen::Index m = 0; m < p.cols(); ++m) {
      const double pxm = p(x, m);
      if (pxm <= 0.0 || pm(m) < tol::prob || px(x) <= 0.0) continue;
      info += pxm * std::log2(pxm / (px(x) * pm(m)));
    }
  return std::max(0.0, info);
}

MutualInformation mutual_information(const Ensemble& s, const QuantumInstrument& instr) {
  if (s.dim() != instr.in_dim()) raise(ErrorCode::DimMismatch, "ensemble dimension does not match instrument input");
  std::vector<Matrix> effects;
  for (const auto& b : instr.outcomes()) effects.push_back(b.effect());
  MutualInformation out;
  out.joint.p = RealMatrix::Zero(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(instr.size()));
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t m = 0; m < instr.size(); ++m) {
      const double pm_x = (effects[m] * s.entry(x).state.matrix()).trace().real();
      out.joint.p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(m)) = s.entry(x).probability * std::max(0.0, pm_x);
    }
  out.bits = out.joint.mutual_information();
  return out;
}

Ensemble reference_ensemble(const DensityOperator& rho_s, const QuantumInstrument& instr) {
  if (rho_s.dim() != instr.in_dim()) raise(ErrorCode::DimMismatch, "state dimension does not match instrument input");
  const Matrix c = purify(rho_s).coefficients();
  std::vector<EnsembleEntry> entries;
  for (const auto& b : instr.outcomes()) {
    Matrix weighted = Matrix::Zero(c.rows(), c.rows());
    for (const auto& e : b.kraus) {
      const Matrix w = c * e.transpose();
      weighted += w * w.adjoint();
    }
    const double p = weighted.trace().real();
    if (p <= tol::prob) continue;
    entries.push_back({b.label, p, DensityOperator::from_matrix(weighted / p)});
  }
  double total = 0.0;
  for (const auto& e : entries) total += e.probability;
  for (auto& e : entries) e.probability /= total;
  return Ensemble::from_entries(std::move(entries));
}

double quantum_info_gain(const DensityOperator& rho_s, const QuantumInstrument& instr) {
  return entropy_defect(reference_ensemble(rho_s, instr));
}

// ---------------------------------------------------------------------------
// Accessible-information search

namespace {

// p(x, m) = Tr[R_x H_m] with H_m = C F_m^T C^dagger for POVM elements R_x on the reference.
class ReferenceMeasurement {
 public:
  ReferenceMeasurement(const DensityOperator& rho_s, const QuantumInstrument& instr) {
    const Matrix c = purify(rho_s).coefficients();
    for (const auto& b : instr.outcomes()) h_.push_back(c * b.effect().transpose() * c.adjoint());
  }

  double rank_one(const std::vector<Vector>& vectors) const {
    JointDistribution joint{RealMatrix(static_cast<Eigen::Index>(vectors.size()), static_cast<Eigen::Index>(h_.size()))};
    for (std::size_t x = 0; x < vectors.size(); ++x)
      for (std::size_t m = 0; m < h_.size(); ++m)
        joint.p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(m)) =
            std::max(0.0, (vectors[x].adjoint() * h_[m] * vectors[x])(0).real());
    return joint.mutual_information();
  }

  double general(const Povm& povm) const {
    JointDistribution joint{RealMatrix(static_cast<Eigen::Index>(povm.size()), static_cast<Eigen::Index>(h_.size()))};
    for (std::size_t x = 0; x < povm.size(); ++x)
      for (std::size_t m = 0; m < h_.size(); ++m)
        joint.p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(m)) =
            std::max(0.0, (povm.elements()[x].effect * h_[m]).trace().real());
    return joint.mutual_information();
  }

 private:
  std::vector<Matrix> h_;
};

std::vector<Vector> columns(const Matrix& basis) {
  std::vector<Vector> out;
  for (Eigen::Index j = 0; j < basis.cols(); ++j) out.push_back(basis.col(j));
  return out;
}

// Rows of an isometry W (n x d) give rank-one POVM vectors w_x = W_x^dagger.
std::vector<Vector> isometry_rows(const Matrix& w) {
  std::vector<Vector> out;
  for (Eigen::Index x = 0; x < w.rows(); ++x) out.push_back(w.row(x).adjoint());
  return out;
}

Matrix qubit_basis(double theta, double phi) {
  Matrix u(2, 2);
  const Complex phase = std::polar(1.0, phi);
  u(0, 0) = std::cos(theta / 2);
  u(1, 0) = phase * std::sin(theta / 2);
  u(0, 1) = -std::conj(phase) * std::sin(theta / 2);
  u(1, 1) = std::cos(theta / 2);
  return u;
}

Matrix orthonormalize(const Matrix& w) {
  Eigen::HouseholderQR<Matrix> qr(w);
  Matrix q = qr.householderQ() * Matrix::Identity(w.rows(), w.cols());
  const Matrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

struct Tracker {
  double best = -1.0;
  std::size_t best_index = 0;
  std::size_t count = 0;

  bool offer(double value) {
    const bool improved = value > best;
    if (improved) {
      best = value;
      best_index = count;
    }
    ++count;
    return improved;
  }
};

}  // namespace

AccessibleInfoResult accessible_info_lower(const DensityOperator& rho_s, const QuantumInstrument& instr,
                                           const AccessibleSearch& search, const std::vector<Povm>& extra_candidates) {
  if (rho_s.dim() != instr.in_dim()) raise(ErrorCode::DimMismatch, "state dimension does not match instrument input");
  const int d = rho_s.dim();
  const ReferenceMeasurement measure(rho_s, instr);
  Tracker track;

  track.offer(measure.rank_one(columns(identity(d))));
  for (const auto& povm : extra_candidates) {
    if (povm.dim() != d) raise(ErrorCode::DimMismatch, "candidate POVM has the wrong dimension");
    track.offer(measure.general(povm));
  }

  if (d == 1) return {std::max(0.0, track.best), track.best_index};

  if (d == 2) {
    const int n = std::max(1, search.sphere_points);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<std::pair<double, std::pair<double, double>>> scored;
    for (int i = 0; i < n; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / n;
      const double theta = std::acos(std::clamp(z, -1.0, 1.0));
      const double phi = std::fmod(golden * i, 2.0 * std::numbers::pi);
      const double value = measure.rank_one(columns(qubit_basis(theta, phi)));
      track.offer(value);
      scored.push_back({value, {theta, phi}});
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    const int starts = std::min<int>(search.refine_starts, static_cast<int>(scored.size()));
    for (int s = 0; s < starts; ++s) {
      double theta = scored[s].second.first;
      double phi = scored[s].second.second;
      double value = scored[s].first;
      double step = 0.05;
      for (int iter = 0; iter < 4000 && step > 1e-9; ++iter) {
        bool moved = false;
        const double moves[4][2] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
        for (const auto& mv : moves) {
          const double candidate = measure.rank_one(columns(qubit_basis(theta + mv[0], phi + mv[1])));
          if (candidate > value) {
            value = candidate;
            theta += mv[0];
            phi += mv[1];
            moved = true;
            break;
          }
        }
        if (!moved) step *= 0.5;
      }
      track.offer(value);
    }
    return {std::max(0.0, track.best), track.best_index};
  }

  track.offer(measure.rank_one(columns(fourier_basis(d))));
  Rng rng(search.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int r = 0; r < search.restarts; ++r) {
    const int outcomes = (r % 2 == 0) ? d : 2 * d;
    Matrix w = haar_isometry(outcomes, d, rng);
    double value = measure.rank_one(isometry_rows(w));
    double step = 0.3;
    for (int iter = 0; iter < search.climb_steps; ++iter) {
      const Matrix trial = orthonormalize(w + step * ginibre(outcomes, d, rng));
      const double candidate = measure.rank_one(isometry_rows(trial));
      if (candidate > value) {
        value = candidate;
        w = trial;
      } else {
        step = std::max(1e-6, step * 0.85);
      }
    }
    track.offer(value);
  }
  return {std::max(0.0, track.best), track.best_index};
}

// ---------------------------------------------------------------------------
// Frames

namespace {

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, int d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

bool is_odd_prime(int d) {
  if (d < 3 || d % 2 == 0) return false;
  for (int f = 3; f * f <= d; f += 2)
    if (d % f == 0) return false;
  return true;
}

}  // namespace

Matrix DualFrame::reconstruct(const Matrix& x) const {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (std::size_t m = 0; m < duals.size(); ++m) out += (x * povm.elements()[m].effect).trace() * duals[m];
  return out;
}

DualFrame build_dual_frame(const Povm& povm) {
  const int d = povm.dim();
  const int n = d * d;
  Matrix frame = Matrix::Zero(n, n);
  for (const auto& el : povm.elements()) {
    const Vector v = vec(el.effect);
    frame += v * v.adjoint();
  }
  const auto es = eig_hermitian(frame);
  int rank = 0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) > tol::rank) ++rank;
  if (rank < n)
    raise(ErrorCode::NotInfoComplete,
          "POVM spans " + std::to_string(rank) + " of " + std::to_string(n) + " operator dimensions");
  const Matrix inverse = spectral_map(es, [](double x) { return 1.0 / x; });
  DualFrame out{povm, {}, 0.0};
  for (const auto& el : povm.elements()) {
    Matrix k = hermitian_part(unvec(inverse * vec(el.effect), d));
    out.frame_const = std::max(out.frame_const, trace_norm(k));
    out.duals.push_back(std::move(k));
  }
  return out;
}

Povm mub_povm(int d) {
  std::vector<Matrix> bases;
  if (d == 2) {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    Matrix x(2, 2), y(2, 2);
    x << r, r, r, -r;
    y << r, r, r * i, -r * i;
    bases = {identity(2), x, y};
  } else if (is_odd_prime(d)) {
    bases.push_back(identity(d));
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int a = 0; a < d; ++a) {
      Matrix basis(d, d);
      for (int b = 0; b < d; ++b)
        for (int j = 0; j < d; ++j)
          basis(j, b) = norm * std::polar(1.0, 2.0 * std::numbers::pi * ((a * j * j + b * j) % d) / d);
      bases.push_back(std::move(basis));
    }
  } else {
    raise(ErrorCode::InvalidParams, "complete MUB construction implemented for d = 2 and odd primes only");
  }
  return Povm::from_bases(bases);
}

Povm qubit_sic_povm() {
  const double s = std::sqrt(2.0) / 3.0;
  const double t = std::sqrt(2.0 / 3.0);
  const double bloch[4][3] = {{0, 0, 1}, {2 * s, 0, -1.0 / 3}, {-s, t, -1.0 / 3}, {-s, -t, -1.0 / 3}};
  const Complex i(0.0, 1.0);
  std::vector<PovmElement> elements;
  for (int k = 0; k < 4; ++k) {
    Matrix e(2, 2);
    e << 1.0 + bloch[k][2], bloch[k][0] - i * bloch[k][1], bloch[k][0] + i * bloch[k][1], 1.0 - bloch[k][2];
    elements.push_back({"sic" + std::to_string(k), e / 4.0});
  }
  return Povm::from_elements(std::move(elements));
}

Povm default_frame_povm(int d) {
  if (d == 2 || is_odd_prime(d)) return mub_povm(d);
  // Computational and Fourier bases plus d - 1 fixed Haar bases: generically informationally complete.
  Rng rng(0x5eedf4a3eULL + static_cast<std::uint64_t>(d));
  std::vector<Matrix> bases{identity(d), fourier_basis(d)};
  for (int b = 0; b < d - 1; ++b) bases.push_back(haar_unitary(d, rng));
  return Povm::from_bases(bases);
}

double t_bound(double x, int d) {
  if (!(x >= 0.0) || x > 1.0) raise(ErrorCode::DomainError, "t(x) is defined for 0 <= x <= 1");
  if (d < 1) raise(ErrorCode::DomainError, "dimension must be positive");
  if (x == 0.0 || d == 1) return 0.0;
  return x * std::log2(2.0 * std::sqrt(static_cast<double>(d - 1)) / x);
}

InfoReport info_equivalence_report(const DensityOperator& rho_s, const QuantumInstrument& instr, const DualFrame& frame,
                                   const AccessibleSearch& search) {
  if (frame.povm.dim() != rho_s.dim()) raise(ErrorCode::DimMismatch, "frame dimension does not match the state");
  const Ensemble ref = reference_ensemble(rho_s, instr);
  const DensityOperator rho_r = average_state(ref);

  InfoReport report;
  report.iota = entropy_defect(ref);
  report.i_acc_upper = report.iota;

  JointDistribution joint{RealMatrix(static_cast<Eigen::Index>(ref.size()), static_cast<Eigen::Index>(frame.povm.size()))};
  for (std::size_t m = 0; m < ref.size(); ++m) {
    const auto& entry = ref.entry(m);
    report.norm_sum += entry.probability * trace_norm(entry.state.matrix() - rho_r.matrix());
    for (std::size_t g = 0; g < frame.povm.size(); ++g)
      joint.p(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(g)) =
          entry.probability * std::max(0.0, (entry.state.matrix() * frame.povm.elements()[g].effect).trace().real());
  }
  report.frame_mutual_info = joint.mutual_information();
  report.frame_const = frame.frame_const;
  report.frame_argument = frame.frame_const * std::sqrt(2.0 * report.frame_mutual_info);
  report.bound_saturated = report.frame_argument > 1.0;
  report.t_bound = t_bound(std::min(1.0, report.frame_argument), rho_s.dim());

  report.i_acc_lower = accessible_info_lower(rho_s, instr, search, {frame.povm}).bits;

  report.holevo_slack = report.iota - report.i_acc_lower;
  report.t_slack = report.t_bound - report.iota;
  report.norm_slack = report.frame_argument - report.norm_sum;
  return report;
}

}  // namespace tradeoff
