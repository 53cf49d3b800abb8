#include "tradeoff/harness/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "tradeoff/disturbance.hpp"
#include "tradeoff/errors.hpp"
#include "tradeoff/info_gain.hpp"
#include "tradeoff/tolerances.hpp"

namespace tradeoff::harness {

bool TrialResult::passed() const {
  return error.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

int SuiteResult::failures() const {
  return static_cast<int>(std::count_if(trials.begin(), trials.end(), [](const TrialResult& t) { return !t.passed(); }));
}

int SuiteResult::checks() const {
  int n = 0;
  for (const auto& t : trials) n += static_cast<int>(t.checks.size());
  return n;
}

std::vector<CheckResult> SuiteResult::worst() const {
  std::vector<CheckResult> out;
  for (const auto& t : trials)
    for (const auto& c : t.checks) {
      auto it = std::find_if(out.begin(), out.end(), [&](const CheckResult& w) { return w.name == c.name; });
      if (it == out.end()) {
        out.push_back(c);
      } else if (c.slack < it->slack) {
        *it = c;
      }
    }
  return out;
}

int worker_threads(int requested) {
  int n = requested;
  if (n <= 0) {
    n = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("TRADEOFF_LAB_THREADS")) {
      const int cap = std::atoi(env);
      if (cap > 0) n = std::min(n, cap);
    }
  }
  return std::max(1, n);
}

// ---------------------------------------------------------------------------
// Generators

Ensemble random_pure_ensemble(Rng& rng, int d, int k) {
  std::vector<Vector> states;
  for (int i = 0; i < k; ++i) states.push_back(haar_state(d, rng));
  return Ensemble::from_pure_states(states, random_simplex(k, rng));
}

Ensemble random_mixed_ensemble(Rng& rng, int d, int k) {
  const auto p = random_simplex(k, rng);
  std::vector<EnsembleEntry> entries;
  for (int i = 0; i < k; ++i) entries.push_back({std::to_string(i), p[static_cast<std::size_t>(i)], random_density(d, rng)});
  return Ensemble::from_entries(std::move(entries));
}

QuantumInstrument random_suite_instrument(Rng& rng, int d, bool single_kraus) {
  const int outcomes = std::uniform_int_distribution<int>(1, 3)(rng);
  const int kraus = single_kraus ? 1 : std::uniform_int_distribution<int>(1, 2)(rng);
  return random_instrument(rng(), d, outcomes, kraus);
}

namespace {

// States mixing Haar vectors with basis and Fourier vectors, so exact orthogonality occurs.
Ensemble structured_pure_ensemble(Rng& rng, int d, int k) {
  const Matrix fourier = fourier_basis(d);
  std::vector<Vector> states;
  for (int i = 0; i < k; ++i) {
    const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
    const int index = std::uniform_int_distribution<int>(0, d - 1)(rng);
    if (kind == 0)
      states.push_back(haar_state(d, rng));
    else if (kind == 1)
      states.push_back(basis_vector(d, index));
    else
      states.push_back(fourier.col(index));
  }
  return Ensemble::from_pure_states(states, random_simplex(k, rng));
}

}  // namespace

IrreducibilityResult exhaustive_eta(const Ensemble& s, int n_max) {
  const RealMatrix ov = overlap_matrix(s);
  const int k = static_cast<int>(ov.rows());
  IrreducibilityResult best;
  best.min_p = s.min_probability();
  if (k == 1) {
    best.eta = 1.0;
    best.zeta = best.min_p;
    best.witness.labels = {0};
    return best;
  }
  const int cap = std::min(n_max, 2 * k - 1);
  std::vector<std::size_t> walk;
  for (int length = 2; length <= cap; ++length) {
    walk.assign(static_cast<std::size_t>(length), 0);
    while (true) {
      unsigned seen = 0;
      double bottleneck = 2.0;
      for (int i = 0; i < length; ++i) {
        seen |= 1U << walk[static_cast<std::size_t>(i)];
        if (i > 0) bottleneck = std::min(bottleneck, ov(walk[static_cast<std::size_t>(i - 1)], walk[static_cast<std::size_t>(i)]));
      }
      if (seen == (1U << k) - 1 && bottleneck > 0.0 && bottleneck / length > best.eta) {
        best.eta = bottleneck / length;
        best.witness.labels = walk;
      }
      int pos = length - 1;
      while (pos >= 0 && walk[static_cast<std::size_t>(pos)] == static_cast<std::size_t>(k - 1)) walk[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
      ++walk[static_cast<std::size_t>(pos)];
    }
  }
  best.zeta = best.eta * best.min_p;
  return best;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

using TrialFn = std::function<std::vector<CheckResult>(Rng&, int)>;

CheckResult at_least(std::string name, double slack, double tolerance) {
  return {std::move(name), slack, tolerance, slack >= -tolerance};
}

CheckResult at_most(std::string name, double value, double tolerance) {
  return {std::move(name), -value, tolerance, value <= tolerance};
}

std::vector<CheckResult> lemma1_trial(Rng& rng, int d) {
  const int k = std::uniform_int_distribution<int>(1, 5)(rng);
  const Ensemble s = random_pure_ensemble(rng, d, k);
  const QuantumInstrument instr = random_suite_instrument(rng, d, false);
  return {at_most("lemma1_identity", lemma1_identity_check(s, instr).slack, 1e-8)};
}

std::vector<CheckResult> theorem1_trial(Rng& rng, int d) {
  const bool single = std::bernoulli_distribution(0.5)(rng);
  const QuantumInstrument instr = random_suite_instrument(rng, d, single);
  Ensemble s = random_pure_ensemble(rng, d, std::uniform_int_distribution<int>(2, 3)(rng));
  if (d == 2) {
    const double r = 1.0 / std::sqrt(2.0);
    Vector plus(2);
    plus << r, r;
    s = Ensemble::from_pure_states({basis_vector(2, 0), plus}, {0.5, 0.5});
  }
  const TheoremOneReport t = theorem_one_report(s, instr);
  std::vector<CheckResult> out{at_least("theo1a", t.slack_a, 1e-7), at_least("theo1b", t.slack_b, 1e-7)};
  if (t.applicable) out.push_back(at_least("theo1c", *t.slack_c, 1e-7));
  return out;
}

std::vector<CheckResult> eq9_trial(Rng& rng, int d) {
  const DensityOperator rho = random_density(d, rng);
  const QuantumInstrument instr = random_suite_instrument(rng, d, false);
  AccessibleSearch search;
  search.seed = rng();
  const InfoReport r = info_equivalence_report(rho, instr, build_dual_frame(default_frame_povm(d)), search);
  std::vector<CheckResult> out{at_least("iacc_le_iota", r.holevo_slack, 1e-9), at_least("frame_norm", r.norm_slack, 1e-7)};
  if (!r.bound_saturated) out.push_back(at_least("iota_le_t", r.t_slack, 1e-7));
  // Any ensemble with average rho: generated from a random POVM on the reference.
  const Ensemble s = random_pure_ensemble(rng, d, std::uniform_int_distribution<int>(2, 4)(rng));
  const double iota = quantum_info_gain(average_state(s), instr);
  out.push_back(at_least("mi_le_iota", iota - mutual_information(s, instr).bits, 1e-9));
  return out;
}

std::vector<CheckResult> eq17_trial(Rng& rng, int d) {
  const DensityOperator rho = random_density(d, rng);
  const QuantumInstrument instr = random_suite_instrument(rng, d, false);
  return {at_least("eq17_lower", eq17_lower_check(rho, instr), 1e-7)};
}

std::vector<CheckResult> eq18_trial(Rng& rng, int d) {
  const bool single = std::bernoulli_distribution(0.5)(rng);
  const DensityOperator rho = random_density(d, rng);
  const QuantumInstrument instr = random_suite_instrument(rng, d, single);
  const Eq18Check c = eq18_check(rho, instr);
  std::vector<CheckResult> out{at_least("delta_ge_iota", c.slack, 1e-9)};
  if (c.equality_expected) out.push_back(at_most("single_kraus_equality", std::abs(c.slack), 1e-8));
  return out;
}

std::vector<CheckResult> eq22_trial(Rng& rng, int d) {
  const int k = std::uniform_int_distribution<int>(1, 5)(rng);
  const Ensemble s = std::bernoulli_distribution(0.5)(rng) ? random_pure_ensemble(rng, d, k) : random_mixed_ensemble(rng, d, k);
  const QuantumInstrument instr = random_suite_instrument(rng, d, false);
  const EntropyDefectLoss loss = entropy_defect_loss(s, instr);
  return {at_most("eq22_decomposition", loss.decomposition_residual, 1e-9), at_least("delta_chi_nonneg", loss.delta_chi, 1e-9)};
}

std::vector<CheckResult> cw_trial(Rng& rng, int d) {
  const DensityOperator rho = random_density(d, rng);
  const QuantumInstrument instr = random_suite_instrument(rng, d, false);
  const CwSandwich c = cw_sandwich_check(rho, instr);
  return {at_least("cw_lower", c.lower_slack, 1e-7), at_least("cw_upper", c.upper_slack, 1e-7)};
}

std::vector<CheckResult> eta_oracle_trial(Rng& rng, int d) {
  const int k = std::uniform_int_distribution<int>(1, 5)(rng);
  const Ensemble s = structured_pure_ensemble(rng, d, k);
  const IrreducibilityResult dp = eta(s);
  const IrreducibilityResult brute = exhaustive_eta(s, k * k);
  const bool same_witness = dp.witness.labels == brute.witness.labels;
  return {at_most("eta_equal", std::abs(dp.eta - brute.eta), 0.0),
          {"witness_equal", same_witness ? 0.0 : -1.0, 0.0, same_witness}};
}

std::vector<CheckResult> frame_trial(Rng& rng, int d) {
  std::vector<CheckResult> out;
  std::vector<DualFrame> frames{build_dual_frame(default_frame_povm(d))};
  if (d == 2) frames.push_back(build_dual_frame(qubit_sic_povm()));
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const Matrix x = random_hermitian(d, rng);
    out.push_back(at_most("reconstruction_" + std::to_string(f), trace_norm(x - frames[f].reconstruct(x)), 1e-8));
  }
  // sum_x p(x) ||rho_x - rho_s||_1 <= c sqrt(2 I(X:G)) with G the frame outcome.
  const Ensemble s = random_pure_ensemble(rng, d, std::uniform_int_distribution<int>(2, 4)(rng));
  const DensityOperator avg = average_state(s);
  const auto& elements = frames.front().povm.elements();
  JointDistribution joint{RealMatrix(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(elements.size()))};
  double norm_sum = 0.0;
  for (std::size_t x = 0; x < s.size(); ++x) {
    norm_sum += s.entry(x).probability * trace_norm(s.entry(x).state.matrix() - avg.matrix());
    for (std::size_t g = 0; g < elements.size(); ++g)
      joint.p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(g)) =
          s.entry(x).probability * std::max(0.0, (elements[g].effect * s.entry(x).state.matrix()).trace().real());
  }
  const double bound = frames.front().frame_const * std::sqrt(2.0 * joint.mutual_information());
  out.push_back(at_least("frame_norm_bound", bound - norm_sum, 1e-7));
  return out;
}

std::vector<CheckResult> pinsker_trial(Rng& rng, int d) {
  const DensityOperator rho = random_density(d, rng);
  const DensityOperator sigma = random_density(d, rng);
  const double dist = trace_norm(rho.matrix() - sigma.matrix());
  const double nats = relative_entropy(rho, sigma) * std::log(2.0);
  return {at_least("pinsker", 2.0 * nats - dist * dist, 1e-9)};
}

const std::map<std::string, TrialFn>& registry() {
  static const std::map<std::string, TrialFn> fns{
      {"lemma1", lemma1_trial},   {"theorem1", theorem1_trial}, {"eq9", eq9_trial},
      {"eq17", eq17_trial},       {"eq18", eq18_trial},         {"eq22", eq22_trial},
      {"cw", cw_trial},           {"eta-oracle", eta_oracle_trial}, {"frame", frame_trial},
      {"pinsker", pinsker_trial}};
  return fns;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma1", "theorem1", "eq9",        "eq17",  "eq18",
                                              "eq22",   "cw",       "eta-oracle", "frame", "pinsker"};
  return names;
}

bool is_suite(const std::string& name) { return registry().count(name) > 0; }

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  const auto it = registry().find(name);
  if (it == registry().end()) raise(ErrorCode::InvalidParams, "unknown suite '" + name + "'");
  if (options.trials < 0) raise(ErrorCode::InvalidParams, "trial count must be nonnegative");
  if (options.dims.empty()) raise(ErrorCode::InvalidParams, "at least one dimension is required");
  for (const int d : options.dims)
    if (d < 2 || d > 4) raise(ErrorCode::InvalidParams, "suite dimensions must lie in 2..4");

  SuiteResult result;
  result.suite = name;
  result.trials.resize(static_cast<std::size_t>(options.trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < options.trials; t = next++) {
      TrialResult& tr = result.trials[static_cast<std::size_t>(t)];
      tr.trial = t;
      tr.seed = options.seed ^ static_cast<std::uint64_t>(t);
      tr.dim = options.dims[static_cast<std::size_t>(t) % options.dims.size()];
      Rng rng(tr.seed);
      try {
        tr.checks = it->second(rng, tr.dim);
      } catch (const std::exception& e) {
        tr.error = e.what();
      }
    }
  };
  const int n = std::min(worker_threads(options.threads), std::max(1, options.trials));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return result;
}

std::string reproduction_command(const std::string& suite, const TrialResult& trial) {
  std::ostringstream os;
  os << "tradeoff-lab verify --suite " << suite << " --trials 1 --seed " << trial.seed << " --dims " << trial.dim;
  return os.str();
}

}  // namespace tradeoff::harness
