#pragma once

// Randomized verification suites. Trial t uses seed ^ t and dimension dims[t % dims.size()],
// so a failing trial reruns alone with --trials 1 --seed (seed ^ t) --dims d.

#include <cstdint>
#include <string>
#include <vector>

#include "tradeoff/ensemble.hpp"
#include "tradeoff/instrument.hpp"
#include "tradeoff/random.hpp"

namespace tradeoff::harness {

struct SuiteOptions {
  int trials = 50;
  std::uint64_t seed = 1;
  std::vector<int> dims{2, 3};
  /// 0 means TRADEOFF_LAB_THREADS or the hardware concurrency.
  int threads = 0;
};

struct CheckResult {
  std::string name;
  /// Signed margin; the check passes when slack >= -tolerance.
  double slack = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct TrialResult {
  int trial = 0;
  std::uint64_t seed = 0;
  int dim = 0;
  std::vector<CheckResult> checks;
  /// Set when the trial threw.
  std::string error;
  bool passed() const;
};

struct SuiteResult {
  std::string suite;
  std::vector<TrialResult> trials;
  int failures() const;
  int checks() const;
  /// Smallest slack per check name, in first-seen order.
  std::vector<CheckResult> worst() const;
};

/// Suite names in run order; "all" runs every one of them.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

std::string reproduction_command(const std::string& suite, const TrialResult& trial);

/// Threads granted by TRADEOFF_LAB_THREADS (capped by hardware concurrency when unset).
int worker_threads(int requested);

// Instance generators shared by the suites.
Ensemble random_pure_ensemble(Rng& rng, int d, int k);
Ensemble random_mixed_ensemble(Rng& rng, int d, int k);
/// Up to three outcomes; one Kraus operator per outcome when single_kraus, else up to two.
QuantumInstrument random_suite_instrument(Rng& rng, int d, bool single_kraus);
/// Exhaustive enumeration over walks of length <= min(n_max, 2K - 1); same tie rules as eta().
IrreducibilityResult exhaustive_eta(const Ensemble& s, int n_max);

}  // namespace tradeoff::harness
