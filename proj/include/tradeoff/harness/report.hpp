#pragma once

// Full analysis of one (ensemble, instrument) instance.

#include <optional>
#include <string>

#include "tradeoff/disturbance.hpp"
#include "tradeoff/harness/io.hpp"
#include "tradeoff/info_gain.hpp"

namespace tradeoff::harness {

struct AnalyzeOptions {
  RecoveryOptions recovery;
  AccessibleSearch search;
  std::optional<int> n_max;
  /// Adds the Choi matrices of the recovery channels to the JSON report.
  bool dump_choi = false;
};

struct TradeoffReport {
  std::string name;
  int dim = 0;
  int out_dim = 0;
  int states = 0;
  int outcomes = 0;
  bool pure = false;
  bool single_kraus = false;
  bool full_rank = false;

  double entropy = 0.0;
  MutualInformation mutual_info;
  double iota = 0.0;
  double delta = 0.0;
  bool delta_above_entropy = false;
  EntropyDefectLoss loss;
  InfoReport info;

  RecoveryResult recovery_e;
  /// Pure ensembles only.
  std::optional<RecoveryResult> recovery_av;

  std::optional<IrreducibilityResult> irreducibility;
  std::optional<TheoremOneReport> theorem1;
  std::optional<Lemma1Check> lemma1;
  std::optional<double> chi_complement;
  std::optional<CwSandwich> cw;

  double slack_17 = 0.0;  // delta - (1 - f_e)^2 / 4
  Eq18Check eq18;
  double slack_mi = 0.0;  // iota - I(X:X^)
};

TradeoffReport analyze(const Instance& inst, const AnalyzeOptions& options = {});

Json report_to_json(const TradeoffReport& r, bool include_choi = false);

}  // namespace tradeoff::harness
