#pragma once

// Built-in scenario catalog.

#include <string>
#include <vector>

#include "tradeoff/harness/report.hpp"
#include "tradeoff/harness/suites.hpp"

namespace tradeoff::harness {

struct ScenarioCheck {
  std::string name;
  double tolerance = 0.0;
  /// Signed margin computed from the report; passes when >= -tolerance.
  double (*slack)(const TradeoffReport&);
};

struct Scenario {
  std::string name;
  std::string description;
  Instance instance;
  std::vector<ScenarioCheck> checks;
};

const std::vector<std::string>& scenario_names();
Scenario make_scenario(const std::string& name);

struct ScenarioResult {
  Scenario scenario;
  TradeoffReport report;
  std::vector<CheckResult> checks;
  bool passed() const;
};

ScenarioResult run_scenario(const std::string& name, const AnalyzeOptions& options = {});

}  // namespace tradeoff::harness
