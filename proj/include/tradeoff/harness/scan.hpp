#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tradeoff/harness/report.hpp"

namespace tradeoff::harness {

inline constexpr const char* kScanHeader = "theta,eta,zeta,f_av,f_e,delta,iota,delta_chi,slack_17,slack_18,rhs_flag";

struct ScanRow {
  double theta = 0.0;
  double eta = 0.0;
  double zeta = 0.0;
  double f_av = 0.0;
  double f_e = 0.0;
  double delta = 0.0;
  double iota = 0.0;
  double delta_chi = 0.0;
  double slack_17 = 0.0;
  double slack_18 = 0.0;
  /// 1 when the f-bound applies to the row.
  int rhs_flag = 0;
  /// Every asserted inequality of the row holds within tolerance.
  bool inequalities_hold = true;
};

const std::vector<std::string>& scan_families();

/// Family "two-state-angle": uniform {|0>, cos t |0> + sin t |1>} under the computational-basis
/// measurement, t_i = (pi/2)(n - i)/n for i = 0..n-1.
std::vector<ScanRow> run_scan(const std::string& family, int steps, const AnalyzeOptions& options = {});

/// Header plus one line per row at 12 significant digits.
void write_csv(std::ostream& os, const std::vector<ScanRow>& rows);

}  // namespace tradeoff::harness
