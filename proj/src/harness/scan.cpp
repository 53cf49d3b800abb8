#include "tradeoff/harness/scan.hpp"

#include <cmath>
#include <locale>
#include <numbers>

#include "tradeoff/errors.hpp"

namespace tradeoff::harness {

const std::vector<std::string>& scan_families() {
  static const std::vector<std::string> names{"two-state-angle"};
  return names;
}

std::vector<ScanRow> run_scan(const std::string& family, int steps, const AnalyzeOptions& options) {
  if (family != "two-state-angle") raise(ErrorCode::InvalidParams, "unknown scan family '" + family + "'");
  if (steps < 1) raise(ErrorCode::InvalidParams, "steps must be positive");
  std::vector<ScanRow> rows;
  for (int i = 0; i < steps; ++i) {
    const double theta = std::numbers::pi / 2.0 * (steps - i) / steps;
    Vector a = basis_vector(2, 0);
    Vector b(2);
    b << std::cos(theta), std::sin(theta);
    const Ensemble s = Ensemble::from_pure_states({a, b}, {0.5, 0.5});
    const TradeoffReport r = analyze(make_instance("two-state-angle", s, von_neumann_instrument(identity(2))), options);
    ScanRow row;
    row.theta = theta;
    row.eta = r.irreducibility->eta;
    row.zeta = r.irreducibility->zeta;
    row.f_av = r.recovery_av->fidelity;
    row.f_e = r.recovery_e.fidelity;
    row.delta = r.delta;
    row.iota = r.iota;
    row.delta_chi = r.loss.delta_chi;
    row.slack_17 = r.slack_17;
    row.slack_18 = r.eq18.slack;
    const TheoremOneReport& t = *r.theorem1;
    row.rhs_flag = t.applicable ? 1 : 0;
    row.inequalities_hold = t.slack_a >= -1e-7 && t.slack_b >= -1e-7 && (!t.slack_c || *t.slack_c >= -1e-7) &&
                            row.slack_17 >= -1e-7 && row.slack_18 >= -1e-9;
    rows.push_back(row);
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  const std::locale previous = os.imbue(std::locale::classic());
  const auto old_precision = os.precision(12);
  os << kScanHeader << '\n';
  for (const auto& r : rows) {
    os << r.theta << ',' << r.eta << ',' << r.zeta << ',' << r.f_av << ',' << r.f_e << ',' << r.delta << ',' << r.iota
       << ',' << r.delta_chi << ',' << r.slack_17 << ',' << r.slack_18 << ',' << r.rhs_flag << '\n';
  }
  os.precision(old_precision);
  os.imbue(previous);
}

}  // namespace tradeoff::harness
