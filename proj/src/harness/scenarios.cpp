#include "tradeoff/harness/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tradeoff/errors.hpp"

namespace tradeoff::harness {

namespace {

Vector ket(std::initializer_list<Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (const auto a : amps) v(i++) = a;
  return v;
}

const double r2 = 1.0 / std::numbers::sqrt2;

double f_av(const TradeoffReport& r) { return r.recovery_av ? r.recovery_av->fidelity : std::nan(""); }
double slack_c(const TradeoffReport& r) {
  return r.theorem1 && r.theorem1->slack_c ? *r.theorem1->slack_c : 0.0;
}
double nan_to_fail(double x) { return std::isnan(x) ? -1.0 : x; }

Scenario vonneumann_orthogonal() {
  Scenario s{"vonneumann_orthogonal",
             "uniform {|0>,|1>} measured in the computational basis: perfect average fidelity, one bit of disturbance",
             make_instance("vonneumann_orthogonal",
                           Ensemble::from_pure_states({ket({1, 0}), ket({0, 1})}, {0.5, 0.5}),
                           von_neumann_instrument(identity(2))),
             {}};
  s.checks = {
      {"f_av_one", 1e-6, [](const TradeoffReport& r) { return -std::abs(nan_to_fail(f_av(r)) - 1.0); }},
      {"mutual_info_one_bit", 1e-9, [](const TradeoffReport& r) { return -std::abs(r.mutual_info.bits - 1.0); }},
      {"delta_one_bit", 1e-9, [](const TradeoffReport& r) { return -std::abs(r.delta - 1.0); }},
      {"iota_one_bit", 1e-9, [](const TradeoffReport& r) { return -std::abs(r.iota - 1.0); }},
      {"zeta_zero", 0.0, [](const TradeoffReport& r) { return r.irreducibility && r.irreducibility->zeta == 0.0 ? 0.0 : -1.0; }},
      {"rhs_inapplicable", 0.0, [](const TradeoffReport& r) { return r.theorem1 && !r.theorem1->applicable ? 0.0 : -1.0; }},
  };
  return s;
}

Scenario vonneumann_nonorthogonal() {
  Scenario s{"vonneumann_nonorthogonal", "uniform {|0>,|+>} measured in the computational basis",
             make_instance("vonneumann_nonorthogonal",
                           Ensemble::from_pure_states({ket({1, 0}), ket({r2, r2})}, {0.5, 0.5}),
                           von_neumann_instrument(identity(2))),
             {}};
  s.checks = {
      {"f_av_below_one", 0.0, [](const TradeoffReport& r) { return 1.0 - 1e-6 - nan_to_fail(f_av(r)); }},
      {"zeta_positive", 0.0, [](const TradeoffReport& r) { return r.irreducibility && r.irreducibility->zeta > 0.0 ? 0.0 : -1.0; }},
      {"theo1a", 1e-7, [](const TradeoffReport& r) { return r.theorem1 ? r.theorem1->slack_a : -1.0; }},
      {"theo1b", 1e-7, [](const TradeoffReport& r) { return r.theorem1 ? r.theorem1->slack_b : -1.0; }},
      {"theo1c_where_applicable", 1e-7, slack_c},
      {"eq18", 1e-9, [](const TradeoffReport& r) { return r.eq18.slack; }},
  };
  return s;
}

Scenario cw_qubit() {
  const DensityOperator rho = DensityOperator::from_matrix(Matrix(Eigen::Vector2cd(0.7, 0.3).asDiagonal()));
  Rng rng(20240611);
  Scenario s{"cw_qubit", "Christandl-Winter ensemble of diag(0.7, 0.3) under a fixed random two-outcome instrument",
             make_instance("cw_qubit", christandl_winter_ensemble(rho), random_instrument(rng(), 2, 2, 2)), {}};
  s.checks = {
      {"cw_lower", 1e-7, [](const TradeoffReport& r) { return r.cw ? r.cw->lower_slack : -1.0; }},
      {"cw_upper", 1e-7, [](const TradeoffReport& r) { return r.cw ? r.cw->upper_slack : -1.0; }},
      {"lemma1", 1e-8, [](const TradeoffReport& r) { return r.lemma1 ? -r.lemma1->slack : -1.0; }},
  };
  return s;
}

Scenario depolarizing() {
  Scenario s{"depolarizing",
             "completely depolarizing qubit channel on the BB84 ensemble: delta = 2 bits exceeds S(rho_s) = 1",
             make_instance("depolarizing",
                           Ensemble::from_pure_states({ket({1, 0}), ket({0, 1}), ket({r2, r2}), ket({r2, -r2})},
                                                      {0.25, 0.25, 0.25, 0.25}),
                           channel_instrument(depolarizing_channel(2, 1.0))),
             {}};
  s.checks = {
      {"delta_two_bits", 1e-9, [](const TradeoffReport& r) { return -std::abs(r.delta - 2.0); }},
      {"delta_above_entropy_flagged", 0.0, [](const TradeoffReport& r) { return r.delta_above_entropy ? 0.0 : -1.0; }},
      {"iota_zero", 1e-9, [](const TradeoffReport& r) { return -std::abs(r.iota); }},
      {"eq18", 1e-9, [](const TradeoffReport& r) { return r.eq18.slack; }},
      {"lemma1", 1e-8, [](const TradeoffReport& r) { return r.lemma1 ? -r.lemma1->slack : -1.0; }},
      {"f_e_quarter", 1e-5, [](const TradeoffReport& r) { return -std::abs(r.recovery_e.fidelity - 0.25); }},
  };
  return s;
}

Scenario unitary_branches() {
  Matrix x(2, 2), z(2, 2), h(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  h << r2, r2, r2, -r2;
  Scenario s{"unitary_branches", "branches sqrt(w_m) U_m: every outcome is undone by U_m^dagger",
             make_instance("unitary_branches",
                           Ensemble::from_pure_states({ket({1, 0}), ket({r2, Complex(0, r2)}), ket({0.6, 0.8})}, {0.5, 0.3, 0.2}),
                           unitary_branch_instrument({identity(2), x, z, h}, {0.4, 0.3, 0.2, 0.1})),
             {}};
  s.checks = {
      {"f_e_one", 1e-5, [](const TradeoffReport& r) { return r.recovery_e.fidelity - 1.0; }},
      {"f_av_one", 1e-5, [](const TradeoffReport& r) { return nan_to_fail(f_av(r)) - 1.0; }},
      {"delta_zero", 1e-9, [](const TradeoffReport& r) { return -std::abs(r.delta); }},
      {"iota_zero", 1e-9, [](const TradeoffReport& r) { return -std::abs(r.iota); }},
  };
  return s;
}

Scenario weak_irreducible() {
  const double phi = std::numbers::pi / 4.0 - 0.05;
  Matrix m0 = Matrix::Zero(2, 2), m1 = Matrix::Zero(2, 2);
  m0(0, 0) = std::cos(phi);
  m0(1, 1) = std::sin(phi);
  m1(0, 0) = std::sin(phi);
  m1(1, 1) = std::cos(phi);
  Scenario s{"weak_irreducible", "{|0>,|+>} with p = 0.99/0.01 under a weak computational-basis measurement",
             make_instance("weak_irreducible", Ensemble::from_pure_states({ket({1, 0}), ket({r2, r2})}, {0.99, 0.01}),
                           QuantumInstrument::from_branches({{"0", {m0}}, {"1", {m1}}})),
             {}};
  s.checks = {
      {"theo1a", 1e-7, [](const TradeoffReport& r) { return r.theorem1 ? r.theorem1->slack_a : -1.0; }},
      {"theo1b", 1e-7, [](const TradeoffReport& r) { return r.theorem1 ? r.theorem1->slack_b : -1.0; }},
      {"theo1c_where_applicable", 1e-7, slack_c},
      {"eq17", 1e-7, [](const TradeoffReport& r) { return r.slack_17; }},
      {"eq18_equality", 1e-8, [](const TradeoffReport& r) { return -std::abs(r.eq18.slack); }},
  };
  return s;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"vonneumann_orthogonal", "vonneumann_nonorthogonal", "cw_qubit",
                                              "depolarizing",          "unitary_branches",         "weak_irreducible"};
  return names;
}

Scenario make_scenario(const std::string& name) {
  if (name == "vonneumann_orthogonal") return vonneumann_orthogonal();
  if (name == "vonneumann_nonorthogonal") return vonneumann_nonorthogonal();
  if (name == "cw_qubit") return cw_qubit();
  if (name == "depolarizing") return depolarizing();
  if (name == "unitary_branches") return unitary_branches();
  if (name == "weak_irreducible") return weak_irreducible();
  raise(ErrorCode::InvalidParams, "unknown scenario '" + name + "'");
}

bool ScenarioResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

ScenarioResult run_scenario(const std::string& name, const AnalyzeOptions& options) {
  ScenarioResult out{make_scenario(name), {}, {}};
  out.report = analyze(out.scenario.instance, options);
  for (const auto& c : out.scenario.checks) {
    const double slack = c.slack(out.report);
    out.checks.push_back({c.name, slack, c.tolerance, slack >= -c.tolerance});
  }
  return out;
}

}  // namespace tradeoff::harness
