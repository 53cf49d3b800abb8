#include "tradeoff/harness/report.hpp"

#include "tradeoff/tolerances.hpp"

namespace tradeoff::harness {

TradeoffReport analyze(const Instance& inst, const AnalyzeOptions& options) {
  const Ensemble& s = inst.ensemble;
  const QuantumInstrument& instr = inst.instrument;
  const DensityOperator rho_s = average_state(s);
  TradeoffReport r;
  r.name = inst.name;
  r.dim = instr.in_dim();
  r.out_dim = instr.out_dim();
  r.states = static_cast<int>(s.size());
  r.outcomes = static_cast<int>(instr.size());
  r.pure = s.is_pure();
  r.single_kraus = is_single_kraus(instr);
  r.full_rank = eig_hermitian(rho_s.matrix()).values.minCoeff() >= tol::eig;

  r.entropy = von_neumann_entropy(rho_s);
  r.mutual_info = mutual_information(s, instr);
  r.iota = quantum_info_gain(rho_s, instr);
  r.delta = quantum_disturbance(rho_s, instr);
  r.delta_above_entropy = r.delta > r.entropy + 1e-9;
  r.loss = entropy_defect_loss(s, instr);
  r.info = info_equivalence_report(rho_s, instr, build_dual_frame(default_frame_povm(r.dim)), options.search);

  r.recovery_e = optimize_recovery_entanglement(rho_s, instr, options.recovery);
  r.slack_17 = r.delta - (1.0 - r.recovery_e.fidelity) * (1.0 - r.recovery_e.fidelity) / 4.0;
  r.eq18 = {r.delta - r.iota, r.single_kraus};
  r.slack_mi = r.iota - r.mutual_info.bits;

  if (r.pure) {
    r.recovery_av = optimize_recovery_average(s, instr, options.recovery, &r.recovery_e.recovery);
    r.irreducibility = eta(s, options.n_max);
    r.lemma1 = lemma1_identity_check(s, instr);
    r.chi_complement = r.lemma1->chi_complement;

    DisturbanceReport d;
    d.f_av = r.recovery_av->fidelity;
    d.f_e = r.recovery_e.fidelity;
    d.delta = r.delta;
    d.delta_chi = r.loss.delta_chi;
    d.chi_complement = *r.chi_complement;
    d.entropy = r.entropy;
    d.delta_above_entropy = r.delta_above_entropy;
    r.theorem1 = theorem_one_report(s, d, *r.irreducibility);
  }
  if (r.full_rank) r.cw = cw_sandwich_check(rho_s, instr);
  return r;
}

namespace {

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

Json recovery_json(const RecoveryResult& rr, bool include_choi) {
  Json out;
  out["fidelity"] = rr.fidelity;
  out["objective"] = rr.objective;
  out["converged"] = rr.converged;
  out["iterations"] = rr.iterations;
  out["provenance"] = Json::array();
  for (const auto p : rr.recovery.provenance) out["provenance"].push_back(to_string(p));
  if (include_choi) {
    out["choi"] = Json::array();
    for (const auto& ch : rr.recovery.per_outcome) out["choi"].push_back(matrix_to_json(ch.choi()));
  }
  return out;
}

}  // namespace

Json report_to_json(const TradeoffReport& r, bool include_choi) {
  Json out;
  out["format"] = kFormat;
  out["name"] = r.name;
  out["dim"] = r.dim;
  out["out_dim"] = r.out_dim;
  out["states"] = r.states;
  out["outcomes"] = r.outcomes;
  out["pure_ensemble"] = r.pure;
  out["single_kraus"] = r.single_kraus;

  Json q;
  q["entropy"] = r.entropy;
  q["mutual_info"] = r.mutual_info.bits;
  q["i_acc_lower"] = r.info.i_acc_lower;
  q["iota"] = r.iota;
  q["delta"] = r.delta;
  q["delta_chi"] = r.loss.delta_chi;
  q["chi_complement"] = optional_number(r.chi_complement);
  q["f_e"] = r.recovery_e.fidelity;
  q["f_av"] = r.recovery_av ? Json(r.recovery_av->fidelity) : Json(nullptr);
  q["eta"] = r.irreducibility ? Json(r.irreducibility->eta) : Json(nullptr);
  q["zeta"] = r.irreducibility ? Json(r.irreducibility->zeta) : Json(nullptr);
  if (r.irreducibility) q["witness"] = r.irreducibility->witness.labels;
  out["quantities"] = std::move(q);

  Json flags;
  flags["delta_above_entropy"] = r.delta_above_entropy;
  flags["frame_bound_saturated"] = r.info.bound_saturated;
  flags["recovery_converged"] = r.recovery_e.converged && (!r.recovery_av || r.recovery_av->converged);
  out["flags"] = std::move(flags);

  Json sl;
  sl["eq9_holevo"] = r.info.holevo_slack;
  sl["eq9_t_bound"] = r.info.bound_saturated ? Json(nullptr) : Json(r.info.t_slack);
  sl["frame_norm"] = r.info.norm_slack;
  sl["mi_le_iota"] = r.slack_mi;
  sl["eq15"] = r.recovery_av ? Json(r.recovery_av->fidelity - r.recovery_e.fidelity) : Json(nullptr);
  sl["eq17"] = r.slack_17;
  sl["eq18"] = r.eq18.slack;
  sl["eq18_equality_expected"] = r.eq18.equality_expected;
  sl["eq22_residual"] = r.loss.decomposition_residual;
  sl["lemma1"] = r.lemma1 ? Json(r.lemma1->slack) : Json(nullptr);
  sl["cw_lower"] = r.cw ? Json(r.cw->lower_slack) : Json(nullptr);
  sl["cw_upper"] = r.cw ? Json(r.cw->upper_slack) : Json(nullptr);
  out["slacks"] = std::move(sl);

  Json info;
  info["frame_mutual_info"] = r.info.frame_mutual_info;
  info["frame_const"] = r.info.frame_const;
  info["frame_argument"] = r.info.frame_argument;
  info["t_bound"] = r.info.t_bound;
  info["norm_sum"] = r.info.norm_sum;
  out["info"] = std::move(info);

  Json loss;
  loss["chi_input"] = r.loss.chi_input;
  loss["chi_output"] = r.loss.chi_output;
  loss["outcome_probability"] = r.loss.outcome_probability;
  loss["conditional_chi"] = r.loss.conditional_chi;
  out["entropy_defect_loss"] = std::move(loss);

  if (r.theorem1) {
    const auto& t = *r.theorem1;
    Json th;
    th["lhs1"] = t.lhs1;
    th["lhs2"] = t.lhs2;
    th["delta"] = t.delta;
    th["path_length"] = t.path_length;
    th["x"] = optional_number(t.x);
    th["rhs"] = optional_number(t.rhs);
    th["applicable"] = t.applicable;
    th["zeta_positive"] = t.zeta_positive;
    th["x_in_domain"] = t.x_in_domain;
    th["fidelity_condition"] = t.fidelity_condition;
    th["slack_a"] = t.slack_a;
    th["slack_b"] = t.slack_b;
    th["slack_c"] = optional_number(t.slack_c);
    out["theorem1"] = std::move(th);
  } else {
    out["theorem1"] = nullptr;
  }

  Json rec;
  rec["entanglement"] = recovery_json(r.recovery_e, include_choi);
  rec["average"] = r.recovery_av ? recovery_json(*r.recovery_av, include_choi) : Json(nullptr);
  out["recovery"] = std::move(rec);
  return out;
}

}  // namespace tradeoff::harness
