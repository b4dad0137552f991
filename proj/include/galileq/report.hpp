#pragma once

#include "contraction.hpp"
#include "covariant.hpp"
#include "gauge.hpp"
#include "io.hpp"
#include "spectral.hpp"

namespace galileq {

inline json check_json(const CheckReport& r, bool with_residuals = true) {
  json items = json::array();
  for (const auto& i : r.items) {
    if (i.ok) continue;
    json f{{"name", i.name}};
    if (with_residuals) f["residual"] = matrix_json(i.residual);
    items.push_back(f);
  }
  return {{"ok", r.ok()}, {"checked", r.items.size()}, {"failures", items}};
}

inline json branch_json(const Branch& b) {
  json s2 = json::array();
  for (const auto& e : b.s2) s2.push_back({{"value", e.value.get_str()}, {"dim", e.dim}});
  return {{"epsilon", b.epsilon.get_str()}, {"multiplicity", b.multiplicity}, {"s2", s2}};
}

inline json classification_json(const ClassificationResult& c) {
  json br = json::array();
  for (const auto& b : c.branches) br.push_back(branch_json(b));
  json j{{"schema", kSchemaVersion}, {"id", c.id},       {"mass", c.mass.get_str()},
         {"verdict", verdict_str(c.verdict)}, {"branches", br}, {"degenerate", c.degenerate}};
  if (!c.nonrational.empty()) j["nonrational"] = c.nonrational;
  if (c.agrees_with_dets) j["agrees_with_dets"] = *c.agrees_with_dets;
  return j;
}

inline json covariant_classification_json(const CovariantClassification& c) {
  json j = classification_json(c.rest);
  json br = json::array();
  for (const auto& b : c.sector_branches) br.push_back(branch_json(b));
  j["sector_verdict"] = verdict_str(c.sector_verdict);
  j["sector_branches"] = br;
  j["agrees_with_dets"] = c.agree;
  j["moving_frame_ok"] = c.moving_frame_ok;
  return j;
}

inline json pauli_reduction_json(const PauliReduction& r) {
  return {{"schema", kSchemaVersion},
          {"system", "LL"},
          {"equation", fit_json(r.fit)},
          {"slaving", fit_json(r.slaving_fit)},
          {"g_spin_half", r.g_spin_half.str()},
          {"g_sigma", r.g_literal.str()},
          {"lambda3", r.lambda3.str()}};
}

inline json dkp_reduction_json(const DkpReduction& r) {
  return {{"schema", kSchemaVersion},
          {"system", "DKP"},
          {"hamiltonian", fit_json(r.fit)},
          {"rest", r.rest.str()},
          {"g", r.g.str()},
          {"q_from_sE", r.q_electric.str()},
          {"q_from_cross", r.q_cross.str()},
          {"two_minus_q_from_QdH", r.two_minus_q.str()},
          {"quadratic", r.quadratic.str()}};
}

inline json proca_reduction_json(const ProcaGaugeReport& r) {
  json j{{"schema", kSchemaVersion},
         {"system", "Proca"},
         {"terms", fit_json(r.fit)},
         {"g", r.g.str()},
         {"quadratic", r.quadratic.str()},
         {"boost_coupling", r.boost_coupling.str()},
         {"so4", check_json(r.so4, false)},
         {"so13", check_json(r.so13, false)}};
  if (r.hermitian) j["hermitian"] = *r.hermitian;
  return j;
}

// ---------------------------------------------------------------------------
// Catalog materialization

inline std::optional<QIndex> parse_qindex(std::string s) {
  std::string digits;
  for (char c : s)
    if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
    else if (c != '(' && c != ')' && c != ',' && c != ' ' && c != 'D') return std::nullopt;
  if (digits.size() != 3) return std::nullopt;
  return QIndex{digits[0] - '0', digits[1] - '0', digits[2] - '0'};
}

inline json catalog_reps_json(const std::optional<QIndex>& only) {
  json reps = json::array();
  for (const auto& q : table1_rows()) {
    if (only && q != *only) continue;
    ABCTriple t = table1_abc(q);
    json j = rep_json(build_rep(RepDescriptor::row(q)));
    j["A"] = matrix_json(t.A);
    j["B"] = matrix_json(t.B);
    j["C"] = matrix_json(t.C);
    reps.push_back(j);
  }
  return {{"schema", kSchemaVersion}, {"reps", reps}};
}

// Each non-empty cell with its symbolic blocks and one sampled system per constraint branch.
inline json catalog_systems_json(const std::optional<QIndex>& only, std::uint64_t seed) {
  Sampler s(seed);
  json cells = json::array();
  for (const auto& c : all_table_cells()) {
    if (!c.R_exists && !c.E_exists) continue;
    if (only && (c.q != *only || c.q2 != *only)) continue;
    json branches = json::array();
    ABCTriple x = table1_abc(c.q), y = table1_abc(c.q2);
    for (const auto& br : constraint_branches(c)) {
      auto vals = sample_branch(c, br, s);
      json v = json::object();
      for (const auto& kv : vals) v[sym_name(kv.first)] = kv.second.str();
      BetaSystem bs = assemble_cell(c, vals);
      branches.push_back({{"branch", br.label},
                          {"values", v},
                          {"b2", b2_residual(x, y, subs(c.R, vals), subs(c.E, vals)).is_zero()},
                          {"cond", verify_invariance(bs).ok()},
                          {"system", beta_json(bs)}});
    }
    cells.push_back({{"cell", q_str(c.q) + "x" + q_str(c.q2)},
                     {"R", matrix_json(c.R)},
                     {"E", matrix_json(c.E)},
                     {"branches", branches}});
  }
  return {{"schema", kSchemaVersion}, {"seed", seed}, {"cells", cells}};
}

inline std::vector<BetaSystem> catalog_golden_systems(const std::optional<QIndex>& only) {
  std::vector<BetaSystem> out;
  for (const auto& bs : {catalog::m1(), catalog::m2(), catalog::m3(), catalog::m4()})
    if (!only || bs.rep.descriptor.q == *only) out.push_back(bs);
  return out;
}

}  // namespace galileq
