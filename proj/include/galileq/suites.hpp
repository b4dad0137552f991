#pragma once

#include "contraction.hpp"
#include "covariant.hpp"
#include "gauge.hpp"
#include "io.hpp"
#include "report.hpp"
#include "spectral.hpp"
#include "structure.hpp"

namespace galileq {

// ---------------------------------------------------------------------------
// Verification suites shared by the CLI and the acceptance driver

struct SuiteResult {
  std::string name;
  bool ok = true;
  std::vector<std::string> failures;
  json detail = json::object();

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      failures.push_back(what);
    }
  }
};

inline json suite_json(const SuiteResult& r) {
  return {{"suite", r.name}, {"ok", r.ok}, {"failures", r.failures}, {"detail", r.detail}};
}

namespace detail {

inline std::array<Cx, 3> random_direction(Sampler& s) { return {Cx(s.nonzero()), Cx(s.nonzero()), Cx(s.nonzero())}; }

inline std::string cell_str(const REBlocks& c) { return q_str(c.q) + "x" + q_str(c.q2); }

inline std::map<Rational, std::size_t> s2_content(const ClassificationResult& c) {
  std::map<Rational, std::size_t> k;
  for (const auto& b : c.branches)
    for (const auto& e : b.s2) k[e.value] += e.dim;
  return k;
}

inline std::size_t total_multiplicity(const ClassificationResult& c) {
  std::size_t n = 0;
  for (const auto& b : c.branches) n += b.multiplicity;
  return n;
}

inline json rationals_json(const std::vector<Rational>& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(x.get_str());
  return j;
}

}  // namespace detail

// ABC triples: (A1) for the triples, hg(1,3) relations for the built reps, nilpotency of eta.u.
// With printed_entries the (2,1,1) row is taken as printed.
inline SuiteResult suite_table1(bool printed_entries = true, std::uint64_t seed = 1) {
  SuiteResult r{"table1"};
  Sampler s(seed);
  json rows = json::array();
  for (const auto& q : table1_rows()) {
    ABCTriple t = printed_entries && q == QIndex{2, 1, 1} ? table1_abc_printed_211() : table1_abc(q);
    bool a1 = satisfies_a1(t);
    GalileiRep rep = build_rep(RepDescriptor::row(q));
    bool hg = verify_hg(rep).ok();
    bool zero_eta = rep.eta[0].is_zero() && rep.eta[1].is_zero() && rep.eta[2].is_zero();
    int expect = zero_eta ? 1 : ((q == QIndex{3, 1, 1} || q == QIndex{1, 2, 1}) ? 3 : 2);
    bool nil = true;
    int got = 0;
    for (int k = 0; k < 3; ++k) {
      auto n = nilpotency_index(rep, detail::random_direction(s));
      got = n.value_or(-1);
      nil = nil && n && *n == expect;
    }
    r.check(a1, "(A1) " + q_str(q));
    r.check(hg, "hg relations " + q_str(q));
    r.check(nil, "nilpotency " + q_str(q));
    rows.push_back({{"row", q_str(q)}, {"A1", a1}, {"hg", hg}, {"nilpotency", got}, {"expected", expect}});
  }
  r.detail["rows"] = rows;
  r.detail["printed_entries"] = printed_entries;
  if (printed_entries) r.detail["corrected_211_A1"] = satisfies_a1(table1_abc({2, 1, 1}));
  return r;
}

// (R,E) cells: (b2) on sampled parameters of every cell and branch; invariance of assembled systems.
inline SuiteResult suite_appendix_a(int samples = 5, std::uint64_t seed = 3) {
  SuiteResult r{"appendixA"};
  Sampler s(seed);
  std::size_t cells = 0, assembled = 0;
  json bad = json::array();
  for (const auto& c : all_table_cells()) {
    ++cells;
    ABCTriple x = table1_abc(c.q), y = table1_abc(c.q2);
    bool b2 = true, cond = true;
    for (const auto& br : constraint_branches(c))
      for (int t = 0; t < samples; ++t) {
        auto vals = sample_branch(c, br, s);
        if (!b2_residual(x, y, subs(c.R, vals), subs(c.E, vals)).is_zero()) b2 = false;
        if (t == 0 && (c.R_exists || c.E_exists)) {
          ++assembled;
          if (!verify_invariance(assemble_cell(c, vals)).ok()) cond = false;
        }
      }
    r.check(b2, "(b2) " + detail::cell_str(c));
    r.check(cond, "(cond) " + detail::cell_str(c));
    if (!b2 || !cond) bad.push_back({{"cell", detail::cell_str(c)}, {"b2", b2}, {"cond", cond}});
  }
  r.detail["cells"] = cells;
  r.detail["assembled_systems"] = assembled;
  r.detail["samples_per_branch"] = samples;
  r.detail["failing_cells"] = bad;
  return r;
}

inline bool removes_omega(const std::array<PMat, 5>& conj) {
  BetaSystem ll0 = catalog::levy_leblond();
  for (int m = 0; m < 4; ++m)
    if (conj[m] != ll0.beta[m]) return false;
  return conj[4].block(0, 2, 2, 2).is_zero() && conj[4].block(2, 0, 2, 2).is_zero() &&
         conj[4].block(2, 2, 2, 2) == ll0.beta[4].block(2, 2, 2, 2);
}

// Canonical systems: golden files, Levy-Leblond invariance, removal of omega by the printed U.
inline SuiteResult suite_canonical() {
  SuiteResult r{"canonical"};
  json golden = json::object();
  for (const auto& bs : {catalog::m1(), catalog::m2(), catalog::m3(), catalog::m4()}) {
    auto diff = compare_golden(bs, load_golden(bs.id));
    bool inv = verify_invariance(bs).ok();
    r.check(diff.empty(), "golden " + bs.id);
    r.check(inv, "(cond) " + bs.id);
    golden[bs.id] = {{"mismatches", diff}, {"cond", inv}};
  }
  r.detail["golden"] = golden;
  bool ll = verify_invariance(catalog::levy_leblond()).ok();
  r.check(ll, "(cond) Levy-Leblond");
  r.detail["levy_leblond_cond"] = ll;
  Poly kappa = Poly::var("kappa"), omega = Poly::var("omega");
  BetaSystem llw = catalog::levy_leblond(kappa, omega);
  PMat U = catalog::ll_printed_U(omega);
  PMat Ui = *inverse_laurent(U);
  json readings = json::object();
  bool any = false;
  for (const auto& [name, V] : std::vector<std::pair<std::string, PMat>>{
           {"U", U}, {"U^dag", U.dagger()}, {"U^-1", Ui}, {"(U^-1)^dag", Ui.dagger()}}) {
    bool rm = removes_omega(catalog::conjugate_betas(llw.beta, V));
    bool boost = true;
    try {
      equiv_transform(llw, V);
    } catch (const std::invalid_argument&) {
      boost = false;
    }
    readings[name] = {{"removes_omega", rm}, {"commutes_with_boosts", boost}};
    any = any || (rm && boost);
  }
  r.check(any, "printed U removes omega");
  r.detail["printed_U"] = readings;
  BetaSystem t = equiv_transform(llw, catalog::ll_omega_eliminator(omega));
  BetaSystem target = catalog::levy_leblond(kappa - Poly(make_q(1, 2)) * omega * omega, Poly(0));
  bool elim = true;
  for (int m = 0; m < 5; ++m) elim = elim && t.beta[m] == target.beta[m];
  r.detail["eliminator_removes_omega"] = elim;
  r.detail["eliminator_kappa_shift"] = "-omega^2/2";
  return r;
}

// Structure: Clifford relations, DKP relations for the transformed (M4) matrices, hermitizers.
inline SuiteResult suite_structure(bool printed = true) {
  SuiteResult r{"structure"};
  GammaSet g = gamma_set();
  GammaSet gp = g;
  for (int a = 0; a < 3; ++a) gp.gamma[1 + a] = gamma_spatial_printed(a);
  const GammaSet& use = printed ? gp : g;
  CheckReport kl = klifford_report(use.gamma);
  CheckReport gh = gamma_hermitizer_report(use);
  r.check(kl.ok(), "(klifford) " + std::to_string(count_ok(kl)) + "/" + std::to_string(kl.items.size()));
  r.check(gh.ok(), "(geta) hermitizer");
  json kd = json::object();
  int factor = printed ? 2 : 1;
  for (int nu : {1, 2, -3}) {
    DKPSet d = dkp_from_m4(Poly(nu));
    CheckReport k = kd2_report(d.beta_tilde, 5, factor);
    CheckReport h = check_hermiticity(d.beta_tilde, d.eta);
    r.check(k.ok(), "(KD2) nu=" + std::to_string(nu) + " " + std::to_string(count_ok(k)) + "/125");
    r.check(h.ok(), "(eta) hermitizer nu=" + std::to_string(nu));
    kd[std::to_string(nu)] = {{"kd2_ok", count_ok(k)}, {"kd2_total", k.items.size()}, {"eta", h.ok()}};
  }
  r.detail["printed"] = printed;
  r.detail["klifford_ok"] = count_ok(kl);
  r.detail["kd2_factor"] = factor;
  r.detail["kd2"] = kd;
  if (printed) {
    CheckReport kc = klifford_report(g.gamma);
    r.detail["corrected_gamma_klifford_ok"] = count_ok(kc);
    r.detail["corrected_gamma_hermitizer"] = gamma_hermitizer_report(g).ok();
    r.detail["kd2_unit_factor_ok"] = kd2_report(dkp_from_m4(Poly::var("nu")).beta_tilde, 5, 1).ok();
  }
  return r;
}

struct OracleExpectation {
  std::string id;
  std::size_t multiplicity;
  std::set<Rational> s2;
  Rational epsilon;
};

// Classification oracle agreement with expected multiplicities, spin content and internal energy (m = 1).
inline SuiteResult suite_classification() {
  SuiteResult r{"classification"};
  json rows = json::array();
  auto record = [&](const std::string& id, const ClassificationResult& c, bool agree, std::size_t mult,
                    std::set<Rational> s2, Rational eps) {
    auto content = detail::s2_content(c);
    std::set<Rational> got_s2;
    for (const auto& kv : content) got_s2.insert(kv.first);
    std::vector<Rational> eps_got;
    for (const auto& b : c.branches) eps_got.push_back(b.epsilon);
    bool eps_ok = !eps_got.empty();
    for (const auto& e : eps_got) eps_ok = eps_ok && e == eps;
    std::size_t m = detail::total_multiplicity(c);
    r.check(agree, id + " oracles agree");
    r.check(m == mult, id + " multiplicity " + std::to_string(m) + " (expected " + std::to_string(mult) + ")");
    r.check(got_s2 == s2, id + " S^2 content");
    r.check(eps_ok, id + " internal energy");
    json s2j = json::array();
    for (const auto& v : got_s2) s2j.push_back(v.get_str());
    rows.push_back({{"system", id}, {"verdict", verdict_str(c.verdict)}, {"agree", agree}, {"multiplicity", m},
                    {"s2", s2j}, {"epsilon", detail::rationals_json(eps_got)}, {"expected_epsilon", eps.get_str()}});
  };
  auto beta_row = [&](const BetaSystem& bs, std::size_t mult, std::set<Rational> s2, Rational eps) {
    auto c = classify(bs, Rational(1));
    record(bs.id + (bs.params.count("nu") ? " nu=" + bs.params.at("nu").str() : ""), c,
           c.agrees_with_dets.value_or(false), mult, s2, eps);
  };
  beta_row(catalog::m1(), 1, {Rational(0)}, Rational(0));
  beta_row(catalog::m2(), 3, {Rational(2)}, Rational(0));
  beta_row(catalog::m3(), 4, {Rational(2), Rational(0)}, Rational(0));
  for (int nu : {1, 2}) beta_row(catalog::m4(Poly(nu)), 3, {Rational(2)}, Rational(nu * nu));
  auto cov_row = [&](const std::string& id, const CovariantSystem& sys, std::size_t mult, std::set<Rational> s2) {
    auto c = classify_covariant(sys, Rational(1));
    record(id, c.rest, c.agree && c.moving_frame_ok, mult, s2, Rational(0));
  };
  cov_row("Proca-Fixed lambda=1", proca_first_order({ProcaMode::FixedSpin, Poly(1)}), 3, {Rational(2)});
  for (int nu : {1, 2})
    cov_row("Proca-Two nu=" + std::to_string(nu), proca_first_order({ProcaMode::TwoSpin, Poly(nu)}), 4,
            {Rational(2), Rational(0)});
  cov_row("Rarita-Schwinger lambda=1", rs_system(Poly(1)), 4, {make_q(15, 4)});
  r.detail["systems"] = rows;
  return r;
}

// W-identity and boosted spin Casimir for every catalog system.
inline SuiteResult suite_w_identity() {
  SuiteResult r{"wident"};
  json rows = json::array();
  std::vector<BetaSystem> systems = catalog::canonical();
  systems.push_back(catalog::levy_leblond(Poly::var("kappa"), Poly::var("omega")));
  for (const auto& bs : systems) {
    bool w = w_identity(bs).ok();
    PMat W = w_matrix(bs.rep, 1), Wi = w_matrix(bs.rep, -1);
    Poly m = Poly::var("m");
    bool c3 = W * casimirs(bs.rep).C3 * Wi == (m * m) * pmat(spin_squared(bs.rep.S));
    r.check(w, "W-identity " + bs.id);
    r.check(c3, "W C3 W^-1 " + bs.id);
    rows.push_back({{"system", bs.id}, {"w_identity", w}, {"casimir", c3}});
  }
  r.detail["systems"] = rows;
  return r;
}

// ---------------------------------------------------------------------------
// Gauge reductions against the printed coefficients

inline SuiteResult suite_gauge() {
  SuiteResult r{"gauge"};
  Poly e = e_sym(), m = m_sym(), nu = Poly::var("nu"), mu = Poly::var("mu"), l1 = Poly::var("lambda1"),
       l2 = Poly::var("lambda2");
  json d = json::object();
  {
    NCAlgebra alg(NCConfig::second_order_in_e());
    auto p = reduce_levy_leblond(alg, Poly(0), Poly(0), Poly(0), Poly(0));
    bool ok = p.fit.exact() && p.g_spin_half == Poly(2);
    r.check(ok, "(pauli) g = 2");
    d["pauli"] = {{"exact", p.fit.exact()}, {"g", p.g_spin_half.str()}, {"terms", fit_json(p.fit)}};
    auto a = reduce_levy_leblond(alg, nu, mu, l1, l2);
    Poly printed_g = Poly(2) + mu * l1 + nu * l2;
    bool g_ok = a.fit.exact() && (a.g_spin_half == printed_g || a.g_literal == printed_g);
    r.check(g_ok, "(paulii) g = 2 + mu lambda1 + nu lambda2");
    r.check(a.lambda3 == mu * l2, "(paulii) lambda3 = mu lambda2");
    d["paulii"] = {{"exact", a.fit.exact()},
                   {"g_spin_half", a.g_spin_half.str()},
                   {"g_sigma", a.g_literal.str()},
                   {"printed_g", printed_g.str()},
                   {"lambda3", a.lambda3.str()},
                   {"terms", fit_json(a.fit)}};
  }
  {
    NCAlgebra alg(NCConfig::second_order_in_e());
    auto h = reduce_dkp(alg, nu, l1, l2);
    Poly g_printed = Poly(1) + Poly(2) * l1 + Poly(2) * l2, q_printed = Poly(1) - l2;
    r.check(h.fit.exact(), "(Ha) reduction closes on the printed structures");
    r.check(h.rest == Poly(make_q(1, 2)) * nu * nu * m, "(Ha) rest energy nu^2 m/2");
    r.check(h.g == g_printed, "(Ha) g = 1 + 2 lambda1 + 2 lambda2");
    r.check(h.q_electric == q_printed && h.q_cross == q_printed && h.two_minus_q == Poly(2) - q_printed,
            "(Ha) q = 1 - lambda2");
    d["Ha"] = {{"exact", h.fit.exact()},
               {"rest", h.rest.str()},
               {"g", h.g.str()},
               {"printed_g", g_printed.str()},
               {"q_from_sE", h.q_electric.str()},
               {"q_from_cross", h.q_cross.str()},
               {"two_minus_q_from_QdH", h.two_minus_q.str()},
               {"printed_q", q_printed.str()},
               {"quadratic", h.quadratic.str()},
               {"terms", fit_json(h.fit)}};
  }
  {
    NCAlgebra alg(NCConfig::second_order_in_e());
    auto p = proca_gauge_reduce(alg, mu, Rational(0), Poly(1));
    Poly want = Poly(make_q(1, 2)) * (Poly(1) - mu) * (Poly(1) - mu) * e * e * m.pow(-3);
    r.check(p.fit.exact() && p.quadratic == want, "(P23) quadratic coefficient (1-mu)^2 e^2/2m^3");
    d["P23"] = {{"exact", p.fit.exact()}, {"quadratic", p.quadratic.str()}, {"g", p.g.str()}};
    r.check(p.so4.ok(), "(P26) so(4) closure");
    r.check(p.so13.ok(), "(P26) so(1,3) closure");
    d["P26"] = {{"so4", p.so4.ok()}, {"so13", p.so13.ok()}};
    NCAlgebra a1(NCConfig::first_order_in_e());
    json nus = json::object();
    for (int n : {-1, 1}) {
      auto q = proca_gauge_reduce(a1, mu, Rational(n), Poly(0));
      nus[std::to_string(n)] = {{"exact", q.fit.exact()},
                                {"g", q.g.str()},
                                {"boost_coupling", q.boost_coupling.str()},
                                {"hermitian", q.hermitian.value_or(false)}};
    }
    d["P26"]["reductions"] = nus;
  }
  {
    Poly c = Poly(make_q(1, 8)) * e * Poly::var("lambda3").pow(2) * m.pow(-2);
    json conv = json::object();
    bool reproduced = false;
    for (int sign : {1, -1}) {
      NCConfig cfg = NCConfig::first_order_in_e();
      cfg.window[sym("lambda3")] = {0, 2};
      cfg.commutator_sign = sign;
      NCAlgebra alg(cfg);
      auto o = spin_orbit_ll(alg, 1);
      bool exact = o.first_order_cancels && o.fit.exact();
      bool printed = exact && o.fit.get("s.(pi x E - E x pi)") == -c && o.fit.get("div E") == c;
      reproduced = reproduced || printed;
      conv[sign > 0 ? "+" : "-"] = {{"first_order_cancels", o.first_order_cancels},
                                    {"terms", fit_json(o.fit)},
                                    {"matches_printed", printed}};
    }
    r.check(reproduced, "(orb) prefactor e lambda3^2/8m^2");
    d["orb"] = {{"by_commutator_sign", conv}, {"prefactor", c.str()}};
  }
  {
    json conv = json::object();
    bool ok = false;
    Poly lam_printed = Poly(2) * nu.pow(-2);
    for (int sign : {1, -1}) {
      NCConfig cfg = NCConfig::first_order_in_e();
      cfg.window[sym("nu")] = {-2, 2};
      cfg.commutator_sign = sign;
      NCAlgebra alg(cfg);
      NCElement H = dkp_hamiltonian_printed(alg, nu, Poly(make_q(1, 2)), Poly(-1));
      json gens = json::object();
      for (int gs : {1, -1}) {
        auto o = spin_orbit_dkp(alg, H, nu, gs);
        bool exact = o.first_order_cancels && o.fit.exact();
        // pi0 - H - (lambda e/m^2)(s.(pi x E - E x pi) + 4/3 div E - Q.dE)
        Poly k = -(e * lam_printed * m.pow(-2));
        bool printed = exact && o.fit.get("s.(pi x E - E x pi)") == k && o.fit.get("Q.dE") == -k &&
                       o.fit.get("div E") == Poly(make_q(4, 3)) * k;
        ok = ok || printed;
        Poly lam = exact ? -(m * m * e.pow(-1) * o.fit.get("s.(pi x E - E x pi)")) : Poly(0);
        bool shape = exact && o.fit.get("Q.dE") == -o.fit.get("s.(pi x E - E x pi)");
        gens[gs > 0 ? "printed" : "reversed"] = {{"first_order_cancels", o.first_order_cancels},
                                                 {"terms", fit_json(o.fit)},
                                                 {"lambda_from_spin_orbit", lam.str()},
                                                 {"quadrupole_shape", shape},
                                                 {"matches_printed", printed}};
      }
      conv[sign > 0 ? "+" : "-"] = gens;
    }
    r.check(ok, "(orb1) lambda = 2/nu^2");
    d["orb1"] = {{"by_commutator_sign", conv}, {"printed_lambda", lam_printed.str()}};
  }
  {
    NCAlgebra alg(NCConfig::second_order_in_e());
    auto f = fit_terms(alg, dkp_hamiltonian_printed(alg, nu, Poly(make_q(-1, 2)), Poly(1)), dkp_basis(alg));
    Poly g = Poly(-2) * m * e.pow(-1) * f.get("s.H");
    bool ok = f.exact() && g == Poly(2) && f.get("s.E").is_zero() && f.get("s.(pi x H - H x pi)").is_zero();
    r.check(ok, "(orb2) g = 2 with no electric coupling");
    auto h = reduce_dkp(alg, nu, Poly(make_q(-1, 2)), Poly(1));
    d["orb2"] = {{"printed_form_g", g.str()}, {"derived_g", h.g.str()}, {"derived_q_from_sE", h.q_electric.str()}};
  }
  r.detail = d;
  return r;
}

inline SuiteResult suite_contraction() {
  SuiteResult r{"contraction"};
  auto c = contraction_pipeline();
  r.check(c.derivation.G.has_value() && c.derivation.recovers_relativistic, "component equations follow from Proca");
  r.check(c.match.ok, "lowest order equals the Galilean system");
  r.check(c.slaved_free, "essential equations free of the slaved component");
  r.check(c.m2.witness.has_value(), "witness to (M2)");
  r.check(c.witness_invariant, "witness-transformed pencil passes (cond)");
  r.check(!c.galilean_proca.witness && !c.galilean_proca_essential.witness, "no witness to the Galilean Proca pencil");
  r.detail = contraction_json(c);
  auto p = contraction_pipeline(MomentumScaling::AsPrinted);
  r.detail["as_printed_scaling"] = {{"match", p.match.ok}, {"lowest_power", p.contracted.lowest},
                                    {"witness_M2", p.m2.witness.has_value()}};
  return r;
}

inline std::vector<BetaSystem> numeric_catalog() {
  return {catalog::m1(), catalog::m2(), catalog::m3(), catalog::m4(Poly(1)), catalog::m4(Poly(2)),
          catalog::levy_leblond()};
}

// Equivalence transformations and boosts leave the classification unchanged.
inline SuiteResult suite_metamorphic(std::uint64_t seed = 20261016, int trials = 3) {
  SuiteResult r{"metamorphic"};
  Sampler s(seed);
  json rows = json::array();
  for (const auto& bs : numeric_catalog()) {
    auto base = classify(bs, Rational(1));
    int equiv_ok = 0, boost_ok = 0;
    for (int t = 0; t < trials; ++t) {
      auto V = random_commutant_element(bs.rep, s);
      if (V) {
        auto c = classify(equiv_transform(bs, *V), Rational(1));
        if (c.verdict == base.verdict && same_branches(c.branches, base.branches)) ++equiv_ok;
      }
      std::array<Rational, 3> p{s.nonzero(), s.nonzero(), s.nonzero()}, v{s.nonzero(), s.nonzero(), s.nonzero()};
      if (boost_covariance(bs, make_q(3, 2), p, v)) ++boost_ok;
    }
    r.check(equiv_ok == trials, "equivalence transforms " + bs.id);
    r.check(boost_ok == trials, "boost covariance " + bs.id);
    rows.push_back({{"system", bs.id}, {"verdict", verdict_str(base.verdict)}, {"equiv_ok", equiv_ok},
                    {"boost_ok", boost_ok}, {"trials", trials}});
  }
  r.detail["systems"] = rows;
  return r;
}

// ---------------------------------------------------------------------------
// CLI verify suites

inline SuiteResult suite_invariance() {
  SuiteResult r{"invariance"};
  json rows = json::array();
  for (const auto& bs : catalog::canonical()) {
    auto c = verify_invariance(bs);
    r.check(c.ok(), bs.id);
    rows.push_back({{"system", bs.id}, {"ok", c.ok()}, {"failures", c.failures()}});
  }
  r.detail["systems"] = rows;
  return r;
}

inline SuiteResult suite_clifford() {
  SuiteResult r{"clifford"};
  GammaSet g = gamma_set();
  auto k = klifford_report(g.gamma);
  r.check(k.ok(), "(klifford)");
  r.check(gamma_hermitizer_report(g).ok(), "hermitizer");
  r.detail["pairs"] = k.items.size();
  r.detail["ok_pairs"] = count_ok(k);
  return r;
}

inline SuiteResult suite_dkp() {
  SuiteResult r{"dkp"};
  DKPSet d = dkp_from_m4(Poly::var("nu"));
  auto k = kd2_report(d.beta_tilde, 5, 1);
  r.check(k.ok(), "(KD2)");
  r.check(check_hermiticity(d.beta_tilde, d.eta).ok(), "hermitizer");
  r.detail["triples"] = k.items.size();
  r.detail["ok_triples"] = count_ok(k);
  r.detail["factor"] = 1;
  return r;
}

inline SuiteResult suite_lemma(std::uint64_t seed = 31) {
  SuiteResult r{"lemma"};
  Sampler s(seed);
  json rows = json::array();
  for (const auto& rep : {build_rep(RepDescriptor::spinor2()), catalog::d311_rebased(),
                          build_rep(RepDescriptor::row({2, 2, 1}))}) {
    auto sols = solve_lambda(rep);
    bool ok = true;
    for (const auto& L : sols) {
      ok = ok && solves_lemma(rep, L);
      ok = ok && lemma_invariance_check(rep, L, detail::random_direction(s)).ok();
    }
    r.check(ok, rep.descriptor.str());
    rows.push_back({{"rep", rep.descriptor.str()}, {"solutions", sols.size()}, {"ok", ok}});
  }
  r.detail["reps"] = rows;
  return r;
}

inline SuiteResult suite_algebra() {
  SuiteResult r = suite_table1(false);
  r.name = "algebra";
  return r;
}

inline std::vector<std::string> verify_suite_names() {
  return {"algebra", "invariance", "clifford", "dkp", "lemma", "wident", "appendixA"};
}

inline SuiteResult run_verify_suite(const std::string& name) {
  if (name == "algebra") return suite_algebra();
  if (name == "invariance") return suite_invariance();
  if (name == "clifford") return suite_clifford();
  if (name == "dkp") return suite_dkp();
  if (name == "lemma") return suite_lemma();
  if (name == "wident") return suite_w_identity();
  if (name == "appendixA") return suite_appendix_a();
  throw std::invalid_argument("unknown suite: " + name);
}

// ---------------------------------------------------------------------------
// Acceptance criteria

struct Criterion {
  int number;
  std::string title;
  std::function<SuiteResult()> run;
};

inline std::vector<Criterion> acceptance_criteria() {
  return {{1, "ABC triples, representations and nilpotency", [] { return suite_table1(true); }},
          {2, "(R,E) cells and assembled systems", [] { return suite_appendix_a(); }},
          {3, "Canonical systems and omega removal", [] { return suite_canonical(); }},
          {4, "Clifford, DKP and hermitizer identities", [] { return suite_structure(true); }},
          {5, "Classification oracle agreement", [] { return suite_classification(); }},
          {6, "W-identity and boosted Casimir", [] { return suite_w_identity(); }},
          {7, "Gauge reductions", [] { return suite_gauge(); }},
          {8, "Contraction of the relativistic Proca system", [] { return suite_contraction(); }},
          {9, "Metamorphic invariances", [] { return suite_metamorphic(); }}};
}

}  // namespace galileq
