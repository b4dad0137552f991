#pragma once

#include "covariant.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "spectral.hpp"

namespace galileq {

// ---------------------------------------------------------------------------
// Relativistic Proca system and its Galilean contraction

inline CMat minkowski_metric() {
  CMat g(4, 4);
  g(0, 0) = Cx(1);
  for (int a = 1; a < 4; ++a) g(a, a) = Cx(-1);
  return g;
}

inline Poly eps_c() { return Poly::var("eps_c"); }
inline Poly kappa_sym() { return Poly::var("kappa"); }

// relativistic momentum with upper index; P0 = P^0, Pa = P^a
inline std::array<Poly, 4> rel_momentum() {
  return {Poly::var("P0"), Poly::var("P1"), Poly::var("P2"), Poly::var("P3")};
}

inline Poly lower(const std::array<Poly, 4>& v, int mu) { return minkowski_metric()(mu, mu).re * v[mu]; }

// Psi^mu (0-3), Psi^{01}, Psi^{02}, Psi^{03}, Psi^{12}, Psi^{13}, Psi^{23}
inline std::vector<std::string> proca_rel_slots() {
  return {"Psi0", "Psi1", "Psi2", "Psi3", "Psi01", "Psi02", "Psi03", "Psi12", "Psi13", "Psi23"};
}

// R^a, N^a, W^a, B
inline std::vector<std::string> contraction_slots() {
  return {"R1", "R2", "R3", "N1", "N2", "N3", "W1", "W2", "W3", "B"};
}

namespace detail {

// slot of Psi^{mu nu} and the sign relating it to the stored mu < nu component
inline std::pair<std::size_t, int> tensor_slot(int mu, int nu) {
  static const int idx[4][4] = {{-1, 4, 5, 6}, {4, -1, 7, 8}, {5, 7, -1, 9}, {6, 8, 9, -1}};
  if (mu == nu) return {0, 0};
  return {static_cast<std::size_t>(idx[mu][nu]), mu < nu ? 1 : -1};
}

}  // namespace detail

// p^mu Psi^nu - p^nu Psi^mu = kappa Psi^{mu nu} (mu < nu), p_nu Psi^{nu mu} = kappa Psi^mu
inline PMat proca_relativistic() {
  auto P = rel_momentum();
  Poly k = kappa_sym();
  PMat L(10, 10);
  std::size_t row = 0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu, ++row) {
      L(row, nu) += P[mu];
      L(row, mu) -= P[nu];
      L(row, detail::tensor_slot(mu, nu).first) -= k;
    }
  for (int mu = 0; mu < 4; ++mu, ++row) {
    for (int nu = 0; nu < 4; ++nu) {
      if (nu == mu) continue;
      auto [s, sign] = detail::tensor_slot(nu, mu);
      L(row, s) += Poly(sign) * lower(P, nu);
    }
    L(row, mu) -= k;
  }
  return L;
}

// X = T Psi with R^a = -(Psi^{0a} + Psi^a)/2, N^a = Psi^{0a} - Psi^a, W^c = w_sign eps^{abc} Psi_{bc}/2, B = Psi^0
inline CMat contraction_variables(int w_sign = 1) {
  CMat T(10, 10);
  Cx h = Cx(make_q(1, 2));
  for (int a = 0; a < 3; ++a) {
    std::size_t t0a = detail::tensor_slot(0, a + 1).first;
    T(a, t0a) = -h;
    T(a, a + 1) = -h;
    T(3 + a, t0a) = Cx(1);
    T(3 + a, a + 1) = Cx(-1);
  }
  // Psi_{bc} = Psi^{bc} for spatial b, c
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        int e = levi(a, b, c);
        if (!e) continue;
        auto [s, sign] = detail::tensor_slot(a + 1, b + 1);
        T(6 + c, s) += Cx(make_q(w_sign * e * sign, 2));
      }
  T(9, 0) = Cx(1);
  return T;
}

// Four equation groups over (R, N, W, B):
// 2(p^0 - kappa) R^a + p^a B + eps^{abc} p_b W_c = 0
// (p^0 + kappa) N^a - eps^{abc} p_b W_c + p^a B = 0
// eps^{abc} p_b (R_c + N_c/2) - kappa W^a = 0
// p_a N^a/2 - p_a R^a - kappa B = 0
inline PMat proca_components_printed() {
  auto P = rel_momentum();
  Poly k = kappa_sym();
  PMat E(10, 10);
  auto R = [](int a) { return static_cast<std::size_t>(a); };
  auto N = [](int a) { return static_cast<std::size_t>(3 + a); };
  auto W = [](int a) { return static_cast<std::size_t>(6 + a); };
  const std::size_t B = 9;
  // repeated spatial indices are summed without metric signs
  for (int a = 0; a < 3; ++a) {
    E(a, R(a)) += Poly(2) * (P[0] - k);
    E(a, B) += P[a + 1];
    E(3 + a, N(a)) += P[0] + k;
    E(3 + a, B) += P[a + 1];
    E(6 + a, W(a)) -= k;
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        int e = levi(a, b, c);
        if (!e) continue;
        E(a, W(c)) += Poly(e) * P[b + 1];
        E(3 + a, W(c)) -= Poly(e) * P[b + 1];
        E(6 + a, R(c)) += Poly(e) * P[b + 1];
        E(6 + a, N(c)) += Poly(make_q(e, 2)) * P[b + 1];
      }
    E(9, N(a)) += Poly(make_q(1, 2)) * P[a + 1];
    E(9, R(a)) -= P[a + 1];
  }
  E(9, B) -= k;
  return E;
}

struct ComponentDerivation {
  PMat relativistic;  // relativistic Proca operator acting on Psi
  int w_sign = 1;     // sign in the definition of W for which the groups follow
  CMat T;             // X = T Psi
  PMat components;    // equation groups acting on X
  std::optional<CMat> G;  // components = G relativistic T^-1
  bool recovers_relativistic = false;  // G^-1 components T == relativistic
};

// Constant left recombination G with G L T^-1 = E, found by matching coefficients of every monomial.
inline std::optional<CMat> left_recombination(const PMat& L, const PMat& E) {
  std::size_t n = L.rows(), c = L.cols();
  std::set<Mono> monos;
  for (const auto* M : {&L, &E})
    for (const auto& p : M->data())
      for (const auto& t : p.terms()) monos.insert(t.first);
  // unknowns G(i,k) row by row; equations per (j, mono)
  CMat A(c * monos.size(), n);
  std::vector<CMat> rhs(n, CMat(c * monos.size(), 1));
  std::size_t r = 0;
  for (std::size_t j = 0; j < c; ++j)
    for (const auto& mo : monos) {
      for (std::size_t k = 0; k < n; ++k) {
        auto it = L(k, j).terms().find(mo);
        if (it != L(k, j).terms().end()) A(r, k) = it->second;
      }
      for (std::size_t i = 0; i < n; ++i) {
        auto it = E(i, j).terms().find(mo);
        if (it != E(i, j).terms().end()) rhs[i](r, 0) = it->second;
      }
      ++r;
    }
  CMat G(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = solve(A, rhs[i]);
    if (!x) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) G(i, k) = (*x)(k, 0);
  }
  return G;
}

inline ComponentDerivation proca_relativistic_components() {
  ComponentDerivation d;
  d.relativistic = proca_relativistic();
  d.components = proca_components_printed();
  for (int w : {1, -1}) {
    d.w_sign = w;
    d.T = contraction_variables(w);
    auto Ti = inverse(d.T);
    if (!Ti) throw std::logic_error("contraction variables are not invertible");
    d.G = left_recombination(d.relativistic * pmat(*Ti), d.components);
    if (!d.G) continue;
    auto Gi = inverse(*d.G);
    d.recovers_relativistic = Gi && pmat(*Gi) * d.components * pmat(d.T) == d.relativistic;
    break;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Scaling and lowest-order extraction

enum class MomentumScaling {
  Consistent,  // p^a = eps^-1 pt^a, p^0 + kappa = 2 m eps^-2
  AsPrinted    // p^a = eps pt^a, p^0 + kappa = 2 m eps^2
};

inline std::string scaling_name(MomentumScaling s) {
  return s == MomentumScaling::Consistent ? "consistent" : "as-printed";
}

struct ScaledSystem {
  PMat equations;                 // over (R, N, W, B) after scaling, Laurent in eps_c
  std::array<int, 10> field_power;  // component -> power of eps_c
  std::map<int, Poly> momentum_map;
  MomentumScaling scaling = MomentumScaling::Consistent;
};

// Galilean momenta reuse p0, p1, p2, p3, m.
inline ScaledSystem scale_system(const PMat& components, MomentumScaling s = MomentumScaling::Consistent) {
  ScaledSystem out;
  out.scaling = s;
  out.field_power = {0, 0, 0, 2, 2, 2, 1, 1, 1, 1};
  Poly e = eps_c();
  int k = s == MomentumScaling::Consistent ? -1 : 1;
  auto p = momentum3();
  for (int a = 0; a < 3; ++a) out.momentum_map[sym("P" + std::to_string(a + 1))] = e.pow(k) * p[a];
  // p^0 - kappa = pt_0 and p^0 + kappa = 2 m eps^{2k}
  Poly kap = Poly::var("m") * e.pow(2 * k) - Poly(make_q(1, 2)) * Poly::var("p0");
  out.momentum_map[sym("kappa")] = kap;
  out.momentum_map[sym("P0")] = Poly::var("p0") + kap;
  out.equations = PMat(components.rows(), components.cols());
  for (std::size_t i = 0; i < components.rows(); ++i)
    for (std::size_t j = 0; j < components.cols(); ++j)
      out.equations(i, j) = components(i, j).subs(out.momentum_map) * e.pow(out.field_power[j]);
  return out;
}

struct DroppedTerm {
  std::size_t equation;
  std::string component;
  int power;
  Poly coefficient;
};

struct Contracted {
  PMat equations;            // lowest surviving grade of each equation
  std::vector<int> lowest;   // that grade per equation
  std::vector<DroppedTerm> dropped;
  std::vector<std::size_t> empty;  // equations with no surviving term
};

inline Contracted contract(const ScaledSystem& sys) {
  int e = sym("eps_c");
  Contracted c;
  const PMat& M = sys.equations;
  c.equations = PMat(M.rows(), M.cols());
  auto slots = contraction_slots();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    std::optional<int> lo;
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero()) lo = lo ? std::min(*lo, M(i, j).min_deg(e)) : M(i, j).min_deg(e);
    if (!lo) {
      c.empty.push_back(i);
      c.lowest.push_back(0);
      continue;
    }
    c.lowest.push_back(*lo);
    for (std::size_t j = 0; j < M.cols(); ++j) {
      const Poly& x = M(i, j);
      if (x.is_zero()) continue;
      c.equations(i, j) = x.coeff(e, *lo);
      for (int k = *lo + 1; k <= x.max_deg(e); ++k) {
        Poly t = x.coeff(e, k);
        if (!t.is_zero()) c.dropped.push_back({i, slots[j], k, t});
      }
    }
  }
  return c;
}

// Galilean equations over (Rt, Nt, Wt, Bt):
// 2 pt_0 Rt^a + pt^a Bt + eps^{abc} pt_b Wt_c = 0
// eps^{abc} pt_b Rt_c = m Wt^a
// pt_a Rt^a + m Bt = 0
// 2 m Nt^a = eps^{abc} pt_b Wt_c - pt^a Bt
// Rows follow the groups of the relativistic system: 0-2 first line, 3-5 the slaving relation,
// 6-8 the second line, 9 the third.
inline PMat galilean_expected() {
  auto p = momentum3();
  Poly p0 = Poly::var("p0"), m = Poly::var("m");
  PMat E(10, 10);
  for (int a = 0; a < 3; ++a) {
    E(a, a) += Poly(2) * p0;
    E(a, 9) += p[a];
    E(3 + a, 3 + a) += Poly(2) * m;
    E(3 + a, 9) += p[a];
    E(6 + a, 6 + a) -= m;
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        int e = levi(a, b, c);
        if (!e) continue;
        E(a, 6 + c) += Poly(e) * p[b];
        E(3 + a, 6 + c) -= Poly(e) * p[b];
        E(6 + a, c) += Poly(e) * p[b];
      }
    E(9, a) += p[a];
  }
  E(9, 9) += m;
  return E;
}

struct EquationMatch {
  bool ok = false;
  std::vector<Cx> factors;  // contracted row = factor * expected row
  std::vector<std::size_t> mismatched;
};

// Equal as equations: each row agrees up to a nonzero constant factor.
inline EquationMatch match_equations(const PMat& got, const PMat& want) {
  EquationMatch r;
  for (std::size_t i = 0; i < want.rows(); ++i) {
    std::optional<Cx> f;
    bool ok = true;
    for (std::size_t j = 0; j < want.cols() && ok; ++j) {
      const Poly &g = got(i, j), &w = want(i, j);
      if (w.is_zero() || g.is_zero()) {
        ok = w.is_zero() && g.is_zero();
        continue;
      }
      auto [mo, c] = w.lead();
      auto it = g.terms().find(mo);
      if (it == g.terms().end()) {
        ok = false;
        continue;
      }
      Cx q = it->second / c;
      if (!f) f = q;
      ok = *f == q && g == w.scaled(q);
    }
    if (ok && !f) ok = false;
    r.factors.push_back(f.value_or(Cx(0)));
    if (!ok) r.mismatched.push_back(i);
  }
  r.ok = r.mismatched.empty();
  return r;
}

// ---------------------------------------------------------------------------
// Pencil equivalence witnesses

struct PencilWitness {
  CMat left;              // G
  CMat right;             // Q: block permutation with block scalings
  std::vector<std::size_t> block_map;  // target block -> source block
  std::vector<Cx> scalings;
};

struct WitnessSearch {
  std::optional<PencilWitness> witness;
  std::string reason;
};

namespace detail {

inline void permutations(std::vector<std::size_t>& cur, std::vector<bool>& used, const std::vector<std::size_t>& from,
                         const std::vector<std::size_t>& to, std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == to.size()) {
    out.push_back(cur);
    return;
  }
  for (std::size_t k = 0; k < from.size(); ++k) {
    if (used[k] || from[k] != to[cur.size()]) continue;
    used[k] = true;
    cur.push_back(k);
    permutations(cur, used, from, to, out);
    cur.pop_back();
    used[k] = false;
  }
}

}  // namespace detail

// Looks for constant invertible G and block-monomial Q with G L_from Q = L_to.
// Blocks are contiguous component groups; Q maps each target block onto a source block of equal size.
inline WitnessSearch find_witness(const PMat& L_from, const std::vector<std::size_t>& from_blocks, const PMat& L_to,
                                  const std::vector<std::size_t>& to_blocks, std::uint64_t seed = 1) {
  WitnessSearch ws;
  if (L_from.rows() != L_to.rows() || L_from.cols() != L_to.cols()) {
    ws.reason = "dimension mismatch: " + std::to_string(L_from.rows()) + "x" + std::to_string(L_from.cols()) +
                " vs " + std::to_string(L_to.rows()) + "x" + std::to_string(L_to.cols());
    return ws;
  }
  std::size_t n = L_to.rows(), c = L_to.cols();
  auto offsets = [](const std::vector<std::size_t>& b) {
    std::vector<std::size_t> o{0};
    for (auto x : b) o.push_back(o.back() + x);
    return o;
  };
  auto fo = offsets(from_blocks), to = offsets(to_blocks);
  if (fo.back() != L_from.cols() || to.back() != c) throw std::invalid_argument("find_witness: block sizes");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> cur;
  std::vector<bool> used(from_blocks.size(), false);
  detail::permutations(cur, used, from_blocks, to_blocks, perms);
  if (perms.empty()) {
    ws.reason = "block structures differ";
    return ws;
  }
  std::set<Mono> monos;
  for (const auto* M : {&L_from, &L_to})
    for (const auto& p : M->data())
      for (const auto& t : p.terms()) monos.insert(t.first);
  Sampler s(seed);
  std::size_t nb = to_blocks.size();
  for (const auto& perm : perms) {
    // unknowns: H (n x n, row-major) then block scalings d; H L_to = L_from Q
    std::size_t nu = n * n + nb;
    std::vector<std::size_t> src_col(c), blk(c);
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t k = 0; k < to_blocks[b]; ++k) {
        src_col[to[b] + k] = fo[perm[b]] + k;
        blk[to[b] + k] = b;
      }
    std::vector<std::vector<Cx>> rows;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < c; ++j)
        for (const auto& mo : monos) {
          std::vector<Cx> row(nu);
          bool any = false;
          for (std::size_t k = 0; k < n; ++k) {
            auto it = L_to(k, j).terms().find(mo);
            if (it != L_to(k, j).terms().end()) {
              row[i * n + k] = it->second;
              any = true;
            }
          }
          auto it = L_from(i, src_col[j]).terms().find(mo);
          if (it != L_from(i, src_col[j]).terms().end()) {
            row[n * n + blk[j]] = -it->second;
            any = true;
          }
          if (any) rows.push_back(std::move(row));
        }
    CMat A(rows.size(), nu);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t k = 0; k < nu; ++k) A(r, k) = rows[r][k];
    auto ns = nullspace(A);
    if (ns.empty()) continue;
    for (int attempt = 0; attempt < 4; ++attempt) {
      CMat v(nu, 1);
      for (const auto& b : ns) v += Cx(s.nonzero()) * b;
      CMat H(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) H(i, k) = v(i * n + k, 0);
      std::vector<Cx> d(nb);
      bool nonzero = true;
      for (std::size_t b = 0; b < nb; ++b) {
        d[b] = v(n * n + b, 0);
        nonzero = nonzero && !d[b].is_zero();
      }
      if (!nonzero) continue;
      auto G = inverse(H);
      if (!G) continue;
      PencilWitness w;
      w.left = *G;
      w.right = CMat(c, c);
      for (std::size_t j = 0; j < c; ++j) w.right(src_col[j], j) = d[blk[j]];
      w.block_map = perm;
      w.scalings = d;
      if (pmat(w.left) * L_from * pmat(w.right) != L_to) continue;
      ws.witness = std::move(w);
      return ws;
    }
  }
  ws.reason = "no invertible solution for any block assignment";
  return ws;
}

// ---------------------------------------------------------------------------
// Full pipeline

inline const std::vector<std::size_t>& essential_rows() {
  static const std::vector<std::size_t> r{0, 1, 2, 6, 7, 8, 9};
  return r;
}
inline const std::vector<std::size_t>& essential_cols() {
  static const std::vector<std::size_t> c{0, 1, 2, 6, 7, 8, 9};
  return c;
}

inline PMat select(const PMat& M, const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) {
  PMat out(r.size(), c.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = M(r[i], c[j]);
  return out;
}

struct ContractionReport {
  ComponentDerivation derivation;
  ScaledSystem scaled;
  Contracted contracted;
  EquationMatch match;
  bool slaved_free = false;  // essential equations carry no Nt terms
  PMat essential;            // 7x7 pencil over (Rt, Wt, Bt)
  WitnessSearch m2;
  bool witness_invariant = false;  // witness-transformed pencil passes the invariance conditions
  WitnessSearch galilean_proca;           // against the 15-component Galilean Proca pencil
  WitnessSearch galilean_proca_essential;
};

inline std::array<PMat, 5> pencil_coefficients(const PMat& L) {
  // L = beta0 p0 - beta_a p_a + beta4 m
  std::array<PMat, 5> b;
  std::array<int, 5> v{sym("p0"), sym("p1"), sym("p2"), sym("p3"), sym("m")};
  for (int k = 0; k < 5; ++k) {
    b[k] = L.map([&](const Poly& p) { return p.coeff(v[k], 1); });
    if (k >= 1 && k <= 3) b[k] = -b[k];
  }
  return b;
}

inline ContractionReport contraction_pipeline(MomentumScaling s = MomentumScaling::Consistent) {
  ContractionReport r;
  r.derivation = proca_relativistic_components();
  r.scaled = scale_system(r.derivation.components, s);
  r.contracted = contract(r.scaled);
  r.match = match_equations(r.contracted.equations, galilean_expected());
  r.slaved_free = true;
  for (auto i : essential_rows())
    for (std::size_t j = 3; j < 6; ++j) r.slaved_free = r.slaved_free && r.contracted.equations(i, j).is_zero();
  r.essential = select(r.contracted.equations, essential_rows(), essential_cols());
  BetaSystem m2 = catalog::m2();
  r.m2 = find_witness(r.essential, {3, 3, 1}, wave_operator(m2.beta), {3, 3, 1});
  if (r.m2.witness) {
    const auto& w = *r.m2.witness;
    BetaSystem t = m2;
    t.beta = pencil_coefficients(pmat(w.left) * r.essential * pmat(w.right));
    r.witness_invariant = verify_invariance(t).ok();
  }
  PMat p12 = proca_first_order({ProcaMode::FixedSpin, Poly(1)}).L;
  r.galilean_proca = find_witness(r.contracted.equations, {3, 3, 3, 1}, p12, {5, 10});
  r.galilean_proca_essential = find_witness(r.essential, {3, 3, 1}, p12, {5, 10});
  return r;
}

inline json witness_json(const WitnessSearch& w) {
  json j;
  j["found"] = w.witness.has_value();
  if (w.witness) {
    j["left"] = matrix_json(w.witness->left);
    j["right"] = matrix_json(w.witness->right);
    j["block_map"] = w.witness->block_map;
    json s = json::array();
    for (const auto& x : w.witness->scalings) s.push_back(x.str());
    j["scalings"] = s;
  } else {
    j["reason"] = w.reason;
  }
  return j;
}

inline json contraction_json(const ContractionReport& r) {
  json j;
  j["schema"] = kSchemaVersion;
  j["scaling"] = scaling_name(r.scaled.scaling);
  j["components"] = contraction_slots();
  j["derivation"] = {{"recombination_found", r.derivation.G.has_value()},
                     {"w_sign", r.derivation.w_sign},
                     {"recovers_relativistic", r.derivation.recovers_relativistic}};
  if (r.derivation.G) j["derivation"]["G"] = matrix_json(*r.derivation.G);
  j["lowest_power"] = r.contracted.lowest;
  j["contracted"] = matrix_json(r.contracted.equations);
  json fac = json::array();
  for (const auto& f : r.match.factors) fac.push_back(f.str());
  j["match"] = {{"ok", r.match.ok}, {"row_factors", fac}, {"mismatched_rows", r.match.mismatched}};
  json dr = json::array();
  for (const auto& d : r.contracted.dropped)
    dr.push_back({{"equation", d.equation}, {"component", d.component}, {"power", d.power},
                  {"coefficient", d.coefficient.str()}});
  j["dropped"] = dr;
  j["essential_pencil"] = matrix_json(r.essential);
  j["witness_M2"] = witness_json(r.m2);
  j["witness_M2_invariant"] = r.witness_invariant;
  j["witness_galilean_proca"] = witness_json(r.galilean_proca);
  j["witness_galilean_proca_essential"] = witness_json(r.galilean_proca_essential);
  return j;
}

}  // namespace galileq
