#pragma once

#include <cstdint>

#include "tables.hpp"

namespace galileq {

// Multiplicity blocks of a vector/scalar beta system.
struct MultBlocks {
  PMat R, E, F, G, H, M;
};

struct BetaSystem {
  std::string id;
  GalileiRep rep;
  std::array<PMat, 5> beta;  // beta0..beta4
  std::map<std::string, Poly> params;
  std::optional<MultBlocks> blocks;

  std::size_t dim() const { return rep.dim; }
};

inline PMat pmat(const CMat& m) { return to_poly(m); }

// ---------------------------------------------------------------------------
// (R,E) families

struct Substitution {
  int var;
  Poly value;
};

struct REBlocks {
  QIndex q{}, q2{};
  bool R_exists = false, E_exists = false;
  PMat R, E;  // n x n2 and k x k2
  // each constraint is a list of alternatives; at least one must hold
  std::vector<std::vector<Substitution>> constraints;
  std::vector<std::string> constraint_text;
  std::string note;

  std::vector<int> parameters() const {
    std::set<int> s;
    for (const PMat* m : {&R, &E})
      for (const auto& p : m->data())
        for (int v : p.symbols()) s.insert(v);
    return {s.begin(), s.end()};
  }
};

namespace detail {

inline PMat parse_block(const std::vector<std::vector<std::string>>& rows, std::size_t r, std::size_t c,
                        const std::string& what) {
  if (rows.empty()) return PMat(r, c);
  if (rows.size() != r || rows[0].size() != c)
    throw std::logic_error("table block " + what + " has shape " + std::to_string(rows.size()) + "x" +
                           std::to_string(rows[0].size()) + ", expected " + std::to_string(r) + "x" +
                           std::to_string(c));
  PMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = parse_poly(rows[i][j]);
  return m;
}

inline Substitution parse_subst(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos) throw std::logic_error("bad constraint " + s);
  std::string lhs = s.substr(0, eq);
  lhs.erase(std::remove(lhs.begin(), lhs.end(), ' '), lhs.end());
  return {sym(lhs), parse_poly(s.substr(eq + 1))};
}

inline REBlocks from_cell(const TableCell& c) {
  REBlocks b;
  b.q = c.q;
  b.q2 = c.q2;
  std::size_t n = c.q[0], k = c.q[1], n2 = c.q2[0], k2 = c.q2[1];
  b.R_exists = !c.R.empty();
  b.E_exists = !c.E.empty();
  b.R = parse_block(c.R, n, n2, "R " + q_str(c.q) + "x" + q_str(c.q2));
  b.E = parse_block(c.E, k, k2, "E " + q_str(c.q) + "x" + q_str(c.q2));
  for (const auto& alts : c.constraints) {
    std::vector<Substitution> v;
    std::string txt;
    for (const auto& a : alts) {
      v.push_back(parse_subst(a));
      txt += (txt.empty() ? "" : " or ") + a;
    }
    b.constraints.push_back(std::move(v));
    b.constraint_text.push_back(txt);
  }
  b.note = c.note;
  return b;
}

}  // namespace detail

// All tabulated families for the pair; several entries when the table leaves a block placement open.
// Empty when the pair is not tabulated.
inline std::vector<REBlocks> lookup_RE(const QIndex& q, const QIndex& q2) {
  std::vector<REBlocks> out;
  for (const auto& c : tables::cells())
    if (c.q == q && c.q2 == q2) out.push_back(detail::from_cell(c));
  return out;
}

inline std::vector<REBlocks> all_table_cells() {
  std::vector<REBlocks> out;
  for (const auto& c : tables::cells()) out.push_back(detail::from_cell(c));
  return out;
}

struct ParamBranch {
  std::string label;
  std::map<int, Poly> subs;
};

// One branch per choice of alternative in every constraint.
inline std::vector<ParamBranch> constraint_branches(const REBlocks& b) {
  std::vector<ParamBranch> out{{"", {}}};
  for (std::size_t c = 0; c < b.constraints.size(); ++c) {
    std::vector<ParamBranch> next;
    for (const auto& br : out)
      for (const auto& alt : b.constraints[c]) {
        ParamBranch nb = br;
        Poly val = alt.value.subs(nb.subs);
        for (auto& kv : nb.subs) kv.second = kv.second.subs(alt.var, val);
        nb.subs[alt.var] = val;
        nb.label += (nb.label.empty() ? "" : ", ") + sym_name(alt.var) + "=" + alt.value.str();
        next.push_back(std::move(nb));
      }
    out = std::move(next);
  }
  return out;
}

inline bool satisfies_constraints(const REBlocks& b, const std::map<int, Poly>& vals) {
  for (const auto& alts : b.constraints) {
    bool any = false;
    for (const auto& a : alts)
      if ((Poly::var(a.var).subs(vals) - a.value.subs(vals)).is_zero()) any = true;
    if (!any) return false;
  }
  return true;
}

// Deterministic sampler of nonzero rationals; portable across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  Rational nonzero(int num_max = 9, int den_max = 5) {
    long p = static_cast<long>(rng_() % (2 * num_max)) - num_max;
    if (p >= 0) ++p;
    long q = static_cast<long>(rng_() % den_max) + 1;
    return make_q(p, q);
  }
  long integer(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Random values for the parameters left free by a branch.
inline std::map<int, Poly> sample_branch(const REBlocks& b, const ParamBranch& br, Sampler& s) {
  std::map<int, Poly> vals;
  for (int v : b.parameters())
    if (!br.subs.count(v)) vals[v] = Poly(s.nonzero());
  std::map<int, Poly> out = vals;
  for (const auto& kv : br.subs) out[kv.first] = kv.second.subs(vals);
  return out;
}

// (A^dag)^2 R + R A'^2 - A^dag R A' + C^dag E C'
inline PMat b2_residual(const ABCTriple& x, const ABCTriple& y, const PMat& R, const PMat& E) {
  PMat Ad = pmat(x.A.dagger()), A2 = pmat(y.A), Cd = pmat(x.C.dagger()), C2 = pmat(y.C);
  return Ad * Ad * R + R * A2 * A2 - Ad * R * A2 + Cd * E * C2;
}

struct B2Solution {
  CMat R, E;
};

// Basis of the solution space of (b2) for the pair.
inline std::vector<B2Solution> solve_b2(const QIndex& q, const QIndex& q2) {
  ABCTriple x = table1_abc(q), y = table1_abc(q2);
  std::size_t n = x.n, n2 = y.n, k = x.k, k2 = y.k;
  std::size_t nr = n * n2, ne = k * k2, nv = nr + ne;
  if (nv == 0) return {};
  // residual is linear; probe with unit matrices
  CMat L(n * n2, nv);
  for (std::size_t v = 0; v < nv; ++v) {
    CMat R(n, n2), E(k, k2);
    if (v < nr) R(v / n2, v % n2) = 1;
    else E((v - nr) / k2, (v - nr) % k2) = 1;
    CMat res = to_const(b2_residual(x, y, pmat(R), pmat(E)));
    for (std::size_t i = 0; i < n * n2; ++i) L(i, v) = res(i / n2, i % n2);
  }
  std::vector<B2Solution> out;
  std::vector<CMat> ns;
  if (L.rows() == 0) {
    for (std::size_t v = 0; v < nv; ++v) {
      CMat e(nv, 1);
      e(v, 0) = 1;
      ns.push_back(e);
    }
  } else {
    ns = nullspace(L);
  }
  for (const auto& vec : ns) {
    B2Solution s{CMat(n, n2), CMat(k, k2)};
    for (std::size_t v = 0; v < nv; ++v) {
      if (v < nr) s.R(v / n2, v % n2) = vec(v, 0);
      else s.E((v - nr) / k2, (v - nr) % k2) = vec(v, 0);
    }
    out.push_back(s);
  }
  return out;
}

// Whether the pair (R, E) lies in the span of the solve_b2 basis.
inline bool in_b2_space(const std::vector<B2Solution>& basis, const CMat& R, const CMat& E) {
  std::size_t nr = R.rows() * R.cols(), ne = E.rows() * E.cols();
  CMat M(nr + ne, basis.size()), b(nr + ne, 1);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t v = 0; v < nr; ++v) M(v, j) = basis[j].R(v / R.cols(), v % R.cols());
    for (std::size_t v = 0; v < ne; ++v) M(nr + v, j) = basis[j].E(v / E.cols(), v % E.cols());
  }
  for (std::size_t v = 0; v < nr; ++v) b(v, 0) = R(v / R.cols(), v % R.cols());
  for (std::size_t v = 0; v < ne; ++v) b(nr + v, 0) = E(v / E.cols(), v % E.cols());
  if (basis.empty()) return b.is_zero();
  return solve(M, b).has_value();
}

// F, G, H, M from R, E for the pair of triples x (left) and y (right).
inline MultBlocks derive_blocks(const ABCTriple& x, const ABCTriple& y, const PMat& R, const PMat& E) {
  if (R.rows() != x.n || R.cols() != y.n || E.rows() != x.k || E.cols() != y.k)
    throw std::invalid_argument("derive_blocks: dimension mismatch");
  PMat A = pmat(x.A), Ad = pmat(x.A.dagger()), A2 = pmat(y.A);
  PMat Bd = pmat(x.B.dagger()), B2 = pmat(y.B);
  PMat Cd = pmat(x.C.dagger()), C2 = pmat(y.C);
  MultBlocks m;
  m.R = R;
  m.E = E;
  m.F = Cd * E * C2 + Ad * R * A2;
  m.G = Poly(2) * (Bd * R * B2) - Bd * Cd * E - E * C2 * B2;
  m.H = Ad * R - R * A2;
  m.M = Cd * E - R * B2;
  (void)A;
  return m;
}

// beta matrices from multiplicity blocks over a vector/scalar carrier.
inline std::array<PMat, 5> beta_from_blocks(const MultBlocks& b, std::size_t n, std::size_t k) {
  std::array<PMat, 5> beta;
  PMat I3 = pmat(CMat::identity(3));
  std::size_t d = 3 * n + k;
  beta[4] = PMat(d, d);
  beta[0] = PMat(d, d);
  beta[4].set_block(0, 0, kron(b.R, I3));
  beta[4].set_block(3 * n, 3 * n, b.E);
  beta[0].set_block(0, 0, kron(b.F, I3));
  beta[0].set_block(3 * n, 3 * n, b.G);
  for (int a = 0; a < 3; ++a) {
    PMat x(d, d);
    x.set_block(0, 0, kron(b.H, pmat(spin1(a))));
    if (k) {
      x.set_block(0, 3 * n, kron(b.M, pmat(kvec(a).dagger())));
      x.set_block(3 * n, 0, -kron(b.M.dagger(), pmat(kvec(a))));
    }
    beta[1 + a] = Poly(Cx::i()) * x;
  }
  return beta;
}

// Assembles a system over rep (which must carry its ABC triple) from full multiplicity blocks.
inline BetaSystem assemble_beta(const GalileiRep& rep, const PMat& R, const PMat& E,
                                std::map<std::string, Poly> params = {}, std::string id = "") {
  if (!rep.abc) throw std::invalid_argument("assemble_beta: representation has no ABC form");
  const ABCTriple& t = *rep.abc;
  BetaSystem bs;
  bs.id = std::move(id);
  bs.rep = rep;
  bs.params = std::move(params);
  MultBlocks mb = derive_blocks(t, t, R, E);
  bs.beta = beta_from_blocks(mb, t.n, t.k);
  bs.blocks = mb;
  return bs;
}

// System for one table cell under a parameter assignment. Diagonal cells live on D(q); off-diagonal
// cells on D(q)+D(q2) with the hermitian completion R_tot = [[0,R],[R^dag,0]].
inline BetaSystem assemble_cell(const REBlocks& b, const std::map<int, Poly>& vals) {
  if (!satisfies_constraints(b, vals)) throw std::invalid_argument("assemble_cell: parameters violate side constraints");
  PMat R = subs(b.R, vals), E = subs(b.E, vals);
  std::map<std::string, Poly> params;
  for (const auto& kv : vals) params[sym_name(kv.first)] = kv.second;
  std::string id = "cell" + q_str(b.q) + "x" + q_str(b.q2);
  if (b.q == b.q2) return assemble_beta(merged_rep({b.q}), R, E, params, id);
  std::size_t n = b.q[0], k = b.q[1], n2 = b.q2[0], k2 = b.q2[1];
  PMat Rt(n + n2, n + n2), Et(k + k2, k + k2);
  Rt.set_block(0, n, R);
  Rt.set_block(n, 0, R.dagger());
  Et.set_block(0, k, E);
  Et.set_block(k, 0, E.dagger());
  return assemble_beta(merged_rep({b.q, b.q2}), Rt, Et, params, id);
}

// ---------------------------------------------------------------------------
// Checks

struct NamedResidual {
  std::string name;
  bool ok = true;
  PMat residual;
};

struct CheckReport {
  std::vector<NamedResidual> items;
  bool ok() const {
    for (const auto& i : items)
      if (!i.ok) return false;
    return true;
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> f;
    for (const auto& i : items)
      if (!i.ok) f.push_back(i.name);
    return f;
  }
  void add(std::string name, PMat r) {
    bool ok = r.is_zero();
    items.push_back({std::move(name), ok, std::move(r)});
  }
};

// eta_a^dag beta_4 - beta_4 eta_a + i beta_a = 0, eta_a^dag beta_b - beta_b eta_a + i delta_ab beta_0 = 0,
// eta_a^dag beta_0 - beta_0 eta_a = 0, [beta_0, S_a] = [beta_4, S_a] = 0.
inline CheckReport verify_invariance(const BetaSystem& bs) {
  CheckReport rep;
  const char* nm = "123";
  PMat iu = PMat::scalar(bs.dim(), Poly(Cx::i()));
  for (int a = 0; a < 3; ++a) {
    PMat e = pmat(bs.rep.eta[a]), ed = pmat(bs.rep.eta[a].dagger()), S = pmat(bs.rep.S[a]);
    std::string A(1, nm[a]);
    rep.add("eta" + A + "^dag b4 - b4 eta" + A + " + i b" + A, ed * bs.beta[4] - bs.beta[4] * e + iu * bs.beta[1 + a]);
    for (int b = 0; b < 3; ++b) {
      PMat r = ed * bs.beta[1 + b] - bs.beta[1 + b] * e;
      if (a == b) r += iu * bs.beta[0];
      rep.add("eta" + A + "^dag b" + nm[b] + " - b" + nm[b] + " eta" + A + (a == b ? " + i b0" : ""), r);
    }
    rep.add("eta" + A + "^dag b0 - b0 eta" + A, ed * bs.beta[0] - bs.beta[0] * e);
    rep.add("[b0,S" + A + "]", commutator(bs.beta[0], S));
    rep.add("[b4,S" + A + "]", commutator(bs.beta[4], S));
  }
  return rep;
}

inline CheckReport check_hermiticity(const BetaSystem& bs, const std::optional<CMat>& metric = std::nullopt) {
  CheckReport rep;
  std::optional<PMat> g;
  if (metric) {
    if (!inverse(*metric)) throw std::invalid_argument("check_hermiticity: metric not invertible");
    g = pmat(*metric);
  }
  for (int m = 0; m < 5; ++m) {
    PMat x = g ? *g * bs.beta[m] : bs.beta[m];
    rep.add(std::string(g ? "(g b" : "(b") + std::to_string(m) + ")^dag", x.dagger() - x);
  }
  return rep;
}

inline CheckReport check_hermiticity(const std::array<PMat, 5>& beta, const CMat& metric) {
  CheckReport rep;
  PMat g = pmat(metric);
  for (int m = 0; m < 5; ++m) {
    PMat x = g * beta[m];
    rep.add("(g b" + std::to_string(m) + ")^dag", x.dagger() - x);
  }
  return rep;
}

// V^dag beta V, with V invertible and commuting with the boost generators.
inline BetaSystem equiv_transform(const BetaSystem& bs, const PMat& V) {
  if (V.rows() != bs.dim() || !V.square()) throw std::invalid_argument("equiv_transform: V has wrong shape");
  Poly d = det_bareiss(V);
  if (d.is_zero()) throw std::invalid_argument("equiv_transform: V is singular");
  for (int a = 0; a < 3; ++a)
    if (!commutator(V, pmat(bs.rep.eta[a])).is_zero())
      throw std::invalid_argument("equiv_transform: V does not commute with eta" + std::to_string(a + 1));
  BetaSystem out = bs;
  PMat Vd = V.dagger();
  for (int m = 0; m < 5; ++m) out.beta[m] = Vd * bs.beta[m] * V;
  out.blocks.reset();
  out.id = bs.id.empty() ? "" : bs.id + "'";
  return out;
}

inline BetaSystem equiv_transform(const BetaSystem& bs, const CMat& V) { return equiv_transform(bs, pmat(V)); }

// Basis of matrices commuting with every S_a and eta_a.
inline std::vector<CMat> commutant(const GalileiRep& rep) {
  std::size_t d = rep.dim;
  std::vector<CMat> gens;
  for (int a = 0; a < 3; ++a) {
    gens.push_back(rep.S[a]);
    gens.push_back(rep.eta[a]);
  }
  CMat L(gens.size() * d * d, d * d);
  std::size_t row = 0;
  for (const auto& g : gens)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j, ++row) {
        // (V g - g V)_{ij}
        for (std::size_t l = 0; l < d; ++l) {
          if (!g(l, j).is_zero()) L(row, i * d + l) += g(l, j);
          if (!g(i, l).is_zero()) L(row, l * d + j) -= g(i, l);
        }
      }
  std::vector<CMat> out;
  for (const auto& v : nullspace(L)) {
    CMat V(d, d);
    for (std::size_t k = 0; k < d * d; ++k) V(k / d, k % d) = v(k, 0);
    out.push_back(V);
  }
  return out;
}

// Random invertible element of the commutant.
inline std::optional<CMat> random_commutant_element(const GalileiRep& rep, Sampler& s) {
  auto basis = commutant(rep);
  for (int trial = 0; trial < 20; ++trial) {
    CMat V(rep.dim, rep.dim);
    for (const auto& b : basis) V += Cx(s.integer(-3, 3)) * b;
    if (inverse(V)) return V;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Catalog systems

namespace catalog {

inline BetaSystem m1() {
  return assemble_beta(build_rep(RepDescriptor::row({1, 1, 1})), PMat{{Poly(1)}}, PMat{{Poly(0)}}, {}, "M1");
}

inline BetaSystem m2() {
  return assemble_beta(build_rep(RepDescriptor::row({2, 1, 0})), PMat{{Poly(0), Poly(0)}, {Poly(0), Poly(1)}},
                       PMat{{Poly(1)}}, {}, "M2");
}

inline BetaSystem m3() {
  return assemble_beta(build_rep(RepDescriptor::row({2, 2, 1})), PMat{{Poly(0), Poly(0)}, {Poly(0), Poly(1)}},
                       PMat{{Poly(0), Poly(0)}, {Poly(0), Poly(1)}}, {}, "M3");
}

// D(3,1,1) in the basis with the scalar component reversed: triple (A, -B, -C).
inline GalileiRep d311_rebased() {
  ABCTriple t = table1_abc({3, 1, 1});
  t.B = Cx(-1) * t.B;
  t.C = Cx(-1) * t.C;
  GalileiRep r = rep_from_abc(t, RepDescriptor::row({3, 1, 1}));
  r.basis_note = "scalar component sign reversed relative to the table row";
  return r;
}

inline BetaSystem m4(const Poly& nu = Poly::var("nu")) {
  PMat R{{Poly(0), Poly(0), nu}, {Poly(0), nu, Poly(1)}, {nu, Poly(1), Poly(0)}};
  PMat E{{-nu}};
  std::map<std::string, Poly> params;
  if (nu != Poly::var("nu")) params["nu"] = nu;
  return assemble_beta(d311_rebased(), R, E, params, "M4");
}

// Same system over the table row as printed there.
inline BetaSystem m4_table_basis(const Poly& nu = Poly::var("nu")) {
  PMat R{{Poly(0), Poly(0), nu}, {Poly(0), nu, Poly(1)}, {nu, Poly(1), Poly(0)}};
  PMat E{{-nu}};
  return assemble_beta(build_rep(RepDescriptor::row({3, 1, 1})), R, E, {}, "M4-table-basis");
}

// Levy-Leblond type system over D2(1/2).
inline BetaSystem levy_leblond(const Poly& kappa = Poly(0), const Poly& omega = Poly(0)) {
  BetaSystem bs;
  bs.id = "LL";
  bs.rep = build_rep(RepDescriptor::spinor2());
  PMat I2 = pmat(CMat::identity(2)), Z(2, 2);
  Poly iu(Cx::i());
  bs.beta[0] = blocks<Poly>({{I2, Z}, {Z, Z}});
  for (int a = 0; a < 3; ++a) bs.beta[1 + a] = blocks<Poly>({{Z, pmat(pauli(a))}, {pmat(pauli(a)), Z}});
  bs.beta[4] = blocks<Poly>({{kappa * I2, -(iu * omega) * I2}, {(iu * omega) * I2, Poly(2) * I2}});
  if (!kappa.is_zero()) bs.params["kappa"] = kappa;
  if (!omega.is_zero()) bs.params["omega"] = omega;
  return bs;
}

// U = [[I, -i omega I],[0, I]] as printed for removing omega.
inline PMat ll_printed_U(const Poly& omega = Poly::var("omega")) {
  PMat I2 = pmat(CMat::identity(2)), Z(2, 2);
  return blocks<Poly>({{I2, -(Poly(Cx::i()) * omega) * I2}, {Z, I2}});
}

// V = [[I, 0],[-(i omega/2) I, I]]; V^dag beta V removes omega and sends kappa to kappa - omega^2/2.
inline PMat ll_omega_eliminator(const Poly& omega = Poly::var("omega")) {
  PMat I2 = pmat(CMat::identity(2)), Z(2, 2);
  Poly c = Poly(Cx(Rational(0), make_q(-1, 2))) * omega;
  return blocks<Poly>({{I2, Z}, {c * I2, I2}});
}

// Conjugation beta -> U^dag beta U without the commutation precondition, for reporting.
inline std::array<PMat, 5> conjugate_betas(const std::array<PMat, 5>& beta, const PMat& U) {
  std::array<PMat, 5> out;
  PMat Ud = U.dagger();
  for (int m = 0; m < 5; ++m) out[m] = Ud * beta[m] * U;
  return out;
}

inline std::vector<BetaSystem> canonical() { return {m1(), m2(), m3(), m4(), levy_leblond()}; }

}  // namespace catalog

}  // namespace galileq
