#pragma once

#include "io.hpp"
#include "spectral.hpp"

namespace galileq {

// Linear system L(p0, p, m) Psi = 0 over named component slots. Rows and columns carry the same
// rotation representation.
struct CovariantSystem {
  std::string id;
  std::vector<std::string> slots;
  std::vector<std::string> equations;
  PMat L;
  std::array<CMat, 3> spin;
};

inline Poly p_upper(int k) {
  static const char* names[] = {"p0", "p1", "p2", "p3", "m"};
  return Poly::var(names[k]);
}

inline Poly p_lower(int k) {
  FiveVector p = lower_index(five_momentum());
  return p[k];
}

// Rotation generators on a five-vector index: diag(0, s_a, 0).
inline std::array<CMat, 3> five_vector_spin() {
  std::array<CMat, 3> V;
  for (int a = 0; a < 3; ++a) {
    V[a] = CMat(5, 5);
    V[a].set_block(1, 1, spin1(a));
  }
  return V;
}

inline std::vector<std::pair<int, int>> tensor_slots() {
  std::vector<std::pair<int, int>> t;
  for (int k = 0; k < 5; ++k)
    for (int n = k + 1; n < 5; ++n) t.emplace_back(k, n);
  return t;
}

// Generators on antisymmetric tensors, slot (k,n) = e_k ^ e_n with k < n.
inline std::array<CMat, 3> tensor_spin() {
  auto V = five_vector_spin();
  auto ts = tensor_slots();
  auto index = [&](int i, int j) -> std::pair<int, int> {
    if (i == j) return {-1, 0};
    if (i < j) return {static_cast<int>(std::find(ts.begin(), ts.end(), std::pair{i, j}) - ts.begin()), 1};
    return {static_cast<int>(std::find(ts.begin(), ts.end(), std::pair{j, i}) - ts.begin()), -1};
  };
  std::array<CMat, 3> T;
  for (int a = 0; a < 3; ++a) {
    T[a] = CMat(10, 10);
    for (std::size_t c = 0; c < ts.size(); ++c) {
      auto [k, n] = ts[c];
      for (int j = 0; j < 5; ++j) {
        if (!V[a](j, k).is_zero()) {
          auto [r, s] = index(j, n);
          if (r >= 0) T[a](r, c) += Cx(s) * V[a](j, k);
        }
        if (!V[a](j, n).is_zero()) {
          auto [r, s] = index(k, j);
          if (r >= 0) T[a](r, c) += Cx(s) * V[a](j, n);
        }
      }
    }
  }
  return T;
}

struct ProcaMode {
  enum Kind { FixedSpin, TwoSpin } kind = FixedSpin;
  Poly param = Poly(1);  // lambda or nu
};

// p^k Psi^n - p^n Psi^k = m Psi^{kn};  p_k Psi^{nk} = lambda delta^{n0} m Psi^4  or  = nu m Psi^n.
inline CovariantSystem proca_first_order(const ProcaMode& mode) {
  if (mode.param.is_zero()) throw std::invalid_argument("proca_first_order: parameter must be nonzero");
  CovariantSystem sys;
  sys.id = mode.kind == ProcaMode::FixedSpin ? "Proca-Fixed" : "Proca-Two";
  auto ts = tensor_slots();
  for (int n = 0; n < 5; ++n) sys.slots.push_back("Psi" + std::to_string(n));
  for (auto [k, n] : ts) sys.slots.push_back("Psi" + std::to_string(k) + std::to_string(n));
  auto tslot = [&](int i, int j) -> std::pair<std::size_t, int> {
    if (i < j) return {5 + (std::find(ts.begin(), ts.end(), std::pair{i, j}) - ts.begin()), 1};
    return {5 + (std::find(ts.begin(), ts.end(), std::pair{j, i}) - ts.begin()), -1};
  };
  Poly m = Poly::var("m");
  sys.L = PMat(15, 15);
  for (int n = 0; n < 5; ++n) {
    sys.equations.push_back("p_k Psi^{" + std::to_string(n) + "k}");
    for (int k = 0; k < 5; ++k) {
      if (k == n) continue;
      auto [c, s] = tslot(n, k);
      sys.L(n, c) += Poly(s) * p_lower(k);
    }
    if (mode.kind == ProcaMode::FixedSpin) {
      if (n == 0) sys.L(n, 4) -= mode.param * m;
    } else {
      sys.L(n, n) -= mode.param * m;
    }
  }
  for (std::size_t r = 0; r < ts.size(); ++r) {
    auto [k, n] = ts[r];
    std::size_t row = 5 + r;
    sys.equations.push_back("p^" + std::to_string(k) + " Psi^" + std::to_string(n) + " - p^" + std::to_string(n) +
                            " Psi^" + std::to_string(k) + " - m Psi^{" + std::to_string(k) + std::to_string(n) + "}");
    sys.L(row, n) += p_upper(k);
    sys.L(row, k) -= p_upper(n);
    sys.L(row, row) -= m;
  }
  auto V = five_vector_spin();
  auto T = tensor_spin();
  for (int a = 0; a < 3; ++a) sys.spin[a] = direct_sum<Cx>({V[a], T[a]});
  return sys;
}

// p_n p^n Psi^m - p^m p_n Psi^n + lambda delta^{m0} m^2 Psi^4
inline PMat gproca_operator(const Poly& lambda) {
  Poly m = Poly::var("m");
  Poly c2;
  for (int n = 0; n < 5; ++n) c2 += p_lower(n) * p_upper(n);
  PMat K(5, 5);
  for (int r = 0; r < 5; ++r) {
    K(r, r) += c2;
    for (int n = 0; n < 5; ++n) K(r, n) -= p_upper(r) * p_lower(n);
  }
  K(0, 4) += lambda * m * m;
  return K;
}

// Eliminates the tensor by the first equation; the result is scaled by -m.
inline CovariantSystem proca_second_order(const Poly& lambda) {
  CovariantSystem first = proca_first_order({ProcaMode::FixedSpin, lambda});
  PMat A = first.L.block(0, 0, 5, 5), B = first.L.block(0, 5, 5, 10), C = first.L.block(5, 0, 10, 5),
       D = first.L.block(5, 5, 10, 10);
  Poly m = Poly::var("m");
  if (D != PMat::scalar(10, -m)) throw std::logic_error("proca_second_order: unexpected tensor block");
  CovariantSystem sys;
  sys.id = "Proca-Second";
  sys.slots.assign(first.slots.begin(), first.slots.begin() + 5);
  for (int n = 0; n < 5; ++n) sys.equations.push_back("m=" + std::to_string(n));
  // A - B D^-1 C = A + B C / m
  sys.L = (-m) * A - B * C;
  sys.spin = five_vector_spin();
  return sys;
}

// ---------------------------------------------------------------------------
// Rarita-Schwinger

inline std::array<CMat, 5> gamma_upper() {
  GammaSet gs = gamma_set();
  CMat g = galilean_metric();
  std::array<CMat, 5> up;
  for (int m = 0; m < 5; ++m) {
    up[m] = CMat(4, 4);
    for (int n = 0; n < 5; ++n)
      if (!g(m, n).is_zero()) up[m] += g(m, n) * gs.gamma[n];
  }
  return up;
}

// gamma_n p^n
inline PMat gamma_slash() {
  GammaSet gs = gamma_set();
  PMat G(4, 4);
  for (int n = 0; n < 5; ++n) G += p_upper(n) * pmat(gs.gamma[n]);
  return G;
}

inline std::array<CMat, 3> bispinor_spin() {
  std::array<CMat, 3> s;
  for (int a = 0; a < 3; ++a) s[a] = Cx(make_q(1, 2)) * direct_sum<Cx>({pauli(a), pauli(a)});
  return s;
}

// Five-vector index outer, bispinor index inner.
inline CovariantSystem rs_system(const Poly& lambda) {
  if (lambda.is_zero()) throw std::invalid_argument("rs_system: lambda must be nonzero");
  CovariantSystem sys;
  sys.id = "RS";
  GammaSet gs = gamma_set();
  auto up = gamma_upper();
  PMat G = gamma_slash();
  Poly m = Poly::var("m");
  sys.L = PMat(20, 20);
  for (int r = 0; r < 5; ++r)
    for (int a = 0; a < 4; ++a) {
      sys.slots.push_back("Psi" + std::to_string(r) + "_" + std::to_string(a));
      sys.equations.push_back("m=" + std::to_string(r) + " row " + std::to_string(a));
    }
  for (int r = 0; r < 5; ++r)
    for (int n = 0; n < 5; ++n) {
      PMat blk(4, 4);
      if (r == n) blk += G;
      blk -= p_lower(n) * pmat(up[r]);
      blk -= p_upper(r) * pmat(gs.gamma[n]);
      blk += pmat(up[r]) * G * pmat(gs.gamma[n]);
      if (r == 0 && n == 4) blk += (lambda * m) * PMat::identity(4);
      sys.L.set_block(4 * r, 4 * n, blk);
    }
  auto V = five_vector_spin();
  auto s = bispinor_spin();
  for (int a = 0; a < 3; ++a) sys.spin[a] = kron(V[a], CMat::identity(4)) + kron(CMat::identity(5), s[a]);
  return sys;
}

// Selector of the block of five-vector index k in a layout with `inner` components per index.
inline PMat index_selector(int k, std::size_t inner) {
  PMat E(inner, 5 * inner);
  for (std::size_t i = 0; i < inner; ++i) E(i, k * inner + i) = Poly(1);
  return E;
}

inline PMat row_block(const PMat& L, int k, std::size_t inner) { return L.block(k * inner, 0, inner, L.cols()); }

// (con) operator p_n Psi^n - gamma_n p^n gamma_m Psi^m
inline PMat rs_con_operator() {
  GammaSet gs = gamma_set();
  PMat G = gamma_slash();
  PMat C(4, 20);
  for (int n = 0; n < 5; ++n) C.set_block(0, 4 * n, p_lower(n) * PMat::identity(4) - G * pmat(gs.gamma[n]));
  return C;
}

struct RsReductions {
  bool by_momentum = false;  // sum_m p_m (ra)^m = lambda m^2 Psi^4
  bool by_gamma = false;     // sum_m gamma_m (ra)^m = -3 (con) + lambda m gamma_0 Psi^4
};

inline RsReductions rs_reductions(const CovariantSystem& rs, const Poly& lambda) {
  RsReductions out;
  GammaSet gs = gamma_set();
  Poly m = Poly::var("m");
  PMat byp(4, 20), byg(4, 20);
  for (int k = 0; k < 5; ++k) {
    PMat rb = row_block(rs.L, k, 4);
    byp += p_lower(k) * rb;
    byg += pmat(gs.gamma[k]) * rb;
  }
  out.by_momentum = (byp - (lambda * m * m) * index_selector(4, 4)).is_zero();
  PMat want = Poly(-3) * rs_con_operator() + (lambda * m) * (pmat(gs.gamma[0]) * index_selector(4, 4));
  out.by_gamma = (byg - want).is_zero();
  return out;
}

// (con), (ra1) for sigma = 0..3, (ra2), (ra3) and Psi^4 = 0 stacked.
inline PMat rs_reduced_system() {
  GammaSet gs = gamma_set();
  PMat G = gamma_slash();
  Poly m = Poly::var("m");
  std::vector<PMat> rows;
  rows.push_back(rs_con_operator());
  for (int s = 0; s < 4; ++s) rows.push_back(G * index_selector(s, 4));
  PMat ra2 = m * index_selector(0, 4);
  for (int a = 1; a <= 3; ++a) ra2 -= p_upper(a) * index_selector(a, 4);
  rows.push_back(ra2);
  PMat ra3(4, 20);
  for (int n = 0; n < 4; ++n) ra3 += pmat(gs.gamma[n]) * index_selector(n, 4);
  rows.push_back(ra3);
  rows.push_back(index_selector(4, 4));
  std::size_t total = 0;
  for (const auto& r : rows) total += r.rows();
  PMat out(total, 20);
  std::size_t off = 0;
  for (const auto& r : rows) {
    out.set_block(off, 0, r);
    off += r.rows();
  }
  return out;
}

inline bool same_column_space(const std::vector<CMat>& a, const std::vector<CMat>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  CMat A = hstack(a), B = hstack(b);
  return rank(hstack({A, B})) == a.size();
}

// Kernels of (ra) and of the reduced set agree at the roots of (ra) and at one other energy.
inline bool rs_equivalent(const CovariantSystem& rs, const Rational& mass, const std::array<Rational, 3>& p) {
  auto vals = momentum_values(mass, p);
  PMat L = subs(rs.L, vals), Rd = subs(rs_reduced_system(), vals);
  PlaneWaveResult pw = plane_wave_kernels(L);
  if (pw.degenerate || pw.branches.empty()) return false;
  int p0 = sym("p0");
  Rational other = 1;
  for (const auto& b : pw.branches) {
    other += b.p0 * b.p0;
    auto k1 = nullspace(to_const(subs(L, p0, Poly(b.p0))));
    auto k2 = nullspace(to_const(subs(Rd, p0, Poly(b.p0))));
    if (!same_column_space(k1, k2)) return false;
  }
  return nullspace(to_const(subs(Rd, p0, Poly(other)))).empty();
}

// ---------------------------------------------------------------------------
// Classification

struct CovariantClassification {
  ClassificationResult rest;       // kernel oracle in the rest frame, eps = 2 m p0
  std::vector<SectorDet> sectors;  // spin-sector determinants of the rest-frame pencil
  Verdict sector_verdict = Verdict::Inconsistent;
  std::vector<Branch> sector_branches;
  bool agree = false;
  bool moving_frame_ok = false;  // p0 = (eps + p^2)/2m and counts at the sample momenta
};

inline PMat substitute(const PMat& L, const std::map<std::string, Poly>& vals) {
  std::map<int, Poly> v;
  for (const auto& kv : vals) v[sym(kv.first)] = kv.second;
  return subs(L, v);
}

inline CovariantClassification classify_covariant(const CovariantSystem& sys, const Rational& mass,
                                                  const std::vector<std::array<Rational, 3>>& momenta = {
                                                      {Rational(1), Rational(2), Rational(-1)}}) {
  if (sgn(mass) <= 0) throw std::invalid_argument("classify_covariant: mass must be positive");
  int x = var_c2();
  Poly p0 = Poly::var(x).scaled(Cx(1 / (2 * mass)));
  PMat rest = substitute(sys.L, {{"p1", Poly(0)}, {"p2", Poly(0)}, {"p3", Poly(0)}, {"m", Poly(mass)}});
  rest = subs(rest, sym("p0"), p0);
  for (const auto& e : rest.data())
    for (int v : e.symbols())
      if (v != x) throw std::invalid_argument("classify_covariant: substitute free parameters first");
  CovariantClassification out;
  out.rest = pencil_classify(rest, x, sys.spin);
  out.rest.id = sys.id;
  out.rest.mass = mass;
  out.sectors = sector_dets(rest, x, sys.spin);
  out.sector_verdict = verdict_from_sectors(out.sectors, out.sector_branches);
  out.agree = out.sector_verdict == out.rest.verdict && same_branches(out.sector_branches, out.rest.branches);
  out.rest.agrees_with_dets = out.agree;
  out.moving_frame_ok = true;
  for (const auto& p : momenta) {
    PlaneWaveResult pw = plane_wave_kernels(subs(sys.L, momentum_values(mass, p)));
    out.moving_frame_ok = out.moving_frame_ok && plane_wave_matches(pw, out.rest, p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rarita-Schwinger spin content

struct NamedCheck {
  std::string name;
  bool ok = false;
};

struct SpinCheckReport {
  std::vector<NamedCheck> items;
  bool ok() const {
    for (const auto& i : items)
      if (!i.ok) return false;
    return true;
  }
  bool get(const std::string& n) const {
    for (const auto& i : items)
      if (i.name == n) return i.ok;
    throw std::out_of_range(n);
  }
};

// Psi_a - c i eps_abc sigma_b Psi_c on the 6 upper spinor components of (Psi^1, Psi^2, Psi^3)
inline CMat rs13_operator(const Rational& c) {
  CMat K = CMat::identity(6);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int k = 0; k < 3; ++k) {
        int e = levi(a, b, k);
        if (!e) continue;
        K.set_block(2 * a, 2 * k, K.block(2 * a, 2 * k, 2, 2) - Cx(0, c * e) * pauli(b));
      }
  return K;
}

inline SpinCheckReport rs_spin_check(const CovariantSystem& rs, const Rational& mass = Rational(1)) {
  SpinCheckReport rep;
  auto add = [&](std::string n, bool ok) { rep.items.push_back({std::move(n), ok}); };
  PMat rest = substitute(rs.L, {{"p1", Poly(0)}, {"p2", Poly(0)}, {"p3", Poly(0)}, {"m", Poly(mass)}});
  PlaneWaveResult pw = plane_wave_kernels(rest);
  add("single rest-frame branch", pw.branches.size() == 1);
  if (pw.branches.empty()) return rep;
  CMat K = pw.branches[0].solutions;
  add("rest-frame kernel dim 4", K.cols() == 4);
  add("rest energy p0 = 0", sgn(pw.branches[0].p0) == 0);
  bool zero04 = true, lower = true;
  for (std::size_t j = 0; j < K.cols(); ++j)
    for (int al = 0; al < 4; ++al) {
      zero04 = zero04 && K(al, j).is_zero() && K(16 + al, j).is_zero();
      for (int a = 1; a <= 3; ++a) lower = lower && (al < 2 || K(4 * a + al, j).is_zero());
    }
  add("Psi^0 = Psi^4 = 0", zero04);
  add("lower spinor components vanish", lower);
  // upper spinor components of the spatial triple
  CMat U(6, K.cols());
  for (std::size_t j = 0; j < K.cols(); ++j)
    for (int a = 0; a < 3; ++a)
      for (int al = 0; al < 2; ++al) U(2 * a + al, j) = K(4 * (a + 1) + al, j);
  CMat sig(2, 6);
  for (int a = 0; a < 3; ++a) sig.set_block(0, 2 * a, pauli(a));
  add("sigma_a Psi^a = 0", (sig * U).is_zero());
  auto sig_kernel = nullspace(sig);
  std::vector<CMat> ucols;
  for (std::size_t j = 0; j < U.cols(); ++j) ucols.push_back(U.block(0, j, 6, 1));
  add("kernel = {sigma_a Psi^a = 0}", same_column_space(ucols, sig_kernel));
  std::array<CMat, 3> S6;
  CMat sdots(6, 6);
  for (int a = 0; a < 3; ++a) {
    S6[a] = kron(spin1(a), CMat::identity(2)) + kron(CMat::identity(3), Cx(make_q(1, 2)) * pauli(a));
    sdots += kron(spin1(a), pauli(a));
  }
  CMat S2 = spin_squared(S6);
  add("S^2 = 11/4 + s.sigma", (S2 - CMat::scalar(6, Cx(make_q(11, 4))) - sdots).is_zero());
  add("S^2 = 15/4 on the kernel", (S2 * U - Cx(make_q(15, 4)) * U).is_zero());
  auto full = s2_on(rs.spin, K);
  add("S^2 = 15/4 on the 20-component kernel", full.size() == 1 && full[0].value == make_q(15, 4) && full[0].dim == 4);
  add("(rs13) as printed equivalent to sigma_a Psi^a = 0", same_column_space(nullspace(rs13_operator(make_q(1, 2))), sig_kernel));
  add("(rs13) with unit coefficient equivalent to sigma_a Psi^a = 0",
      same_column_space(nullspace(rs13_operator(Rational(1))), sig_kernel));
  // (ra1) on a generic moving-frame kernel
  std::array<Rational, 3> p{Rational(1), Rational(-2), make_q(1, 2)};
  PlaneWaveResult mv = plane_wave_kernels(subs(rs.L, momentum_values(mass, p)));
  bool ra1 = !mv.branches.empty();
  PMat G = subs(gamma_slash(), momentum_values(mass, p));
  for (const auto& b : mv.branches) {
    CMat Gb = to_const(subs(G, sym("p0"), Poly(b.p0)));
    for (int s = 0; s < 5; ++s) ra1 = ra1 && (Gb * b.solutions.block(4 * s, 0, 4, b.solutions.cols())).is_zero();
  }
  add("(ra1) each component solves the Levy-Leblond equation", ra1);
  return rep;
}

// ---------------------------------------------------------------------------
// Lagrangian of the second-order Proca equation

struct LagrangianCheck {
  bool proportional = false;
  Cx factor;
  bool lowered = false;         // Euler-Lagrange rows carry a lower index
  bool lambda_flipped = false;  // matches only after lambda -> -lambda
};

// Hermitian form Q with L = sum conj(Psi^i) Q_ij Psi^j.
inline PMat proca_lagrangian_form(const Poly& lambda) {
  Poly m = Poly::var("m");
  CMat g = galilean_metric();
  // lower-index component Psi_n as a row over Psi^k
  auto psi_lower = [&](int n) {
    PMat r(1, 5);
    for (int k = 0; k < 5; ++k)
      if (!g(n, k).is_zero()) r(0, k) = Poly(g(n, k));
    return r;
  };
  auto psi_upper = [&](int n) {
    PMat r(1, 5);
    r(0, n) = Poly(1);
    return r;
  };
  PMat Q(5, 5);
  auto term = [&](const PMat& u, const PMat& v, const Poly& c) { Q += c * (u.dagger() * v); };
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      PMat u = p_lower(a) * psi_lower(b) - p_lower(b) * psi_lower(a);
      PMat v = p_upper(a) * psi_upper(b) - p_upper(b) * psi_upper(a);
      term(u, v, Poly(1));
      term(p_lower(a) * psi_lower(b), p_upper(a) * psi_upper(b), Poly(-1));
    }
  PMat u(1, 5), v(1, 5);
  for (int a = 0; a < 5; ++a) {
    u += p_upper(a) * psi_lower(a);
    v += p_lower(a) * psi_upper(a);
  }
  term(u, v, Poly(1));
  term(psi_lower(0), psi_upper(4), Poly(-1) * lambda * m * m);
  return Q;
}

namespace detail {

inline std::optional<Cx> proportionality(const PMat& Q, const PMat& T) {
  for (std::size_t i = 0; i < T.data().size(); ++i) {
    const Poly& t = T.data()[i];
    if (t.is_zero()) continue;
    const Poly& q = Q.data()[i];
    if (q.is_zero()) return std::nullopt;
    Cx c = q.lead().second / t.lead().second;
    if ((Q - Poly(c) * T).is_zero()) return c;
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

// Euler-Lagrange equations of the quadratic form against (gproca1), up to a constant factor.
inline LagrangianCheck lagrangian_check(const Poly& lambda) {
  LagrangianCheck out;
  PMat Q = proca_lagrangian_form(lambda);
  PMat g = pmat(galilean_metric());
  for (bool flip : {false, true}) {
    PMat K = gproca_operator(flip ? -lambda : lambda);
    for (bool low : {true, false}) {
      auto c = detail::proportionality(Q, low ? g * K : K);
      if (!c) continue;
      out.proportional = !flip;
      out.lambda_flipped = flip;
      out.factor = *c;
      out.lowered = low;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline json covariant_json(const CovariantSystem& sys) {
  json j;
  j["schema"] = kSchemaVersion;
  j["id"] = sys.id;
  j["unknowns"] = sys.slots;
  j["equations"] = json::array();
  for (std::size_t r = 0; r < sys.L.rows(); ++r) {
    json e;
    e["name"] = sys.equations[r];
    json t = json::object();
    for (std::size_t c = 0; c < sys.L.cols(); ++c)
      if (!sys.L(r, c).is_zero()) t[sys.slots[c]] = sys.L(r, c).str();
    e["terms"] = t;
    j["equations"].push_back(e);
  }
  return j;
}

}  // namespace galileq
