#pragma once

#include "betasys.hpp"

namespace galileq {

// g_04 = g_40 = 1, g_aa = -1
inline CMat galilean_metric() {
  CMat g(5, 5);
  g(0, 4) = g(4, 0) = 1;
  for (int a = 1; a <= 3; ++a) g(a, a) = -1;
  return g;
}

using FiveVector = std::array<Poly, 5>;

inline FiveVector lower_index(const FiveVector& x) {
  CMat g = galilean_metric();
  FiveVector y;
  for (int m = 0; m < 5; ++m)
    for (int n = 0; n < 5; ++n)
      if (!g(m, n).is_zero()) y[m] += x[n].scaled(g(m, n));
  return y;
}

// the metric is its own inverse
inline FiveVector raise_index(const FiveVector& x) { return lower_index(x); }

// p^m = (p0, p1, p2, p3, m)
inline FiveVector five_momentum() {
  return {Poly::var("p0"), Poly::var("p1"), Poly::var("p2"), Poly::var("p3"), Poly::var("m")};
}

struct GammaSet {
  std::array<CMat, 5> gamma;
  CMat hermitizer;
};

inline CMat gamma_hermitizer() {
  CMat I = CMat::identity(2), Z(2, 2);
  return blocks<Cx>({{Z, I}, {I, Z}});
}

// gamma_a = [[0,-sigma_a],[sigma_a,0]] as printed; kept for diagnostics.
inline CMat gamma_spatial_printed(int a) {
  CMat Z(2, 2);
  return blocks<Cx>({{Z, -pauli(a)}, {pauli(a), Z}});
}

// gamma_0 = [[0,0],[I,0]], gamma_4 = [[0,2I],[0,0]], gamma_a = i diag(sigma_a, -sigma_a)
inline GammaSet gamma_set() {
  GammaSet g;
  CMat I = CMat::identity(2), Z(2, 2);
  g.gamma[0] = blocks<Cx>({{Z, Z}, {I, Z}});
  g.gamma[4] = blocks<Cx>({{Z, Cx(2) * I}, {Z, Z}});
  for (int a = 0; a < 3; ++a) g.gamma[1 + a] = Cx::i() * blocks<Cx>({{pauli(a), Z}, {Z, -pauli(a)}});
  g.hermitizer = gamma_hermitizer();
  return g;
}

inline CheckReport klifford_report(const std::array<CMat, 5>& gam) {
  CheckReport r;
  CMat g = galilean_metric();
  std::size_t d = gam[0].rows();
  for (int n = 0; n < 5; ++n)
    for (int m = 0; m < 5; ++m) {
      CMat res = anticommutator(gam[n], gam[m]) - CMat::scalar(d, Cx(2) * g(n, m));
      r.add("{g" + std::to_string(n) + ",g" + std::to_string(m) + "}", pmat(res));
    }
  return r;
}

inline CheckReport gamma_hermitizer_report(const GammaSet& g) {
  CheckReport r;
  for (int n = 0; n < 5; ++n) {
    CMat x = g.hermitizer * g.gamma[n];
    r.add("(eta g" + std::to_string(n) + ")^dag", pmat(x.dagger() - x));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Galilean DKP

inline CMat dkp_eta() {
  CMat I3 = CMat::identity(3), Z(3, 3), z(3, 1), zr(1, 3);
  return blocks<Cx>({{Z, Z, I3, z}, {Z, I3, Z, z}, {I3, Z, Z, z}, {zr, zr, zr, CMat{{-1}}}});
}

struct DKPSet {
  std::array<PMat, 5> beta_tilde;
  std::array<PMat, 5> beta;  // the underlying (M4) matrices
  CMat eta;
};

inline DKPSet dkp_from_m4(const Poly& nu) {
  if (nu.is_zero()) throw std::invalid_argument("dkp_from_m4: nu must be nonzero");
  DKPSet d;
  d.eta = dkp_eta();
  BetaSystem m4 = catalog::m4(nu);
  PMat e = pmat(d.eta);
  for (int m = 0; m < 5; ++m) {
    d.beta[m] = m4.beta[m];
    d.beta_tilde[m] = e * m4.beta[m];
  }
  d.beta_tilde[4] = d.beta_tilde[4] - PMat::scalar(10, nu);
  return d;
}

// b_mu b_nu b_sigma + b_sigma b_nu b_mu - c (g_mu_nu b_sigma + g_sigma_nu b_mu) over indices < n_idx.
// c = 2 is the printed normalization, c = 1 the usual Duffin-Kemmer-Petiau one.
inline CheckReport kd2_report(const std::array<PMat, 5>& b, int n_idx, int c = 2) {
  CheckReport r;
  CMat g = galilean_metric();
  for (int mu = 0; mu < n_idx; ++mu)
    for (int nu = 0; nu < n_idx; ++nu)
      for (int s = 0; s < n_idx; ++s) {
        PMat x = b[mu] * b[nu] * b[s] + b[s] * b[nu] * b[mu];
        x -= Poly(Cx(c) * g(mu, nu)) * b[s];
        x -= Poly(Cx(c) * g(s, nu)) * b[mu];
        r.add("(" + std::to_string(mu) + "," + std::to_string(nu) + "," + std::to_string(s) + ")", std::move(x));
      }
  return r;
}

inline std::size_t count_ok(const CheckReport& r) {
  std::size_t k = 0;
  for (const auto& i : r.items) k += i.ok;
  return k;
}

// ---------------------------------------------------------------------------
// Anomalous-coupling matrices

// Basis of {L : S_a L = L S_a, eta_a^dag L = L eta_a}.
inline std::vector<CMat> solve_lambda(const GalileiRep& rep) {
  std::size_t d = rep.dim;
  CMat L(6 * d * d, d * d);
  std::size_t row = 0;
  for (int a = 0; a < 3; ++a) {
    const CMat& S = rep.S[a];
    CMat ed = rep.eta[a].dagger();
    const CMat& e = rep.eta[a];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j, ++row)
        for (std::size_t l = 0; l < d; ++l) {
          if (!S(i, l).is_zero()) L(row, l * d + j) += S(i, l);
          if (!S(l, j).is_zero()) L(row, i * d + l) -= S(l, j);
        }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j, ++row)
        for (std::size_t l = 0; l < d; ++l) {
          if (!ed(i, l).is_zero()) L(row, l * d + j) += ed(i, l);
          if (!e(l, j).is_zero()) L(row, i * d + l) -= e(l, j);
        }
  }
  std::vector<CMat> out;
  for (const auto& v : nullspace(L)) {
    CMat M(d, d);
    for (std::size_t k = 0; k < d * d; ++k) M(k / d, k % d) = v(k, 0);
    out.push_back(M);
  }
  return out;
}

inline bool in_span(const std::vector<CMat>& basis, const CMat& x) {
  std::size_t n = x.rows() * x.cols();
  CMat M(n, basis.size()), b(n, 1);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t k = 0; k < n; ++k) M(k, j) = basis[j](k / x.cols(), k % x.cols());
  for (std::size_t k = 0; k < n; ++k) b(k, 0) = x(k / x.cols(), k % x.cols());
  if (basis.empty()) return x.is_zero();
  return solve(M, b).has_value();
}

inline bool solves_lemma(const GalileiRep& rep, const CMat& L) {
  for (int a = 0; a < 3; ++a) {
    if (!commutator(rep.S[a], L).is_zero()) return false;
    if (!(rep.eta[a].dagger() * L - L * rep.eta[a]).is_zero()) return false;
  }
  return true;
}

inline std::array<Poly, 3> field_vec(const std::string& base) {
  return {Poly::var(base + "1"), Poly::var(base + "2"), Poly::var(base + "3")};
}

inline std::array<Poly, 3> cross(const std::array<Poly, 3>& a, const std::array<Poly, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline PMat dot_mats(const std::array<CMat, 3>& m, const std::array<Poly, 3>& v) {
  PMat r(m[0].rows(), m[0].cols());
  for (int a = 0; a < 3; ++a) r += v[a] * pmat(m[a]);
  return r;
}

// F1 = L eta.H, F2 = L (S.H - eta.E); checks exp(i eta^dag.v) F(E - v x H, H) exp(-i eta.v) = F(E, H).
inline CheckReport lemma_invariance_check(const GalileiRep& rep, const CMat& L, const std::array<Cx, 3>& v) {
  CheckReport r;
  auto E = field_vec("E"), H = field_vec("H");
  std::array<Poly, 3> vp{Poly(v[0]), Poly(v[1]), Poly(v[2])};
  auto vxH = cross(vp, H);
  std::array<Poly, 3> E2{E[0] - vxH[0], E[1] - vxH[1], E[2] - vxH[2]};
  PMat Lp = pmat(L);
  PMat F1 = Lp * dot_mats(rep.eta, H);
  PMat F2 = Lp * (dot_mats(rep.S, H) - dot_mats(rep.eta, E));
  PMat F2p = Lp * (dot_mats(rep.S, H) - dot_mats(rep.eta, E2));
  CMat W = boost_matrix(rep, v, -1);
  PMat left = pmat(W.dagger()), right = pmat(W);
  r.add("F1 boost invariance", left * F1 * right - F1);
  r.add("F2 boost invariance", left * F2p * right - F2);
  return r;
}

}  // namespace galileq
