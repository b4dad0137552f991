#pragma once

#include "structure.hpp"

namespace galileq {

enum class Verdict { ParticleSpin0, ParticleSpinHalf, ParticleSpin1, ParticleSpin3Half, Composite, Inconsistent };

inline std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::ParticleSpin0: return "ParticleSpin0";
    case Verdict::ParticleSpinHalf: return "ParticleSpin1/2";
    case Verdict::ParticleSpin1: return "ParticleSpin1";
    case Verdict::ParticleSpin3Half: return "ParticleSpin3/2";
    case Verdict::Composite: return "Composite(s=1+0)";
    case Verdict::Inconsistent: return "Inconsistent";
  }
  return "?";
}

struct S2Eigen {
  Rational value;
  std::size_t dim = 0;
};

struct Branch {
  Rational epsilon;
  std::size_t multiplicity = 0;
  std::vector<S2Eigen> s2;
  CMat kernel;
};

struct ClassificationResult {
  std::string id;
  Rational mass;
  std::vector<Branch> branches;
  Verdict verdict = Verdict::Inconsistent;
  bool degenerate = false;
  std::vector<std::string> nonrational;  // irreducible factors without rational roots
  std::optional<bool> agrees_with_dets;
};

// ---------------------------------------------------------------------------
// Small helpers

inline int var_x() { return sym("x"); }
inline int var_c2() { return sym("C2"); }

inline bool rational_sqrt(const Rational& q, Rational& out) {
  if (sgn(q) < 0) return false;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  out = Rational(rn, rd);
  out.canonicalize();
  return true;
}

// s with s(s+1) = c, if 2s is a nonnegative integer
inline std::optional<Rational> spin_from_s2(const Rational& c) {
  Rational r;
  if (!rational_sqrt(1 + 4 * c, r)) return std::nullopt;
  Rational s = (r - 1) / 2;
  Rational two_s = 2 * s;
  if (sgn(s) < 0 || two_s.get_den() != 1) return std::nullopt;
  return s;
}

inline CMat vstack(const std::vector<CMat>& ms) {
  std::size_t r = 0, c = ms.empty() ? 0 : ms[0].cols();
  for (const auto& m : ms) r += m.rows();
  CMat out(r, c);
  std::size_t off = 0;
  for (const auto& m : ms) {
    out.set_block(off, 0, m);
    off += m.rows();
  }
  return out;
}

// Left inverse of a full-column-rank constant matrix.
inline CMat left_inverse(const CMat& B) {
  auto g = inverse(B.dagger() * B);
  if (!g) throw std::invalid_argument("left_inverse: columns are dependent");
  return *g * B.dagger();
}

// X with A B = B X, or nullopt when the span of B is not invariant.
inline std::optional<PMat> restrict_to(const PMat& A, const CMat& B) {
  PMat Bp = pmat(B);
  PMat X = pmat(left_inverse(B)) * A * Bp;
  if (!(A * Bp - Bp * X).is_zero()) return std::nullopt;
  return X;
}

// Rational eigenvalues of a constant square matrix with geometric multiplicities.
inline std::vector<S2Eigen> rational_eigen(const CMat& X, std::vector<std::string>* nonrational = nullptr) {
  std::vector<S2Eigen> out;
  if (X.rows() == 0) return out;
  int t = var_x();
  PMat M = pmat(X) - Poly::var(t) * PMat::identity(X.rows());
  RootReport rr = rational_roots(det_bareiss(M), t);
  if (rr.has_nonrational() && nonrational) {
    Poly f;
    for (std::size_t k = 0; k < rr.residual.size(); ++k) f += Poly::var(t, static_cast<int>(k)).scaled(Cx(rr.residual[k]));
    nonrational->push_back(f.str());
  }
  for (const auto& r : rr.roots) {
    CMat Y = X - CMat::scalar(X.rows(), Cx(r.first));
    out.push_back({r.first, nullspace(Y).size()});
  }
  std::sort(out.begin(), out.end(), [](const S2Eigen& a, const S2Eigen& b) { return a.value > b.value; });
  return out;
}

inline CMat spin_squared(const std::array<CMat, 3>& S) { return S[0] * S[0] + S[1] * S[1] + S[2] * S[2]; }

// S^2 spectrum restricted to the span of the kernel columns.
inline std::vector<S2Eigen> s2_on(const std::array<CMat, 3>& S, const CMat& K) {
  if (K.cols() == 0) return {};
  auto X = restrict_to(pmat(spin_squared(S)), K);
  if (!X) throw std::logic_error("kernel is not rotation invariant");
  return rational_eigen(to_const(*X));
}

// Verdict from branches: a single spin multiplet, or spin 1 plus spin 0.
inline Verdict verdict_from(const std::vector<Branch>& br) {
  std::map<Rational, std::size_t> dims;
  std::size_t total = 0;
  for (const auto& b : br) {
    total += b.multiplicity;
    for (const auto& e : b.s2) dims[e.value] += e.dim;
  }
  if (br.empty()) return Verdict::Inconsistent;
  if (dims.size() == 1 && br.size() == 1) {
    auto s = spin_from_s2(dims.begin()->first);
    if (!s) return Verdict::Inconsistent;
    Rational two_s = 2 * *s;
    if (total != two_s.get_num().get_ui() + 1) return Verdict::Inconsistent;
    long k = two_s.get_num().get_si();
    if (k == 0) return Verdict::ParticleSpin0;
    if (k == 1) return Verdict::ParticleSpinHalf;
    if (k == 2) return Verdict::ParticleSpin1;
    if (k == 3) return Verdict::ParticleSpin3Half;
    return Verdict::Inconsistent;
  }
  if (dims.size() == 2 && dims.count(Rational(2)) && dims.count(Rational(0)) && dims[Rational(2)] == 3 &&
      dims[Rational(0)] == 1 && total == 4)
    return Verdict::Composite;
  return Verdict::Inconsistent;
}

// ---------------------------------------------------------------------------
// Casimir operators

struct CasimirSet {
  PMat C1, C2, C3;
};

inline std::array<Poly, 3> momentum3() { return {Poly::var("p1"), Poly::var("p2"), Poly::var("p3")}; }

inline CasimirSet casimirs(const GalileiRep& rep) {
  std::size_t d = rep.dim;
  Poly m = Poly::var("m"), p0 = Poly::var("p0");
  auto p = momentum3();
  Poly psq = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
  CasimirSet c;
  c.C1 = PMat::scalar(d, m);
  c.C2 = PMat::scalar(d, Poly(2) * m * p0 - psq);
  std::array<PMat, 3> S, e;
  for (int a = 0; a < 3; ++a) {
    S[a] = pmat(rep.S[a]);
    e[a] = pmat(rep.eta[a]);
  }
  PMat C3 = (m * m) * pmat(spin_squared(rep.S));
  PMat etap(d, d), eta2(d, d);
  for (int a = 0; a < 3; ++a) {
    etap += p[a] * e[a];
    eta2 += e[a] * e[a];
    for (int b = 0; b < 3; ++b)
      for (int k = 0; k < 3; ++k) {
        int s = levi(a, b, k);
        if (!s) continue;
        // (S x eta)_a p_a - (eta x S)_a p_a
        C3 += Poly(s) * m * p[a] * (S[b] * e[k] - e[b] * S[k]);
      }
  }
  C3 += psq * eta2 - etap * etap;
  c.C3 = C3;
  return c;
}

// exp(sign i eta.p / m) as a finite polynomial in p with powers of 1/m
inline PMat w_matrix(const GalileiRep& rep, int sign = 1) {
  std::size_t d = rep.dim;
  auto p = momentum3();
  PMat X(d, d);
  Poly f = Poly::var("m", -1).scaled(Cx(0, sign));
  for (int a = 0; a < 3; ++a) X += (f * p[a]) * pmat(rep.eta[a]);
  PMat term = PMat::identity(d), sum = term;
  for (int k = 1; k <= static_cast<int>(d) + 1; ++k) {
    term = Poly(make_q(1, k)) * (term * X);
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

// beta^mu p_mu + beta_4 m = beta_0 p0 - beta_a p_a + beta_4 m
inline PMat wave_operator(const std::array<PMat, 5>& beta) {
  auto p = momentum3();
  PMat L = Poly::var("p0") * beta[0] + Poly::var("m") * beta[4];
  for (int a = 0; a < 3; ++a) L -= p[a] * beta[1 + a];
  return L;
}

inline CheckReport w_identity(const BetaSystem& bs) {
  for (int a = 0; a < 3; ++a)
    if (!nilpotency_index(bs.rep, {a == 0 ? Cx(1) : Cx(0), a == 1 ? Cx(1) : Cx(0), a == 2 ? Cx(1) : Cx(0)}) &&
        !bs.rep.eta[a].is_zero())
      throw std::invalid_argument("w_identity: eta is not nilpotent");
  CheckReport r;
  Poly m = Poly::var("m"), p0 = Poly::var("p0");
  auto p = momentum3();
  Poly psq = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
  PMat W = w_matrix(bs.rep, 1), Winv = w_matrix(bs.rep, -1);
  r.add("W W^-1 = I", W * Winv - PMat::identity(bs.dim()));
  PMat lhs = (Poly(2) * m) * (Winv.dagger() * wave_operator(bs.beta) * Winv);
  PMat rhs = (Poly(2) * m * p0 - psq) * bs.beta[0] + (Poly(2) * m * m) * bs.beta[4];
  r.add("2m (W^-1)^dag L W^-1 = beta0 C2 + 2m^2 beta4", lhs - rhs);
  CasimirSet c = casimirs(bs.rep);
  r.add("W C3 W^-1 = m^2 S^2", W * c.C3 * Winv - (m * m) * pmat(spin_squared(bs.rep.S)));
  return r;
}

// ---------------------------------------------------------------------------
// Spin sectors

// Highest-weight vectors of spin s: kernel of S_1 + i S_2 and S_3 - s.
inline CMat highest_weight_basis(const std::array<CMat, 3>& S, const Rational& s) {
  std::size_t d = S[0].rows();
  CMat Sp = S[0] + Cx::i() * S[1];
  CMat S3 = S[2] - CMat::scalar(d, Cx(s));
  auto ns = nullspace(vstack({Sp, S3}));
  return ns.empty() ? CMat(d, 0) : hstack(ns);
}

struct SectorRoot {
  Rational epsilon;
  std::size_t nullity = 0;
};

struct SectorDet {
  Rational spin;
  std::size_t copies = 0;  // multiplicity of the spin in the carrier space
  Poly det;                // in C2
  std::vector<SectorRoot> roots;
  bool degenerate = false;
  std::string nonrational;
};

struct ConsistencyDets {
  std::string id;
  bool from_blocks = false;
  Poly detV, detS;  // multiplicity-block determinants (symbolic m)
  std::optional<std::array<Poly, 4>> linear;  // (nu, mu, nu', mu') when both are linear in C2
  std::vector<SectorDet> sectors;             // at the sampled mass
  std::vector<Branch> branches;
  Verdict verdict = Verdict::Inconsistent;
};

// Pencil P(x) restricted to each highest-weight sector; x is the variable of P.
inline std::vector<SectorDet> sector_dets(const PMat& P, int x, const std::array<CMat, 3>& S) {
  std::vector<SectorDet> out;
  std::size_t d = S[0].rows();
  for (long twice = static_cast<long>(d); twice >= 0; --twice) {
    Rational s = make_q(twice, 2);
    CMat B = highest_weight_basis(S, s);
    if (B.cols() == 0) continue;
    auto X = restrict_to(P, B);
    if (!X) throw std::invalid_argument("sector_dets: pencil does not commute with S");
    SectorDet sd;
    sd.spin = s;
    sd.copies = B.cols();
    sd.det = det_bareiss(*X);
    RootReport rr = rational_roots(sd.det, x);
    sd.degenerate = rr.identically_zero;
    if (rr.has_nonrational()) {
      Poly f;
      for (std::size_t k = 0; k < rr.residual.size(); ++k)
        f += Poly::var(x, static_cast<int>(k)).scaled(Cx(rr.residual[k]));
      sd.nonrational = f.str();
    }
    for (const auto& r : rr.roots) {
      CMat Xr = to_const(subs(*X, x, Poly(r.first)));
      sd.roots.push_back({r.first, nullspace(Xr).size()});
    }
    out.push_back(std::move(sd));
  }
  return out;
}

inline std::vector<Branch> branches_from_sectors(const std::vector<SectorDet>& sectors) {
  std::vector<Branch> out;
  for (const auto& sd : sectors)
    for (const auto& r : sd.roots) {
      Rational two_s = 2 * sd.spin;
      std::size_t mult = (two_s.get_num().get_ui() + 1) * r.nullity;
      out.push_back({r.epsilon, mult, {{sd.spin * (sd.spin + 1), mult}}, CMat()});
    }
  return out;
}

inline Verdict verdict_from_sectors(const std::vector<SectorDet>& sectors, std::vector<Branch>& br) {
  for (const auto& sd : sectors)
    if (sd.degenerate || !sd.nonrational.empty()) return Verdict::Inconsistent;
  br = branches_from_sectors(sectors);
  return verdict_from(br);
}

inline void require_constant(const BetaSystem& bs, const char* who) {
  for (const auto& b : bs.beta)
    if (!is_constant(b)) throw std::invalid_argument(std::string(who) + ": substitute free parameters first");
}

// det(F C2 + 2m^2 R) and det(G C2 + 2m^2 E) over multiplicity blocks, or spin-sector determinants of
// beta0 C2 + 2m^2 beta4 when no block structure is available. Verdict evaluated at the given mass.
inline ConsistencyDets consistency_dets(const BetaSystem& bs, const Rational& mass = Rational(1)) {
  ConsistencyDets cd;
  cd.id = bs.id;
  int x = var_c2(), mv = sym("m");
  Poly C2 = Poly::var(x), m = Poly::var(mv);
  Poly two_m2 = Poly(2) * m * m;
  if (bs.blocks) {
    const MultBlocks& b = *bs.blocks;
    if (b.R.rows() != b.R.cols() || b.E.rows() != b.E.cols())
      throw std::invalid_argument("consistency_dets: non-square multiplicity blocks");
    cd.from_blocks = true;
    cd.detV = b.R.rows() ? det_bareiss(C2 * b.F + two_m2 * b.R) : Poly(1);
    cd.detS = b.E.rows() ? det_bareiss(C2 * b.G + two_m2 * b.E) : Poly(1);
    if (cd.detV.max_deg(x) <= 1 && cd.detS.max_deg(x) <= 1)
      cd.linear = std::array<Poly, 4>{cd.detV.coeff(x, 1), cd.detV.coeff(x, 0), cd.detS.coeff(x, 1), cd.detS.coeff(x, 0)};
    std::map<int, Poly> at{{mv, Poly(mass)}};
    for (auto [blk, spin] : {std::pair{0, 1}, std::pair{1, 0}}) {
      const PMat& A = blk == 0 ? b.F : b.G;
      const PMat& Bm = blk == 0 ? b.R : b.E;
      if (A.rows() == 0) continue;
      PMat P = subs(C2 * A + two_m2 * Bm, at);
      SectorDet sd;
      sd.spin = Rational(spin);
      sd.copies = A.rows();
      sd.det = det_bareiss(P);
      for (int v : sd.det.symbols())
        if (v != x) throw std::invalid_argument("consistency_dets: substitute free parameters first");
      RootReport rr = rational_roots(sd.det, x);
      sd.degenerate = rr.identically_zero;
      if (rr.has_nonrational()) sd.nonrational = "nonrational";
      for (const auto& r : rr.roots) sd.roots.push_back({r.first, nullspace(to_const(subs(P, x, Poly(r.first)))).size()});
      cd.sectors.push_back(std::move(sd));
    }
  } else {
    require_constant(bs, "consistency_dets");
    PMat P = C2 * bs.beta[0] + (Poly(2) * Poly(mass) * Poly(mass)) * bs.beta[4];
    cd.sectors = sector_dets(P, x, bs.rep.S);
  }
  cd.verdict = verdict_from_sectors(cd.sectors, cd.branches);
  return cd;
}

// ---------------------------------------------------------------------------
// Kernel oracle

// Roots and kernels of a square pencil P(x) with constant coefficients; S acts on the columns.
inline ClassificationResult pencil_classify(const PMat& P, int x, const std::array<CMat, 3>& S) {
  ClassificationResult res;
  Poly d = det_bareiss(P);
  RootReport rr = rational_roots(d, x);
  if (rr.identically_zero) {
    res.degenerate = true;
    PMat P0 = subs(P, x, Poly(0)), P1 = subs(P, x, Poly(1)) - P0;
    auto ns = nullspace(vstack({to_const(P0), to_const(P1)}));
    Branch b;
    b.multiplicity = ns.size();
    if (!ns.empty()) b.kernel = hstack(ns);
    res.branches.push_back(b);
    res.verdict = Verdict::Inconsistent;
    return res;
  }
  if (rr.has_nonrational()) {
    Poly f;
    for (std::size_t k = 0; k < rr.residual.size(); ++k) f += Poly::var(x, static_cast<int>(k)).scaled(Cx(rr.residual[k]));
    res.nonrational.push_back(f.str());
  }
  for (const auto& r : rr.roots) {
    CMat Pr = to_const(subs(P, x, Poly(r.first)));
    auto ns = nullspace(Pr);
    Branch b;
    b.epsilon = r.first;
    b.multiplicity = ns.size();
    b.kernel = hstack(ns);
    b.s2 = s2_on(S, b.kernel);
    res.branches.push_back(std::move(b));
  }
  res.verdict = res.nonrational.empty() ? verdict_from(res.branches) : Verdict::Inconsistent;
  return res;
}

// Same (eps, S^2 value) -> dimension content.
inline bool same_branches(const std::vector<Branch>& a, const std::vector<Branch>& b) {
  auto key = [](const std::vector<Branch>& v) {
    std::map<std::pair<Rational, Rational>, std::size_t> k;
    for (const auto& x : v)
      for (const auto& e : x.s2) k[{x.epsilon, e.value}] += e.dim;
    return k;
  };
  return key(a) == key(b);
}

// Kernel of beta0 x + 2m^2 beta4 at the rational roots x = eps.
inline ClassificationResult classify(const BetaSystem& bs, const Rational& mass) {
  if (sgn(mass) <= 0) throw std::invalid_argument("classify: mass must be positive");
  require_constant(bs, "classify");
  int x = var_c2();
  PMat P = Poly::var(x) * bs.beta[0] + Poly(2 * mass * mass) * bs.beta[4];
  ClassificationResult res = pencil_classify(P, x, bs.rep.S);
  res.id = bs.id;
  res.mass = mass;
  ConsistencyDets cd = consistency_dets(bs, mass);
  res.agrees_with_dets = cd.verdict == res.verdict && same_branches(cd.branches, res.branches);
  return res;
}

struct PlaneWaveBranch {
  Rational p0;
  CMat solutions;  // columns
  std::size_t count() const { return solutions.cols(); }
};

struct PlaneWaveResult {
  std::vector<PlaneWaveBranch> branches;
  bool degenerate = false;
  std::vector<std::string> nonrational;
};

// Rational p0 roots of det L(p0) and the kernels, for a constant-coefficient operator in p0.
inline PlaneWaveResult plane_wave_kernels(const PMat& L) {
  PlaneWaveResult out;
  int p0 = sym("p0");
  RootReport rr = rational_roots(det_bareiss(L), p0);
  if (rr.identically_zero) {
    out.degenerate = true;
    return out;
  }
  if (rr.has_nonrational()) {
    Poly f;
    for (std::size_t k = 0; k < rr.residual.size(); ++k) f += Poly::var(p0, static_cast<int>(k)).scaled(Cx(rr.residual[k]));
    out.nonrational.push_back(f.str());
  }
  for (const auto& r : rr.roots) {
    auto ns = nullspace(to_const(subs(L, p0, Poly(r.first))));
    out.branches.push_back({r.first, hstack(ns)});
  }
  return out;
}

inline std::map<int, Poly> momentum_values(const Rational& mass, const std::array<Rational, 3>& p) {
  return {{sym("m"), Poly(mass)}, {sym("p1"), Poly(p[0])}, {sym("p2"), Poly(p[1])}, {sym("p3"), Poly(p[2])}};
}

inline PlaneWaveResult plane_wave_solutions(const BetaSystem& bs, const Rational& mass, const std::array<Rational, 3>& p) {
  if (sgn(mass) <= 0) throw std::invalid_argument("plane_wave_solutions: mass must be positive");
  require_constant(bs, "plane_wave_solutions");
  return plane_wave_kernels(subs(wave_operator(bs.beta), momentum_values(mass, p)));
}

// p0 = (eps + p^2) / 2m for every branch, with matching counts.
inline bool plane_wave_matches(const PlaneWaveResult& pw, const ClassificationResult& c, const std::array<Rational, 3>& p) {
  Rational psq = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
  std::map<Rational, std::size_t> want, got;
  for (const auto& b : c.branches) want[(b.epsilon + psq) / (2 * c.mass)] += b.multiplicity;
  for (const auto& b : pw.branches) got[b.p0] += b.count();
  return !pw.degenerate && want == got;
}

// Plane waves at p and at p' = p + m v with p0' = p0 + v.p + m v^2/2: same eps and counts, and
// exp(-i eta.v) maps each kernel into the boosted one.
inline bool boost_covariance(const BetaSystem& bs, const Rational& mass, const std::array<Rational, 3>& p,
                             const std::array<Rational, 3>& v, int sign = -1) {
  std::array<Rational, 3> q;
  Rational vp = 0, vv = 0;
  for (int a = 0; a < 3; ++a) {
    q[a] = p[a] + mass * v[a];
    vp += v[a] * p[a];
    vv += v[a] * v[a];
  }
  PlaneWaveResult a = plane_wave_solutions(bs, mass, p), b = plane_wave_solutions(bs, mass, q);
  if (a.degenerate || b.degenerate || a.branches.size() != b.branches.size()) return false;
  CMat B = boost_matrix(bs.rep, {Cx(v[0]), Cx(v[1]), Cx(v[2])}, sign);
  PMat Lq = subs(wave_operator(bs.beta), momentum_values(mass, q));
  for (const auto& br : a.branches) {
    Rational p0b = br.p0 + vp + mass * vv / 2;
    auto it = std::find_if(b.branches.begin(), b.branches.end(), [&](const PlaneWaveBranch& x) { return x.p0 == p0b; });
    if (it == b.branches.end() || it->count() != br.count()) return false;
    CMat L = to_const(subs(Lq, sym("p0"), Poly(p0b)));
    if (!(L * B * br.solutions).is_zero()) return false;
  }
  return true;
}

}  // namespace galileq
