#pragma once

#include <array>
#include <random>
#include <set>

#include "linalg.hpp"

namespace galileq {

inline int levi(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  int p = (a - b) * (b - c) * (c - a);
  return p > 0 ? 1 : -1;
}

// Spin-one matrices, (s_a)_{bc} = sign * i * eps_{abc}. sign = -1 satisfies [s_1,s_2] = i s_3.
inline CMat spin1(int a, int sign = -1) {
  CMat s(3, 3);
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 3; ++c) {
      int e = levi(a, b, c);
      if (e) s(b, c) = Cx(0, sign * e);
    }
  return s;
}

// k_a: 1x3 row with i in column a
inline CMat kvec(int a) {
  CMat k(1, 3);
  k(0, a) = Cx::i();
  return k;
}

inline CMat pauli(int a) {
  switch (a) {
    case 0: return CMat{{0, 1}, {1, 0}};
    case 1: return CMat{{0, Cx(0, -1)}, {Cx(0, 1), 0}};
    default: return CMat{{1, 0}, {0, -1}};
  }
}

using QIndex = std::array<int, 3>;

inline std::string q_str(const QIndex& q) {
  return "(" + std::to_string(q[0]) + "," + std::to_string(q[1]) + "," + std::to_string(q[2]) + ")";
}

struct ABCTriple {
  std::size_t n = 0, k = 0;
  CMat A, B, C;
};

inline std::vector<CMat> a1_residuals(const ABCTriple& t) {
  std::vector<CMat> r;
  r.push_back(t.A * t.B);
  r.push_back(t.C * t.A);
  r.push_back(t.A * t.A + t.B * t.C);
  return r;
}

inline bool satisfies_a1(const ABCTriple& t) {
  for (const auto& m : a1_residuals(t))
    if (!m.is_zero()) return false;
  return true;
}

inline const std::vector<QIndex>& table1_rows() {
  static const std::vector<QIndex> rows = {{0, 1, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 2, 1},
                                           {2, 0, 0}, {2, 1, 0}, {2, 1, 1}, {2, 2, 1}, {3, 1, 1}};
  return rows;
}

// Row (2,1,1) is printed with B=(1,0)^T, which violates AB=0 for the shared lower-shift A;
// the rank-one solution with the same A is B=(0,1)^T.
inline ABCTriple table1_abc(const QIndex& q) {
  ABCTriple t;
  t.n = static_cast<std::size_t>(q[0]);
  t.k = static_cast<std::size_t>(q[1]);
  t.A = CMat(t.n, t.n);
  t.B = CMat(t.n, t.k);
  t.C = CMat(t.k, t.n);
  CMat shift2{{0, 0}, {1, 0}};
  if (q == QIndex{0, 1, 0} || q == QIndex{1, 0, 0}) {
  } else if (q == QIndex{1, 1, 0}) {
    t.C(0, 0) = 1;
  } else if (q == QIndex{1, 1, 1}) {
    t.B(0, 0) = 1;
  } else if (q == QIndex{1, 2, 1}) {
    t.B(0, 0) = 1;
    t.C(1, 0) = 1;
  } else if (q == QIndex{2, 0, 0}) {
    t.A = shift2;
  } else if (q == QIndex{2, 1, 0}) {
    t.A = shift2;
    t.C(0, 0) = 1;
  } else if (q == QIndex{2, 1, 1}) {
    t.A = shift2;
    t.B(1, 0) = 1;
  } else if (q == QIndex{2, 2, 1}) {
    t.A = shift2;
    t.B = shift2;
    t.C = shift2;
  } else if (q == QIndex{3, 1, 1}) {
    t.A = CMat{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    t.B(2, 0) = -1;
    t.C(0, 0) = 1;
  } else {
    throw std::invalid_argument("unknown table row " + q_str(q));
  }
  return t;
}

// The printed (2,1,1) entry, kept for diagnostics.
inline ABCTriple table1_abc_printed_211() {
  ABCTriple t = table1_abc({2, 1, 1});
  t.B = CMat{{1}, {0}};
  return t;
}

// ---------------------------------------------------------------------------

struct RepDescriptor {
  enum class Kind { TableRow, SpinorD1half, SpinorD2half, DirectSum, TensorProduct };
  Kind kind = Kind::TableRow;
  QIndex q{0, 0, 0};
  std::vector<RepDescriptor> parts;

  static RepDescriptor row(const QIndex& q) {
    RepDescriptor d;
    d.kind = Kind::TableRow;
    d.q = q;
    return d;
  }
  static RepDescriptor spinor1() {
    RepDescriptor d;
    d.kind = Kind::SpinorD1half;
    return d;
  }
  static RepDescriptor spinor2() {
    RepDescriptor d;
    d.kind = Kind::SpinorD2half;
    return d;
  }
  static RepDescriptor sum(std::vector<RepDescriptor> p) {
    RepDescriptor d;
    d.kind = Kind::DirectSum;
    d.parts = std::move(p);
    return d;
  }
  static RepDescriptor tensor(RepDescriptor a, RepDescriptor b) {
    RepDescriptor d;
    d.kind = Kind::TensorProduct;
    d.parts = {std::move(a), std::move(b)};
    return d;
  }

  std::size_t dim() const {
    switch (kind) {
      case Kind::TableRow: return static_cast<std::size_t>(3 * q[0] + q[1]);
      case Kind::SpinorD1half: return 2;
      case Kind::SpinorD2half: return 4;
      case Kind::DirectSum: {
        std::size_t d = 0;
        for (const auto& p : parts) d += p.dim();
        return d;
      }
      case Kind::TensorProduct: return parts.at(0).dim() * parts.at(1).dim();
    }
    return 0;
  }

  std::string str() const {
    switch (kind) {
      case Kind::TableRow:
        return "D(" + std::to_string(q[0]) + "," + std::to_string(q[1]) + "," + std::to_string(q[2]) + ")";
      case Kind::SpinorD1half: return "D1(1/2)";
      case Kind::SpinorD2half: return "D2(1/2)";
      case Kind::DirectSum: {
        std::string s;
        for (const auto& p : parts) s += (s.empty() ? "" : "+") + p.str();
        return s;
      }
      case Kind::TensorProduct: return "(" + parts.at(0).str() + ")x(" + parts.at(1).str() + ")";
    }
    return "?";
  }

  bool operator==(const RepDescriptor& o) const {
    return kind == o.kind && q == o.q && parts == o.parts;
  }
};

struct GalileiRep {
  RepDescriptor descriptor;
  std::size_t dim = 0;
  std::array<CMat, 3> S, eta;
  // Present for vector/scalar carriers laid out as (C^n (x) C^3) + C^k.
  std::optional<ABCTriple> abc;
  std::string basis_note;
};

inline GalileiRep rep_from_abc(const ABCTriple& t, RepDescriptor d) {
  GalileiRep r;
  r.descriptor = std::move(d);
  r.dim = 3 * t.n + t.k;
  CMat In = CMat::identity(t.n);
  for (int a = 0; a < 3; ++a) {
    CMat S(r.dim, r.dim), E(r.dim, r.dim);
    S.set_block(0, 0, kron(In, spin1(a)));
    E.set_block(0, 0, kron(t.A, spin1(a)));
    if (t.k) {
      E.set_block(0, 3 * t.n, kron(t.B, kvec(a).dagger()));
      E.set_block(3 * t.n, 0, kron(t.C, kvec(a)));
    }
    r.S[a] = S;
    r.eta[a] = E;
  }
  r.abc = t;
  return r;
}

// Merged layout for a direct sum of table rows: vector blocks first, then scalars.
inline ABCTriple merged_abc(const std::vector<QIndex>& qs) {
  std::vector<CMat> As, Bs, Cs;
  ABCTriple t;
  for (const auto& q : qs) {
    ABCTriple x = table1_abc(q);
    As.push_back(x.A);
    Bs.push_back(x.B);
    Cs.push_back(x.C);
    t.n += x.n;
    t.k += x.k;
  }
  t.A = direct_sum(As);
  t.B = direct_sum(Bs);
  t.C = direct_sum(Cs);
  if (t.A.rows() != t.n) t.A = CMat(t.n, t.n);
  if (t.B.rows() != t.n || t.B.cols() != t.k) {
    // direct_sum skips empty blocks correctly only when shapes are consistent
    CMat B(t.n, t.k);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : Bs) {
      B.set_block(r0, c0, b);
      r0 += b.rows();
      c0 += b.cols();
    }
    t.B = B;
  }
  if (t.C.rows() != t.k || t.C.cols() != t.n) {
    CMat C(t.k, t.n);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& c : Cs) {
      C.set_block(r0, c0, c);
      r0 += c.rows();
      c0 += c.cols();
    }
    t.C = C;
  }
  return t;
}

inline GalileiRep merged_rep(const std::vector<QIndex>& qs) {
  std::vector<RepDescriptor> parts;
  for (const auto& q : qs) parts.push_back(RepDescriptor::row(q));
  RepDescriptor d = qs.size() == 1 ? parts[0] : RepDescriptor::sum(parts);
  GalileiRep r = rep_from_abc(merged_abc(qs), d);
  if (qs.size() > 1) r.basis_note = "vector blocks first";
  return r;
}

inline GalileiRep build_rep(const RepDescriptor& d) {
  using K = RepDescriptor::Kind;
  switch (d.kind) {
    case K::TableRow: return rep_from_abc(table1_abc(d.q), d);
    case K::SpinorD1half: {
      GalileiRep r;
      r.descriptor = d;
      r.dim = 2;
      for (int a = 0; a < 3; ++a) {
        r.S[a] = Cx(make_q(1, 2)) * pauli(a);
        r.eta[a] = CMat(2, 2);
      }
      return r;
    }
    case K::SpinorD2half: {
      GalileiRep r;
      r.descriptor = d;
      r.dim = 4;
      for (int a = 0; a < 3; ++a) {
        CMat z(2, 2);
        r.S[a] = Cx(make_q(1, 2)) * blocks<Cx>({{pauli(a), z}, {z, pauli(a)}});
        r.eta[a] = Cx(0, make_q(1, 2)) * blocks<Cx>({{z, z}, {pauli(a), z}});
      }
      return r;
    }
    case K::DirectSum: {
      if (d.parts.empty()) throw std::invalid_argument("empty direct sum");
      std::vector<GalileiRep> ps;
      for (const auto& p : d.parts) ps.push_back(build_rep(p));
      GalileiRep r;
      r.descriptor = d;
      for (const auto& p : ps) r.dim += p.dim;
      for (int a = 0; a < 3; ++a) {
        std::vector<CMat> s, e;
        for (const auto& p : ps) {
          s.push_back(p.S[a]);
          e.push_back(p.eta[a]);
        }
        r.S[a] = direct_sum(s);
        r.eta[a] = direct_sum(e);
      }
      return r;
    }
    case K::TensorProduct: {
      if (d.parts.size() != 2) throw std::invalid_argument("tensor product needs two factors");
      GalileiRep x = build_rep(d.parts[0]), y = build_rep(d.parts[1]);
      GalileiRep r;
      r.descriptor = d;
      r.dim = x.dim * y.dim;
      CMat Ix = CMat::identity(x.dim), Iy = CMat::identity(y.dim);
      for (int a = 0; a < 3; ++a) {
        r.S[a] = kron(x.S[a], Iy) + kron(Ix, y.S[a]);
        r.eta[a] = kron(x.eta[a], Iy) + kron(Ix, y.eta[a]);
      }
      return r;
    }
  }
  throw std::invalid_argument("bad descriptor");
}

// ---------------------------------------------------------------------------

struct IdentityCheck {
  std::string name;
  bool ok = true;
  CMat residual;
};

struct HgReport {
  std::vector<IdentityCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> f;
    for (const auto& c : checks)
      if (!c.ok) f.push_back(c.name);
    return f;
  }
};

inline HgReport verify_hg(const GalileiRep& r) {
  HgReport rep;
  const char* nm = "123";
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      int c = 3 - a - b;
      Cx f(0, levi(a, b, c));
      std::string ab = std::string(1, nm[a]) + "," + nm[b];
      IdentityCheck k1{"[S" + std::string(1, nm[a]) + ",S" + nm[b] + "]=i eps S", true,
                       commutator(r.S[a], r.S[b]) - f * r.S[c]};
      IdentityCheck k2{"[S" + std::string(1, nm[a]) + ",eta" + nm[b] + "]=i eps eta", true,
                       commutator(r.S[a], r.eta[b]) - f * r.eta[c]};
      IdentityCheck k3{"[eta" + std::string(1, nm[a]) + ",eta" + nm[b] + "]=0", true,
                       commutator(r.eta[a], r.eta[b])};
      for (auto* k : {&k1, &k2, &k3}) {
        k->ok = k->residual.is_zero();
        rep.checks.push_back(*k);
      }
      (void)ab;
    }
  return rep;
}

inline CMat eta_dot(const GalileiRep& r, const std::array<Cx, 3>& u) {
  CMat m(r.dim, r.dim);
  for (int a = 0; a < 3; ++a) m += u[a] * r.eta[a];
  return m;
}

// Smallest N with (eta.u)^N = 0; nullopt when not nilpotent within dim+1 steps.
inline std::optional<int> nilpotency_index(const GalileiRep& r, const std::array<Cx, 3>& u) {
  if (u[0].is_zero() && u[1].is_zero() && u[2].is_zero()) throw std::invalid_argument("u must be nonzero");
  CMat x = eta_dot(r, u);
  CMat p = CMat::identity(r.dim);
  for (int n = 1; n <= static_cast<int>(r.dim) + 1; ++n) {
    p = p * x;
    if (p.is_zero()) return n;
  }
  return std::nullopt;
}

// exp(i eta.v) as a finite sum
inline CMat boost_matrix(const GalileiRep& r, const std::array<Cx, 3>& v, int sign = 1) {
  CMat x = Cx(0, sign) * eta_dot(r, v);
  CMat term = CMat::identity(r.dim), sum = term;
  for (int k = 1; k <= static_cast<int>(r.dim) + 1; ++k) {
    term = Cx(make_q(1, k)) * (term * x);
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Brute-force solver for (A1)

namespace detail {

inline CMat jordan_nilpotent(const std::vector<int>& sizes) {
  int n = 0;
  for (int s : sizes) n += s;
  CMat A(n, n);
  int off = 0;
  for (int s : sizes) {
    for (int i = 1; i < s; ++i) A(off + i, off + i - 1) = 1;
    off += s;
  }
  return A;
}

inline void partitions(int n, int maxp, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, maxp); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

// Linear space of pairs (U,V) with U A = A' U, U B = B' V, V C = C' U; basis vectors
// are returned as (U, V) pairs.
inline std::vector<std::pair<CMat, CMat>> intertwiners(const ABCTriple& x, const ABCTriple& y) {
  std::size_t n = x.n, k = x.k;
  std::size_t nu = n * n, nv = k * k, nvar = nu + nv;
  std::vector<std::vector<Cx>> rows;
  auto U = [&](std::size_t i, std::size_t j) { return i * n + j; };
  auto V = [&](std::size_t i, std::size_t j) { return nu + i * k + j; };
  // (U A - A' U)_{ij}
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Cx> r(nvar, Cx(0));
      for (std::size_t l = 0; l < n; ++l) {
        r[U(i, l)] += x.A(l, j);
        r[U(l, j)] -= y.A(i, l);
      }
      rows.push_back(r);
    }
  // (U B - B' V)_{ij}
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Cx> r(nvar, Cx(0));
      for (std::size_t l = 0; l < n; ++l) r[U(i, l)] += x.B(l, j);
      for (std::size_t l = 0; l < k; ++l) r[V(l, j)] -= y.B(i, l);
      rows.push_back(r);
    }
  // (V C - C' U)_{ij}
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Cx> r(nvar, Cx(0));
      for (std::size_t l = 0; l < k; ++l) r[V(i, l)] += x.C(l, j);
      for (std::size_t l = 0; l < n; ++l) r[U(l, j)] -= y.C(i, l);
      rows.push_back(r);
    }
  CMat M(rows.size(), nvar);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < nvar; ++j) M(i, j) = rows[i][j];
  std::vector<std::pair<CMat, CMat>> out;
  for (const auto& v : nullspace(M)) {
    CMat u(n, n), w(k, k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) u(i, j) = v(U(i, j), 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) w(i, j) = v(V(i, j), 0);
    out.emplace_back(u, w);
  }
  return out;
}

inline bool invertible(const CMat& m) { return m.rows() == 0 || rank(m) == m.rows(); }

}  // namespace detail

// Equivalence under (U,V) with UA=A'U, UB=B'V, VC=C'U; a witness is searched by
// random combination of the intertwiner basis.
inline bool abc_equivalent(const ABCTriple& x, const ABCTriple& y, unsigned seed = 7) {
  if (x.n != y.n || x.k != y.k) return false;
  auto basis = detail::intertwiners(x, y);
  if (basis.empty()) return x.n == 0 && x.k == 0;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-7, 7);
  for (int trial = 0; trial < 12; ++trial) {
    CMat U(x.n, x.n), V(x.k, x.k);
    for (const auto& b : basis) {
      Cx c(d(rng));
      U += c * b.first;
      V += c * b.second;
    }
    if (detail::invertible(U) && detail::invertible(V)) return true;
  }
  return false;
}

// Indecomposable iff every element of the endomorphism algebra has a single eigenvalue.
inline bool abc_indecomposable(const ABCTriple& t, unsigned seed = 11) {
  if (t.n + t.k == 0) return false;
  auto basis = detail::intertwiners(t, t);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-9, 9);
  std::size_t N = t.n + t.k;
  for (int trial = 0; trial < 12; ++trial) {
    CMat X(N, N);
    for (const auto& b : basis) {
      Cx c(d(rng));
      X += c * direct_sum<Cx>({b.first, b.second});
    }
    Cx lam = X.trace() / Cx(static_cast<long>(N));
    CMat Y = X - CMat::scalar(N, lam);
    if (!mat_pow(Y, static_cast<int>(N)).is_zero()) return false;
  }
  return true;
}

struct AbcFamily {
  ABCTriple triple;
  std::optional<QIndex> table_row;  // matching table row, if any
  std::size_t solutions_in_class = 0;
};

// Exhaustive search with A in lower-triangular Jordan form and B, C entries in {-1,0,1}.
inline std::vector<AbcFamily> solve_abc(int n, int k) {
  if (n < 0 || k < 0 || n > 3 || k > 2) throw std::invalid_argument("solve_abc: size exceeds desk-scale bound (n<=3, k<=2)");
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  if (n == 0) parts.push_back({});
  else detail::partitions(n, n, cur, parts);
  std::vector<AbcFamily> fams;
  std::vector<ABCTriple> table;
  std::vector<QIndex> table_q;
  for (const auto& q : table1_rows())
    if (q[0] == n && q[1] == k) {
      table.push_back(table1_abc(q));
      table_q.push_back(q);
    }
  const int nb = n * k, nc = k * n;
  for (const auto& sizes : parts) {
    CMat A = n ? detail::jordan_nilpotent(sizes) : CMat(0, 0);
    // integer copy for the fast filter
    std::vector<int> Ai(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Ai[i * n + j] = A(i, j).is_zero() ? 0 : 1;
    std::vector<int> A2(n * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) A2[i * n + j] += Ai[i * n + l] * Ai[l * n + j];
    long total = 1;
    for (int t = 0; t < nb + nc; ++t) total *= 3;
    std::vector<int> Bi(nb), Ci(nc);
    for (long code = 0; code < total; ++code) {
      long c = code;
      for (int t = 0; t < nb; ++t, c /= 3) Bi[t] = static_cast<int>(c % 3) - 1;
      for (int t = 0; t < nc; ++t, c /= 3) Ci[t] = static_cast<int>(c % 3) - 1;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < k && ok; ++j) {
          int s = 0;
          for (int l = 0; l < n; ++l) s += Ai[i * n + l] * Bi[l * k + j];
          ok = s == 0;
        }
      for (int i = 0; i < k && ok; ++i)
        for (int j = 0; j < n && ok; ++j) {
          int s = 0;
          for (int l = 0; l < n; ++l) s += Ci[i * n + l] * Ai[l * n + j];
          ok = s == 0;
        }
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < n && ok; ++j) {
          int s = A2[i * n + j];
          for (int l = 0; l < k; ++l) s += Bi[i * k + l] * Ci[l * n + j];
          ok = s == 0;
        }
      if (!ok) continue;
      ABCTriple t;
      t.n = n;
      t.k = k;
      t.A = A;
      t.B = CMat(n, k);
      t.C = CMat(k, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) t.B(i, j) = Bi[i * k + j];
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) t.C(i, j) = Ci[i * n + j];
      // cheap invariants before the exact equivalence test
      bool matched = false;
      for (auto& f : fams) {
        if (rank(f.triple.B) != rank(t.B) || rank(f.triple.C) != rank(t.C) || rank(f.triple.A) != rank(t.A)) continue;
        if (abc_equivalent(t, f.triple)) {
          ++f.solutions_in_class;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      AbcFamily f;
      f.triple = t;
      f.solutions_in_class = 1;
      for (std::size_t r = 0; r < table.size(); ++r)
        if (abc_equivalent(t, table[r])) {
          f.triple = table[r];
          f.table_row = table_q[r];
          break;
        }
      fams.push_back(f);
    }
  }
  std::vector<AbcFamily> out;
  for (auto& f : fams)
    if (abc_indecomposable(f.triple)) out.push_back(f);
  return out;
}

}  // namespace galileq
