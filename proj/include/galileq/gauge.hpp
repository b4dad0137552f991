#pragma once

#include <set>

#include "io.hpp"
#include "spectral.hpp"
#include "structure.hpp"

namespace galileq {

// ---------------------------------------------------------------------------
// Field symbols

namespace field {

inline int E(int a) { return sym("E" + std::to_string(a + 1)); }
inline int H(int a) { return sym("H" + std::to_string(a + 1)); }
inline int A0() { return sym("A0"); }
// dE_ab = dE_a/dx_b, dH_ab = dH_a/dx_b
inline int dE(int a, int b) { return sym("dE" + std::to_string(a + 1) + std::to_string(b + 1)); }
inline int dH(int a, int b) { return sym("dH" + std::to_string(a + 1) + std::to_string(b + 1)); }

enum class Kind { None, E, H, A0, dE, dH };

struct Info {
  Kind kind = Kind::None;
  int a = 0, b = 0;
};

inline Info info(int s) {
  static std::map<int, Info> table = [] {
    std::map<int, Info> t;
    for (int a = 0; a < 3; ++a) {
      t[E(a)] = {Kind::E, a, 0};
      t[H(a)] = {Kind::H, a, 0};
      for (int b = 0; b < 3; ++b) {
        t[dE(a, b)] = {Kind::dE, a, b};
        t[dH(a, b)] = {Kind::dH, a, b};
      }
    }
    t[A0()] = {Kind::A0, 0, 0};
    return t;
  }();
  auto it = table.find(s);
  return it == table.end() ? Info{} : it->second;
}

inline bool is_field(int s) { return info(s).kind != Kind::None; }

}  // namespace field

// ---------------------------------------------------------------------------
// Configuration and truncation

struct NCConfig {
  // [pi_a, pi_b] = sign i e eps_abc H_c, [pi_0, pi_a] = sign i e E_a
  int commutator_sign = 1;
  // static fields: curl E = 0; always: div H = 0
  bool maxwell = true;
  // symbol -> allowed degree window; terms outside are dropped
  std::map<int, std::pair<int, int>> window;
  // symbol whose degree counts as the e grade
  int charge = sym("e");

  static NCConfig first_order_in_e() {
    NCConfig c;
    c.window[sym("e")] = {0, 1};
    return c;
  }
  static NCConfig second_order_in_e() {
    NCConfig c;
    c.window[sym("e")] = {0, 2};
    return c;
  }
};

struct TruncationLog {
  std::size_t second_derivatives = 0;
  std::size_t graded = 0;
};

// pi_0^k0 pi_1^k1 pi_2^k2 pi_3^k3
using Word = std::array<int, 4>;

inline int word_deg(const Word& w) { return w[0] + w[1] + w[2] + w[3]; }

inline std::string word_str(const Word& w) {
  std::string s;
  for (int k = 0; k < 4; ++k)
    if (w[k]) {
      if (!s.empty()) s += " ";
      s += "pi" + std::to_string(k);
      if (w[k] > 1) s += "^" + std::to_string(w[k]);
    }
  return s;
}

// Matrix-valued polynomial in the kinetic momenta, in normal form:
// sum over words of (matrix with field/parameter entries) * ordered word.
struct NCElement {
  std::size_t rows = 0, cols = 0;
  std::map<Word, PMat> terms;

  NCElement() = default;
  NCElement(std::size_t r, std::size_t c) : rows(r), cols(c) {}
  explicit NCElement(const PMat& m) : rows(m.rows()), cols(m.cols()) {
    if (!m.is_zero()) terms[Word{}] = m;
  }

  bool is_zero() const { return terms.empty(); }

  void add(const Word& w, const PMat& m) {
    if (m.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) terms.emplace(w, m);
    else {
      it->second += m;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  NCElement& operator+=(const NCElement& o) {
    check_shape(o);
    for (const auto& kv : o.terms) add(kv.first, kv.second);
    return *this;
  }
  NCElement& operator-=(const NCElement& o) {
    check_shape(o);
    for (const auto& kv : o.terms) add(kv.first, -kv.second);
    return *this;
  }
  friend NCElement operator+(NCElement a, const NCElement& b) { return a += b; }
  friend NCElement operator-(NCElement a, const NCElement& b) { return a -= b; }
  NCElement operator-() const {
    NCElement r(rows, cols);
    for (const auto& kv : terms) r.terms.emplace(kv.first, -kv.second);
    return r;
  }
  // scalars commute with everything only when they carry no fields
  friend NCElement operator*(const Poly& s, const NCElement& x) {
    for (int v : s.symbols())
      if (field::is_field(v)) throw std::invalid_argument("scalar factor carries a field; use NCAlgebra::mul");
    NCElement r(x.rows, x.cols);
    for (const auto& kv : x.terms) r.add(kv.first, s * kv.second);
    return r;
  }
  friend bool operator==(const NCElement& a, const NCElement& b) {
    return a.rows == b.rows && a.cols == b.cols && a.terms == b.terms;
  }

  // coefficient of a word
  PMat coeff(const Word& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? PMat(rows, cols) : it->second;
  }

  NCElement block(const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) const {
    NCElement out(r.size(), c.size());
    for (const auto& kv : terms) {
      PMat m(r.size(), c.size());
      for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) m(i, j) = kv.second(r[i], c[j]);
      out.add(kv.first, m);
    }
    return out;
  }

  NCElement map(const std::function<Poly(const Poly&)>& f) const {
    NCElement out(rows, cols);
    for (const auto& kv : terms) out.add(kv.first, kv.second.map(f));
    return out;
  }

  NCElement subs(const std::map<int, Poly>& vals) const {
    for (const auto& kv : vals)
      if (field::is_field(kv.first)) throw std::invalid_argument("subs on a field symbol");
    return map([&](const Poly& p) { return p.subs(vals); });
  }

  int max_deg(int v) const {
    int d = INT32_MIN;
    for (const auto& kv : terms)
      for (const auto& p : kv.second.data())
        if (!p.is_zero()) d = std::max(d, p.max_deg(v));
    return d;
  }

  // part of given degree in v
  NCElement grade(int v, int k) const {
    return map([&](const Poly& p) { return p.coeff(v, k) * Poly::var(v, k); });
  }

  std::string str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& kv : terms) {
      os << (first ? "" : " + ") << mat_str(kv.second);
      if (word_deg(kv.first)) os << " " << word_str(kv.first);
      first = false;
    }
    return os.str();
  }

  void check_shape(const NCElement& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("NCElement shape mismatch");
  }
};

class NCAlgebra {
 public:
  explicit NCAlgebra(NCConfig cfg = {}) : cfg_(std::move(cfg)) {}

  const NCConfig& config() const { return cfg_; }
  const TruncationLog& log() const { return log_; }

  // d/dx_b of a field polynomial
  Poly dx(const Poly& p, int b) {
    Poly r;
    for (int v : p.symbols()) {
      field::Info fi = field::info(v);
      if (fi.kind == field::Kind::None) continue;
      Poly dp = p.deriv(v);
      if (dp.is_zero()) continue;
      switch (fi.kind) {
        case field::Kind::E: r += dp * field_derivative(true, fi.a, b); break;
        case field::Kind::H: r += dp * field_derivative(false, fi.a, b); break;
        case field::Kind::A0: r -= dp * Poly::var(field::E(b)); break;
        default: ++log_.second_derivatives; break;
      }
    }
    return truncate(r);
  }

  // canonical first derivative symbol
  Poly field_derivative(bool electric, int a, int b) const {
    if (electric) {
      if (cfg_.maxwell && a > b) std::swap(a, b);
      return Poly::var(field::dE(a, b));
    }
    if (cfg_.maxwell && a == 2 && b == 2) return -Poly::var(field::dH(0, 0)) - Poly::var(field::dH(1, 1));
    return Poly::var(field::dH(a, b));
  }

  Poly truncate(const Poly& p) {
    if (cfg_.window.empty()) return p;
    Poly r;
    for (const auto& kv : p.terms()) {
      bool keep = true;
      for (const auto& w : cfg_.window) {
        int d = mono_exp(kv.first, w.first);
        if (d < w.second.first || d > w.second.second) keep = false;
      }
      if (keep) r.add_term(kv.first, kv.second);
      else ++log_.graded;
    }
    return r;
  }
  PMat truncate(const PMat& m) {
    return m.map([&](const Poly& p) { return truncate(p); });
  }
  NCElement truncate(const NCElement& x) {
    NCElement r(x.rows, x.cols);
    for (const auto& kv : x.terms) r.add(kv.first, truncate(kv.second));
    return r;
  }

  // [pi_i, pi_j] for i > j, as a scalar field polynomial
  Poly pi_commutator(int i, int j) const {
    Poly e = Poly::var(cfg_.charge);
    Poly ie = Poly(Cx(Rational(0), Rational(cfg_.commutator_sign))) * e;
    if (j == 0) return -(ie * Poly::var(field::E(i - 1)));  // [pi_a, pi_0] = -sign i e E_a
    Poly r;
    for (int c = 0; c < 3; ++c) {
      int s = levi(i - 1, j - 1, c);
      if (s) r += Poly(s) * ie * Poly::var(field::H(c));
    }
    return r;
  }

  NCElement mul(const NCElement& a, const NCElement& b) {
    if (a.cols != b.rows) throw std::invalid_argument("NCElement product shape mismatch");
    NCElement out(a.rows, b.cols);
    for (const auto& x : a.terms)
      for (const auto& y : b.terms) {
        std::vector<Letter> ls;
        append_word(ls, x.first);
        ls.push_back(Letter::mat(y.second));
        append_word(ls, y.first);
        push(out, x.second, std::move(ls));
      }
    return out;
  }

  NCElement commutator(const NCElement& a, const NCElement& b) { return mul(a, b) - mul(b, a); }

  // hermitian conjugate; pi's are hermitian, parameters and fields real
  NCElement dagger(const NCElement& a) {
    NCElement out(a.cols, a.rows);
    for (const auto& x : a.terms) {
      std::vector<Letter> ls;
      for (int k = 3; k >= 0; --k)
        for (int n = 0; n < x.first[k]; ++n) ls.push_back(Letter::mom(k));
      ls.push_back(Letter::mat(x.second.dagger()));
      push(out, PMat::identity(a.cols), std::move(ls));
    }
    return out;
  }

  NCElement normalize(const NCElement& a) {
    NCElement out(a.rows, a.cols);
    for (const auto& x : a.terms) out.add(x.first, truncate(x.second));
    return out;
  }

  NCElement power(const NCElement& a, int k) {
    NCElement r(PMat::identity(a.rows));
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  // sum_{k < n} a^k / k!, requiring a^n = 0 when exact is set
  NCElement exp_series(const NCElement& a, int n, bool exact = true) {
    NCElement r(PMat::identity(a.rows)), t(PMat::identity(a.rows));
    Rational fact = 1;
    for (int k = 1; k <= n; ++k) {
      t = mul(t, a);
      if (k == n) {
        if (exact && !t.is_zero()) throw std::domain_error("exp_series: generator is not nilpotent of the given order");
        break;
      }
      fact *= k;
      r += Poly(Rational(1) / fact) * t;
    }
    return r;
  }

 private:
  struct Letter {
    int pi = -1;  // 0..3 or -1 for a matrix/scalar letter
    bool scalar = false;
    Poly s;
    PMat m;
    static Letter mom(int k) {
      Letter l;
      l.pi = k;
      return l;
    }
    static Letter mat(PMat m) {
      Letter l;
      l.m = std::move(m);
      return l;
    }
    static Letter sc(Poly s) {
      Letter l;
      l.scalar = true;
      l.s = std::move(s);
      return l;
    }
  };

  static void append_word(std::vector<Letter>& ls, const Word& w) {
    for (int k = 0; k < 4; ++k)
      for (int n = 0; n < w[k]; ++n) ls.push_back(Letter::mom(k));
  }

  void push(NCElement& out, PMat C, std::vector<Letter> ls) {
    std::size_t i = 0;
    while (i < ls.size() && ls[i].pi < 0) {
      if (ls[i].scalar) C = C.map([&](const Poly& p) { return p * ls[i].s; });
      else C = C * ls[i].m;
      C = truncate(C);
      if (C.is_zero()) return;
      ++i;
    }
    for (std::size_t j = i; j + 1 < ls.size(); ++j) {
      const Letter& x = ls[j];
      const Letter& y = ls[j + 1];
      if (x.pi < 0) continue;
      if (y.pi < 0) {
        // pi_k M = M pi_k - i dM/dx_k
        std::vector<Letter> sw(ls.begin() + i, ls.end());
        std::swap(sw[j - i], sw[j - i + 1]);
        Letter d;
        if (x.pi > 0) {
          if (y.scalar) d = Letter::sc(dx(y.s, x.pi - 1).scaled(-Cx::i()));
          else d = Letter::mat(y.m.map([&](const Poly& p) { return dx(p, x.pi - 1).scaled(-Cx::i()); }));
        }
        push(out, C, std::move(sw));
        if (x.pi > 0 && !(d.scalar ? d.s.is_zero() : d.m.is_zero())) {
          std::vector<Letter> rest(ls.begin() + i, ls.begin() + j);
          rest.push_back(std::move(d));
          rest.insert(rest.end(), ls.begin() + j + 2, ls.end());
          push(out, C, std::move(rest));
        }
        return;
      }
      if (y.pi < x.pi) {
        std::vector<Letter> sw(ls.begin() + i, ls.end());
        std::swap(sw[j - i], sw[j - i + 1]);
        Poly c = pi_commutator(x.pi, y.pi);
        push(out, C, std::move(sw));
        if (!c.is_zero()) {
          std::vector<Letter> rest(ls.begin() + i, ls.begin() + j);
          rest.push_back(Letter::sc(c));
          rest.insert(rest.end(), ls.begin() + j + 2, ls.end());
          push(out, C, std::move(rest));
        }
        return;
      }
    }
    Word w{};
    for (std::size_t j = i; j < ls.size(); ++j) ++w[ls[j].pi];
    out.add(w, C);
  }

  NCConfig cfg_;
  TruncationLog log_;
};

// ---------------------------------------------------------------------------
// Building blocks

inline NCElement nc_scalar(std::size_t d, const Poly& s) { return NCElement(PMat::scalar(d, s)); }

inline NCElement nc_pi(std::size_t d, int k) {
  NCElement r(d, d);
  Word w{};
  w[k] = 1;
  r.add(w, PMat::identity(d));
  return r;
}

inline NCElement nc_matrix(const CMat& m) { return NCElement(pmat(m)); }

inline Poly e_sym() { return Poly::var("e"); }
inline Poly m_sym() { return Poly::var("m"); }

}  // namespace galileq

namespace galileq {

// Q = beta_0 pi_0 - beta_a pi_a + beta_4 m
inline NCElement minimal_coupling(const BetaSystem& bs) {
  std::size_t d = bs.dim();
  NCElement q(bs.beta[4] * PMat::scalar(d, m_sym()));
  Word w0{};
  w0[0] = 1;
  q.add(w0, bs.beta[0]);
  for (int a = 0; a < 3; ++a) {
    Word w{};
    w[a + 1] = 1;
    q.add(w, -bs.beta[1 + a]);
  }
  return q;
}

inline PMat field_dot(const std::array<CMat, 3>& m, bool electric) {
  PMat r(m[0].rows(), m[0].cols());
  for (int a = 0; a < 3; ++a) r += Poly::var(electric ? field::E(a) : field::H(a)) * pmat(m[a]);
  return r;
}

struct CouplingSpec {
  PMat Lambda;  // may carry parameters, e.g. nu beta_0 + mu eta
  Poly lambda1, lambda2;
};

// (L) is linear in Lambda, so it is checked on each parameter monomial separately.
inline bool lemma_holds(const GalileiRep& rep, const PMat& L) {
  std::set<Mono> monos;
  for (const auto& p : L.data())
    for (const auto& kv : p.terms()) monos.insert(kv.first);
  for (const auto& mo : monos) {
    CMat c(L.rows(), L.cols());
    for (std::size_t i = 0; i < L.rows(); ++i)
      for (std::size_t j = 0; j < L.cols(); ++j) {
        auto it = L(i, j).terms().find(mo);
        if (it != L(i, j).terms().end()) c(i, j) = it->second;
      }
    if (!solves_lemma(rep, c)) return false;
  }
  return true;
}

// Q + lambda1 (e/m) Lambda eta.H + lambda2 (e/m) Lambda (S.H - eta.E)
inline NCElement pauli_extend(const BetaSystem& bs, const CouplingSpec& spec) {
  if (!lemma_holds(bs.rep, spec.Lambda)) throw std::invalid_argument("pauli_extend: Lambda violates (L)");
  NCElement q = minimal_coupling(bs);
  Poly em = e_sym() * m_sym().pow(-1);
  const PMat& L = spec.Lambda;
  PMat add = (spec.lambda1 * em) * (L * field_dot(bs.rep.eta, false)) +
             (spec.lambda2 * em) * (L * (field_dot(bs.rep.S, false) - field_dot(bs.rep.eta, true)));
  q += NCElement(add);
  return q;
}

// eta.pi as an NC element
inline NCElement eta_dot_pi(const GalileiRep& rep) {
  NCElement r(rep.dim, rep.dim);
  for (int a = 0; a < 3; ++a) {
    Word w{};
    w[a + 1] = 1;
    r.add(w, pmat(rep.eta[a]));
  }
  return r;
}

struct WReduction {
  NCElement W, Wdag, Q;
  int nilpotency = 0;
};

// Q' = W^dag Q W with W = exp(-i eta.pi / m)
inline WReduction w_reduce(NCAlgebra& alg, const NCElement& q, const GalileiRep& rep) {
  std::array<Cx, 3> generic{Cx(1), Cx(2), Cx(5)};
  auto n = nilpotency_index(rep, generic);
  if (!n || *n > 3) throw std::domain_error("w_reduce: nilpotency index of eta.pi exceeds 3");
  WReduction r;
  r.nilpotency = *n;
  NCElement X = Poly(-Cx::i()) * m_sym().pow(-1) * eta_dot_pi(rep);
  r.W = alg.exp_series(X, std::max(*n, 1));
  r.Wdag = alg.dagger(r.W);
  r.Q = alg.mul(alg.mul(r.Wdag, q), r.W);
  return r;
}

}  // namespace galileq

namespace galileq {

// Leading part: word 1, e-degree 0, field free.
inline PMat leading_constant(const NCElement& x, int charge) {
  PMat m = x.coeff(Word{});
  return m.map([&](const Poly& p) {
    Poly c = p.coeff(charge, 0);
    Poly r;
    for (const auto& kv : c.terms()) {
      bool has_field = false;
      for (const auto& v : kv.first) has_field = has_field || field::is_field(v.first);
      if (!has_field) r.add_term(kv.first, kv.second);
    }
    return r;
  });
}

// Inverse of M0 + X as the series sum (-M0^-1 X)^k M0^-1; it must terminate under the grading.
inline NCElement nc_inverse(NCAlgebra& alg, const NCElement& a, int max_terms = 16) {
  if (a.rows != a.cols) throw std::invalid_argument("nc_inverse: block is not square");
  PMat M0 = leading_constant(a, alg.config().charge);
  auto inv = inverse_laurent(M0);
  if (!inv) throw std::domain_error("nc_inverse: leading block is not invertible");
  NCElement Mi(*inv);
  NCElement X = a - NCElement(M0);
  NCElement step = -alg.mul(Mi, X);
  NCElement term = Mi, sum = Mi;
  for (int k = 0; k < max_terms; ++k) {
    term = alg.mul(step, term);
    if (term.is_zero()) return sum;
    sum += term;
  }
  throw std::domain_error("nc_inverse: series does not terminate under the grading");
}

struct SchurReduction {
  NCElement effective;  // rows/cols kept
  NCElement slaving;    // slaved components = slaving * kept components
};

inline SchurReduction schur_reduce(NCAlgebra& alg, const NCElement& q, const std::vector<std::size_t>& keep_rows,
                                   const std::vector<std::size_t>& keep_cols,
                                   const std::vector<std::size_t>& slave_rows,
                                   const std::vector<std::size_t>& slave_cols) {
  NCElement Bi = nc_inverse(alg, q.block(slave_rows, slave_cols));
  SchurReduction r;
  r.slaving = -alg.mul(Bi, q.block(slave_rows, keep_cols));
  r.effective = q.block(keep_rows, keep_cols) + alg.mul(q.block(keep_rows, slave_cols), r.slaving);
  return r;
}

inline Word pi0_word() {
  Word w{};
  w[0] = 1;
  return w;
}

// Brings c (pi_0 - H) + R to the form pi_0 - H', replacing pi_0 acting on the wave function by H'
// wherever it occurs in the correction terms.
inline NCElement hamiltonian_form(NCAlgebra& alg, const NCElement& q, int max_iter = 16) {
  int charge = alg.config().charge;
  PMat c = q.coeff(pi0_word()).map([&](const Poly& p) { return p.coeff(charge, 0); });
  auto ci = inverse_laurent(c);
  if (!ci) throw std::domain_error("hamiltonian_form: pi_0 coefficient is not invertible");
  NCElement x = alg.mul(NCElement(*ci), q);
  std::size_t d = x.rows;
  NCElement p0 = nc_pi(d, 0);
  for (int it = 0; it < max_iter; ++it) {
    // H = pi_0 - x
    NCElement H = p0 - x;
    NCElement next(d, d);
    bool changed = false;
    for (const auto& kv : x.terms) {
      if (kv.first[0] == 0 || (kv.first == pi0_word() && kv.second == PMat::identity(d))) {
        next.add(kv.first, kv.second);
        continue;
      }
      PMat coef = kv.second;
      Word w = kv.first;
      if (w == pi0_word()) {
        coef -= PMat::identity(d);
        next.add(w, PMat::identity(d));
      }
      if (coef.is_zero()) continue;
      changed = true;
      Word rest = w;
      --rest[0];
      NCElement t(d, d), tr(d, d);
      t.add(w, coef);
      tr.add(rest, coef);
      // t = tr pi_0 + corr
      NCElement corr = t - alg.mul(tr, p0);
      next += alg.mul(tr, H) + corr;
    }
    x = alg.normalize(next);
    if (!changed) return p0 - x;
  }
  throw std::domain_error("hamiltonian_form: substitution does not terminate");
}

}  // namespace galileq

namespace galileq {

// ---------------------------------------------------------------------------
// Vector operators

using NCVec = std::array<NCElement, 3>;

inline NCVec nc_field(std::size_t d, bool electric) {
  NCVec v;
  for (int a = 0; a < 3; ++a) v[a] = nc_scalar(d, Poly::var(electric ? field::E(a) : field::H(a)));
  return v;
}

inline NCVec nc_pi_vec(std::size_t d) { return {nc_pi(d, 1), nc_pi(d, 2), nc_pi(d, 3)}; }

inline NCElement nc_dot(NCAlgebra& alg, const std::array<CMat, 3>& m, const NCVec& v) {
  NCElement r(m[0].rows(), v[0].cols);
  for (int a = 0; a < 3; ++a) r += alg.mul(nc_matrix(m[a]), v[a]);
  return r;
}

inline NCElement nc_dot(NCAlgebra& alg, const NCVec& u, const NCVec& v) {
  NCElement r(u[0].rows, v[0].cols);
  for (int a = 0; a < 3; ++a) r += alg.mul(u[a], v[a]);
  return r;
}

// u x v - v x u
inline NCVec nc_cross_sym(NCAlgebra& alg, const NCVec& u, const NCVec& v) {
  NCVec r;
  for (int a = 0; a < 3; ++a) {
    r[a] = NCElement(u[0].rows, v[0].cols);
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        int s = levi(a, b, c);
        if (s) r[a] += Poly(s) * (alg.mul(u[b], v[c]) - alg.mul(v[b], u[c]));
      }
  }
  return r;
}

// F = E + (1/2m)(pi x H - H x pi)
inline NCVec nc_f_vec(NCAlgebra& alg, std::size_t d) {
  NCVec E = nc_field(d, true), c = nc_cross_sym(alg, nc_pi_vec(d), nc_field(d, false));
  Poly h = Poly(make_q(1, 2)) * m_sym().pow(-1);
  NCVec F;
  for (int a = 0; a < 3; ++a) F[a] = E[a] + h * c[a];
  return F;
}

inline NCElement nc_pi_squared(NCAlgebra& alg, std::size_t d) {
  auto p = nc_pi_vec(d);
  return nc_dot(alg, p, p);
}

using Tensor2 = std::array<std::array<CMat, 3>, 3>;

// sum_ab T_ab dX_a/dx_b
inline PMat gradient_contract(NCAlgebra& alg, const Tensor2& t, bool electric) {
  PMat r(t[0][0].rows(), t[0][0].cols());
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) r += alg.field_derivative(electric, a, b) * pmat(t[a][b]);
  return r;
}

inline Poly divergence(NCAlgebra& alg, bool electric) {
  Poly r;
  for (int a = 0; a < 3; ++a) r += alg.field_derivative(electric, a, a);
  return r;
}

inline std::array<CMat, 3> spin1_set() { return {spin1(0), spin1(1), spin1(2)}; }
inline std::array<CMat, 3> pauli_set() { return {pauli(0), pauli(1), pauli(2)}; }

// Q_ab = s_a s_b + s_b s_a - (4/3) delta_ab for spin one; primed drops the trace shift.
inline Tensor2 spin_quadrupole(bool primed = false) {
  auto s = spin1_set();
  Tensor2 q;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      q[a][b] = s[a] * s[b] + s[b] * s[a];
      if (a == b && !primed) q[a][b] -= Cx(make_q(4, 3)) * CMat::identity(3);
    }
  return q;
}

// ---------------------------------------------------------------------------
// Quadrupole matrices of the transformed equation

enum class QTildeVariant { AsPrinted, Symmetric };

inline std::string variant_name(QTildeVariant v) { return v == QTildeVariant::AsPrinted ? "as-printed" : "symmetric"; }

// Qhat_ab = eta_a^dag eps_bcd beta_c eta_d + eps_bcd beta_c eta_d eta_a
inline Tensor2 q_hat(const BetaSystem& bs) {
  const auto& r = bs.rep;
  Tensor2 q;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      q[a][b] = CMat(r.dim, r.dim);
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          int s = levi(b, c, d);
          if (!s) continue;
          CMat bc = to_const(bs.beta[1 + c]);
          q[a][b] += Cx(s) * (r.eta[a].dagger() * bc * r.eta[d] + bc * r.eta[d] * r.eta[a]);
        }
    }
  return q;
}

// Qtilde_ab = (1/2)(eta_a S_b + eta_b S_a + S_b eta_a + X), X = eta_a S_b as printed or S_a eta_b
inline Tensor2 q_tilde(const GalileiRep& r, QTildeVariant v) {
  Tensor2 q;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CMat x = v == QTildeVariant::AsPrinted ? r.eta[a] * r.S[b] : r.S[a] * r.eta[b];
      q[a][b] = Cx(make_q(1, 2)) * (r.eta[a] * r.S[b] + r.eta[b] * r.S[a] + r.S[b] * r.eta[a] + x);
    }
  return q;
}

struct QuadrupoleCheck {
  bool q_hat_ok = false;
  std::map<QTildeVariant, bool> q_tilde_ok;
  QTildeVariant selected = QTildeVariant::Symmetric;
  bool tie = false;
};

// DKP blocks: Qhat_ab = diag(-3 Q_ab, 0), beta_0 Qtilde_ab = diag(Q'_ab, 0)
inline QuadrupoleCheck dkp_quadrupole_check(const BetaSystem& m4) {
  QuadrupoleCheck r;
  std::size_t d = m4.dim();
  Tensor2 Q = spin_quadrupole(false), Qp = spin_quadrupole(true), qh = q_hat(m4);
  CMat b0 = to_const(m4.beta[0]);
  r.q_hat_ok = true;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CMat w(d, d);
      w.set_block(0, 0, Cx(-3) * Q[a][b]);
      r.q_hat_ok = r.q_hat_ok && qh[a][b] == w;
    }
  for (auto v : {QTildeVariant::AsPrinted, QTildeVariant::Symmetric}) {
    Tensor2 qt = q_tilde(m4.rep, v);
    bool ok = true;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        CMat w(d, d);
        w.set_block(0, 0, Qp[a][b]);
        ok = ok && b0 * qt[a][b] == w;
      }
    r.q_tilde_ok[v] = ok;
  }
  r.tie = r.q_tilde_ok[QTildeVariant::AsPrinted] && r.q_tilde_ok[QTildeVariant::Symmetric];
  if (!r.q_tilde_ok[QTildeVariant::Symmetric] && r.q_tilde_ok[QTildeVariant::AsPrinted])
    r.selected = QTildeVariant::AsPrinted;
  return r;
}

// Expected form of W^dag Q W to first order in e:
// beta_0 pi_0 - (1/2m) beta_0 pi^2 + (e/m) beta_0 eta.F - (e/2m) (beta x eta).H + beta_4 m
// - (e/6m^2) Qhat_ab dH_a/dx_b + (e/m) Lambda [lambda1 eta.H + lambda2 (S.H - eta.F + (1/2m) Qtilde_ab dH_a/dx_b)]
inline NCElement aprox_form(NCAlgebra& alg, const BetaSystem& bs, const CouplingSpec& spec,
                            QTildeVariant v = QTildeVariant::Symmetric) {
  std::size_t d = bs.dim();
  const auto& r = bs.rep;
  Poly e = e_sym(), m = m_sym(), mi = m.pow(-1), em = e * mi;
  NCVec F = nc_f_vec(alg, d);
  NCElement B0(bs.beta[0]);
  NCElement x = alg.mul(B0, nc_pi(d, 0));
  x -= (Poly(make_q(1, 2)) * mi) * alg.mul(B0, nc_pi_squared(alg, d));
  x += em * alg.mul(B0, nc_dot(alg, r.eta, F));
  PMat bxe(d, d);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        int s = levi(a, b, c);
        if (s) bxe += Poly(s) * Poly::var(field::H(a)) * pmat(to_const(bs.beta[1 + b]) * r.eta[c]);
      }
  x -= NCElement((Poly(make_q(1, 2)) * em) * bxe);
  x += NCElement(bs.beta[4] * PMat::scalar(d, m));
  x -= NCElement((Poly(make_q(1, 6)) * e * mi * mi) * gradient_contract(alg, q_hat(bs), false));
  NCElement inner = spec.lambda1 * NCElement(field_dot(r.eta, false)) +
                    spec.lambda2 * (NCElement(field_dot(r.S, false)) - nc_dot(alg, r.eta, F) +
                                    NCElement((Poly(make_q(1, 2)) * mi) * gradient_contract(alg, q_tilde(r, v), false)));
  x += em * alg.mul(NCElement(spec.Lambda), inner);
  return alg.normalize(x);
}

// ---------------------------------------------------------------------------
// Coefficient extraction

// field monomial -> parameter coefficient
inline std::map<Mono, Poly> split_fields(const Poly& p) {
  std::map<Mono, Poly> out;
  for (const auto& kv : p.terms()) {
    Mono f, rest;
    for (const auto& v : kv.first) (field::is_field(v.first) ? f : rest).push_back(v);
    out[f] += Poly::monomial(rest, kv.second);
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

struct NamedTerm {
  std::string name;
  NCElement structure;
};

struct TermFit {
  std::vector<std::pair<std::string, Poly>> coeff;
  NCElement residual;
  bool exact() const { return residual.is_zero(); }
  Poly get(const std::string& n) const {
    for (const auto& c : coeff)
      if (c.first == n) return c.second;
    throw std::out_of_range("no fitted term " + n);
  }
};

// Writes x = sum c_k T_k + residual, with parameter (field free) coefficients c_k.
// A c_k is read off an entry that only T_k touches; terms without such an entry are solved
// together from entries where their structures have constant coefficients. The residual is exact.
inline TermFit fit_terms(NCAlgebra& alg, const NCElement& x, const std::vector<NamedTerm>& basis) {
  using Key = std::tuple<Word, std::size_t, std::size_t, Mono>;
  auto keys = [](const NCElement& y) {
    std::map<Key, Poly> k;
    for (const auto& kv : y.terms)
      for (std::size_t i = 0; i < y.rows; ++i)
        for (std::size_t j = 0; j < y.cols; ++j)
          for (auto& f : split_fields(kv.second(i, j))) k[{kv.first, i, j, f.first}] = f.second;
    return k;
  };
  std::size_t n = basis.size();
  std::vector<std::map<Key, Poly>> bk;
  for (const auto& t : basis) bk.push_back(keys(t.structure));
  auto xk = keys(x);
  std::vector<std::optional<Poly>> c(n);
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& kv : bk[k]) {
      if (kv.second.size() != 1) continue;
      bool unique = true;
      for (std::size_t o = 0; o < n && unique; ++o)
        if (o != k && bk[o].count(kv.first)) unique = false;
      if (!unique) continue;
      auto it = xk.find(kv.first);
      c[k] = it == xk.end() ? Poly() : it->second * kv.second.pow(-1);
      break;
    }
  std::vector<std::size_t> open;
  for (std::size_t k = 0; k < n; ++k)
    if (!c[k]) open.push_back(k);
  if (!open.empty()) {
    NCElement y = x;
    for (std::size_t k = 0; k < n; ++k)
      if (c[k]) y -= alg.truncate(*c[k] * basis[k].structure);
    auto yk = keys(alg.normalize(y));
    std::vector<std::vector<Cx>> rows;
    std::vector<Poly> rhs;
    std::set<Key> all;
    for (auto k : open)
      for (const auto& kv : bk[k]) all.insert(kv.first);
    std::size_t rk = 0;
    for (const auto& key : all) {
      std::vector<Cx> row;
      bool constant = true;
      for (auto k : open) {
        auto it = bk[k].find(key);
        if (it == bk[k].end()) row.push_back(Cx(0));
        else if (it->second.symbols().empty()) row.push_back(it->second.const_value());
        else constant = false;
      }
      if (!constant) continue;
      CMat trial(rows.size() + 1, open.size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t j = 0; j < open.size(); ++j) trial(r, j) = rows[r][j];
      for (std::size_t j = 0; j < open.size(); ++j) trial(rows.size(), j) = row[j];
      if (rank(trial) == rk) continue;
      ++rk;
      rows.push_back(row);
      auto it = yk.find(key);
      rhs.push_back(it == yk.end() ? Poly() : it->second);
      if (rk == open.size()) break;
    }
    if (rk < open.size()) throw std::invalid_argument("fit_terms: structures are not separable: " + basis[open[0]].name);
    CMat A(rk, rk);
    for (std::size_t r = 0; r < rk; ++r)
      for (std::size_t j = 0; j < rk; ++j) A(r, j) = rows[r][j];
    CMat Ai = *inverse(A);
    for (std::size_t j = 0; j < rk; ++j) {
      Poly v;
      for (std::size_t r = 0; r < rk; ++r) v += rhs[r].scaled(Ai(j, r));
      c[open[j]] = v;
    }
  }
  TermFit fit;
  NCElement rest = x;
  for (std::size_t k = 0; k < n; ++k) {
    fit.coeff.emplace_back(basis[k].name, *c[k]);
    rest -= alg.truncate(*c[k] * basis[k].structure);
  }
  fit.residual = alg.normalize(rest);
  return fit;
}

// part of x whose monomials contain one of the given field kinds
inline NCElement field_part(const NCElement& x, std::initializer_list<field::Kind> kinds) {
  return x.map([&](const Poly& p) {
    Poly r;
    for (const auto& kv : p.terms()) {
      bool hit = false;
      for (const auto& v : kv.first)
        for (auto k : kinds) hit = hit || field::info(v.first).kind == k;
      if (hit) r.add_term(kv.first, kv.second);
    }
    return r;
  });
}

inline NCElement electric_part(const NCElement& x) { return field_part(x, {field::Kind::E, field::Kind::dE}); }

// ---------------------------------------------------------------------------
// Truncated conjugation

// sum_{k <= order} ad_A^k(h) / k!
inline NCElement bch_expand(NCAlgebra& alg, const NCElement& h, const NCElement& A, int order = 2) {
  if (order < 0 || order > 2) throw std::invalid_argument("bch_expand: order must be 0, 1 or 2");
  NCElement r = h, t = h;
  Rational f = 1;
  for (int k = 1; k <= order; ++k) {
    t = alg.commutator(A, t);
    f /= k;
    r += Poly(f) * t;
  }
  return alg.normalize(r);
}

// ---------------------------------------------------------------------------
// JSON term lists

inline json nc_json(const NCElement& x) {
  json terms = json::array();
  for (const auto& kv : x.terms) {
    std::map<Mono, PMat> by_field;
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t j = 0; j < x.cols; ++j)
        for (auto& f : split_fields(kv.second(i, j))) {
          auto it = by_field.try_emplace(f.first, x.rows, x.cols).first;
          it->second(i, j) = f.second;
        }
    for (const auto& f : by_field) {
      json t;
      t["pi"] = word_str(kv.first).empty() ? "1" : word_str(kv.first);
      t["field"] = f.first.empty() ? "1" : mono_str(f.first);
      t["matrix"] = matrix_json(f.second);
      terms.push_back(t);
    }
  }
  json j;
  j["rows"] = x.rows;
  j["cols"] = x.cols;
  j["terms"] = terms;
  return j;
}

inline json fit_json(const TermFit& f) {
  json j = json::object();
  for (const auto& c : f.coeff) j["coefficients"][c.first] = c.second.str();
  j["exact"] = f.exact();
  if (!f.exact()) j["residual"] = nc_json(f.residual);
  return j;
}

}  // namespace galileq

namespace galileq {

// ---------------------------------------------------------------------------
// Levy-Leblond reduction

// hermitizing matrix of the Levy-Leblond system
inline CMat ll_eta() {
  CMat I = CMat::identity(2), Z(2, 2);
  return blocks<Cx>({{Z, Cx(0, -1) * I}, {Cx::i() * I, Z}});
}

inline std::vector<NamedTerm> pauli_basis(NCAlgebra& alg) {
  auto sg = pauli_set();
  NCVec H = nc_field(2, false);
  return {{"pi0", nc_pi(2, 0)},
          {"pi^2", nc_pi_squared(alg, 2)},
          {"sigma.H", NCElement(field_dot(sg, false))},
          {"sigma.F", nc_dot(alg, sg, nc_f_vec(alg, 2))},
          {"H^2", nc_dot(alg, H, H)}};
}

struct PauliReduction {
  NCElement transformed;  // W^dag Q W
  NCElement op;           // equation for phi_1
  NCElement slaving;      // phi_2 = slaving phi_1
  TermFit fit, slaving_fit;
  Poly g_spin_half;  // coupling g (e/2m) s.H with s = sigma/2
  Poly g_literal;    // coupling (e g/2m) sigma.H
  Poly lambda3;      // coupling -(e lambda3/2m) sigma.F
};

// Lambda = nu beta_0 + mu eta; lambda1 = lambda2 = 0 is the minimal coupling.
inline PauliReduction reduce_levy_leblond(NCAlgebra& alg, const Poly& nu, const Poly& mu, const Poly& l1,
                                          const Poly& l2) {
  auto ll = catalog::levy_leblond();
  CouplingSpec spec{nu * ll.beta[0] + mu * pmat(ll_eta()), l1, l2};
  auto w = w_reduce(alg, pauli_extend(ll, spec), ll.rep);
  auto s = schur_reduce(alg, w.Q, {0, 1}, {0, 1}, {2, 3}, {2, 3});
  PauliReduction r;
  r.transformed = w.Q;
  r.op = s.effective;
  r.slaving = s.slaving;
  r.fit = fit_terms(alg, r.op, pauli_basis(alg));
  r.slaving_fit = fit_terms(alg, r.slaving, {{"sigma.H", NCElement(field_dot(pauli_set(), false))}});
  Poly k = m_sym() * e_sym().pow(-1);
  Poly c = r.fit.get("sigma.H");
  r.g_spin_half = Poly(4) * k * c;
  r.g_literal = Poly(2) * k * c;
  r.lambda3 = Poly(-2) * k * r.fit.get("sigma.F");
  return r;
}

// ---------------------------------------------------------------------------
// Duffin-Kemmer reduction

inline std::vector<NamedTerm> dkp_basis(NCAlgebra& alg) {
  auto s = spin1_set();
  NCVec H = nc_field(3, false);
  NCElement sH(field_dot(s, false));
  return {{"1", NCElement(PMat::identity(3))},
          {"pi^2", nc_pi_squared(alg, 3)},
          {"s.H", sH},
          {"s.E", NCElement(field_dot(s, true))},
          {"s.(pi x H - H x pi)", nc_dot(alg, s, nc_cross_sym(alg, nc_pi_vec(3), H))},
          {"Q.dH", NCElement(gradient_contract(alg, spin_quadrupole(), false))},
          {"H^2", nc_dot(alg, H, H)},
          {"(s.H)^2", alg.mul(sH, sH)}};
}

// Hamiltonian of the printed Pauli-type equation, without e A_0:
// nu^2 m/2 + pi^2/2m - (g e/2m) s.H + (q e/nu m) s.E - (q e/2 nu m^2) s.(pi x H - H x pi)
// + (e/2 nu m^2)(2 - q) Q.dH + (e^2/2 nu^2 m^3)(H^2 - (s.H)^2)
inline NCElement dkp_hamiltonian_printed(NCAlgebra& alg, const Poly& nu, const Poly& l1, const Poly& l2) {
  auto b = dkp_basis(alg);
  Poly e = e_sym(), m = m_sym(), mi = m.pow(-1), ni = nu.pow(-1);
  Poly g = Poly(1) + Poly(2) * l1 + Poly(2) * l2, q = Poly(1) - l2;
  std::vector<Poly> c{Poly(make_q(1, 2)) * nu * nu * m,
                      Poly(make_q(1, 2)) * mi,
                      -(Poly(make_q(1, 2)) * g * e * mi),
                      q * e * ni * mi,
                      -(Poly(make_q(1, 2)) * q * e * ni * mi * mi),
                      Poly(make_q(1, 2)) * e * ni * mi * mi * (Poly(2) - q),
                      Poly(make_q(1, 2)) * e * e * ni * ni * mi * mi * mi,
                      -(Poly(make_q(1, 2)) * e * e * ni * ni * mi * mi * mi)};
  NCElement h(3, 3);
  for (std::size_t k = 0; k < b.size(); ++k) h += alg.truncate(c[k] * b[k].structure);
  return alg.normalize(h);
}

struct DkpReduction {
  NCElement transformed;
  NCElement hamiltonian;  // H - e A_0 acting on psi_1
  NCElement slaving;      // (psi_2, psi_3, phi) = slaving psi_1
  TermFit fit;
  // readings of the fitted coefficients in the printed normalization
  Poly rest, g, q_electric, q_cross, two_minus_q, quadratic;
};

// psi_1 = components 0-2, psi_2 = 3-5, psi_3 = 6-8, phi = 9; Lambda = beta_0.
inline DkpReduction reduce_dkp(NCAlgebra& alg, const Poly& nu, const Poly& l1, const Poly& l2) {
  auto m4 = catalog::m4(nu);
  CouplingSpec spec{m4.beta[0], l1, l2};
  auto w = w_reduce(alg, pauli_extend(m4, spec), m4.rep);
  auto s = schur_reduce(alg, w.Q, {3, 4, 5}, {0, 1, 2}, {6, 7, 8, 0, 1, 2, 9}, {3, 4, 5, 6, 7, 8, 9});
  DkpReduction r;
  r.transformed = w.Q;
  r.slaving = s.slaving;
  r.hamiltonian = hamiltonian_form(alg, s.effective);
  r.fit = fit_terms(alg, r.hamiltonian, dkp_basis(alg));
  Poly e = e_sym(), m = m_sym(), ei = e.pow(-1);
  r.rest = r.fit.get("1");
  r.g = Poly(-2) * m * ei * r.fit.get("s.H");
  r.q_electric = nu * m * ei * r.fit.get("s.E");
  r.q_cross = Poly(-2) * nu * m * m * ei * r.fit.get("s.(pi x H - H x pi)");
  r.two_minus_q = Poly(2) * nu * m * m * ei * r.fit.get("Q.dH");
  r.quadratic = r.fit.get("H^2");
  return r;
}

// ---------------------------------------------------------------------------
// Spin-orbit and Darwin terms

inline NCElement spin_orbit_structure(NCAlgebra& alg, const std::array<CMat, 3>& s) {
  std::size_t d = s[0].rows();
  return nc_dot(alg, s, nc_cross_sym(alg, nc_pi_vec(d), nc_field(d, true)));
}

// pi_0 - pi^2/2m - (e lambda3/2m) sigma.F - (lambda3^2 e^2/8m^3) H^2
inline NCElement paulik_operator(NCAlgebra& alg, const Poly& lambda3) {
  Poly e = e_sym(), mi = m_sym().pow(-1);
  NCVec H = nc_field(2, false);
  NCElement x = nc_pi(2, 0) - (Poly(make_q(1, 2)) * mi) * nc_pi_squared(alg, 2) -
                (Poly(make_q(1, 2)) * e * lambda3 * mi) * nc_dot(alg, pauli_set(), nc_f_vec(alg, 2)) -
                (Poly(make_q(1, 8)) * lambda3 * lambda3 * e * e * mi * mi * mi) * nc_dot(alg, H, H);
  return alg.normalize(x);
}

struct SpinOrbitReport {
  NCElement transformed;
  NCElement electric;        // field-E part of the transformed operator
  bool first_order_cancels;  // no electric term linear in the expansion parameter
  TermFit fit;               // electric part against spin-orbit, Darwin (and quadrupole) structures
  std::size_t magnetic_terms = 0;  // other generated terms
};

// L' = U L U^-1 with U = exp(-i g lambda3 sigma.pi/2m), g = generator_sign; second order in lambda3, first in e.
inline SpinOrbitReport spin_orbit_ll(NCAlgebra& alg, int generator_sign = 1) {
  Poly l3 = Poly::var("lambda3"), mi = m_sym().pow(-1);
  NCElement L = paulik_operator(alg, l3);
  NCElement A = Poly(Cx(Rational(0), Rational(-generator_sign))) * (Poly(make_q(1, 2)) * l3 * mi) *
                nc_dot(alg, pauli_set(), nc_pi_vec(2));
  SpinOrbitReport r;
  r.transformed = bch_expand(alg, L, A, 2);
  r.electric = electric_part(r.transformed);
  r.first_order_cancels = r.electric.grade(sym("lambda3"), 1).is_zero();
  r.fit = fit_terms(alg, r.electric,
                    {{"s.(pi x E - E x pi)", spin_orbit_structure(alg, pauli_set())},
                     {"div E", nc_scalar(2, divergence(alg, true))}});
  NCElement rest = r.transformed - r.electric - (L - electric_part(L));
  for (const auto& kv : rest.terms)
    for (const auto& p : kv.second.data()) r.magnetic_terms += p.size();
  return r;
}

// L' = U (pi_0 - H) U^-1 with U = exp(-2 i g s.pi/(nu m)); second order in 1/nu, first in e.
inline SpinOrbitReport spin_orbit_dkp(NCAlgebra& alg, const NCElement& H, const Poly& nu, int generator_sign = 1) {
  Poly mi = m_sym().pow(-1);
  auto s = spin1_set();
  NCElement L = nc_pi(3, 0) - H;
  NCElement A = Poly(Cx(Rational(0), Rational(-2 * generator_sign))) * nu.pow(-1) * mi * nc_dot(alg, s, nc_pi_vec(3));
  SpinOrbitReport r;
  r.transformed = bch_expand(alg, L, A, 2);
  r.electric = electric_part(r.transformed);
  int v = nu.symbols().empty() ? -1 : nu.symbols()[0];
  r.first_order_cancels = v < 0 || r.electric.grade(v, -1).is_zero();
  r.fit = fit_terms(alg, r.electric,
                    {{"s.(pi x E - E x pi)", spin_orbit_structure(alg, s)},
                     {"div E", nc_scalar(3, divergence(alg, true))},
                     {"Q.dE", NCElement(gradient_contract(alg, spin_quadrupole(), true))}});
  NCElement rest = r.transformed - r.electric - (L - electric_part(L));
  for (const auto& kv : rest.terms)
    for (const auto& p : kv.second.data()) r.magnetic_terms += p.size();
  return r;
}

}  // namespace galileq

namespace galileq {

// ---------------------------------------------------------------------------
// Galilean Proca system in an external field

inline CMat k_dagger(int a) { return kvec(a).dagger(); }

// 4x4 matrices S_a = diag(s_a, 0), K_a = [[0, k_a^dag], [k_a, 0]], Khat_a = [[0, k_a^dag], [-k_a, 0]]
struct ProcaMatrices {
  std::array<CMat, 3> S, K, Khat;
};

inline ProcaMatrices proca_matrices() {
  ProcaMatrices p;
  for (int a = 0; a < 3; ++a) {
    p.S[a] = CMat(4, 4);
    p.S[a].set_block(0, 0, spin1(a));
    p.K[a] = CMat(4, 4);
    p.K[a].set_block(0, 3, k_dagger(a));
    p.K[a].set_block(3, 0, kvec(a));
    p.Khat[a] = CMat(4, 4);
    p.Khat[a].set_block(0, 3, k_dagger(a));
    p.Khat[a].set_block(3, 0, Cx(-1) * kvec(a));
  }
  return p;
}

// [S_a,S_b] = i eps S_c, [S_a,K_b] = i eps K_c, [K_a,K_b] = sig i eps S_c; sig = +1 gives so(4), -1 so(1,3)
inline CheckReport rotation_boost_closure(const std::array<CMat, 3>& S, const std::array<CMat, 3>& K, int sig) {
  CheckReport r;
  const char* nm = "123";
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CMat ss(4, 4), sk(4, 4), kk(4, 4);
      for (int c = 0; c < 3; ++c) {
        int e = levi(a, b, c);
        if (!e) continue;
        ss += Cx(0, e) * S[c];
        sk += Cx(0, e) * K[c];
        kk += Cx(0, sig * e) * S[c];
      }
      std::string ab = std::string(1, nm[a]) + nm[b];
      r.add("[S,S]" + ab, pmat(commutator(S[a], S[b]) - ss));
      r.add("[S,K]" + ab, pmat(commutator(S[a], K[b]) - sk));
      r.add("[K,K]" + ab, pmat(commutator(K[a], K[b]) - kk));
    }
  return r;
}

// Reduced two-block system for (Psi, Psi^4), Psi = (Psi^1, Psi^2, Psi^3):
// (pi_0 - pi^2/2m + (1+2mu)(e/2m) s.H - nu m/2) Psi + (e/2m)(1-mu) k^dag.F Psi^4 = 0
// (nu (pi_0 - pi^2/2m) + (lambda - nu^2) m/2) Psi^4 - (e/2m)(1-mu) k.F Psi = 0
inline NCElement proca_reduced_system(NCAlgebra& alg, const Poly& mu, const Poly& nu, const Poly& lambda) {
  Poly e = e_sym(), m = m_sym(), mi = m.pow(-1);
  NCVec F1 = nc_f_vec(alg, 1), F3 = nc_f_vec(alg, 3);
  std::array<CMat, 3> kd, k;
  for (int a = 0; a < 3; ++a) {
    kd[a] = k_dagger(a);
    k[a] = kvec(a);
  }
  NCElement free3 = nc_pi(3, 0) - (Poly(make_q(1, 2)) * mi) * nc_pi_squared(alg, 3);
  NCElement free1 = nc_pi(1, 0) - (Poly(make_q(1, 2)) * mi) * nc_pi_squared(alg, 1);
  NCElement a11 = free3 + NCElement((Poly(make_q(1, 2)) * (Poly(1) + Poly(2) * mu) * e * mi) *
                                    field_dot(spin1_set(), false)) -
                  nc_scalar(3, Poly(make_q(1, 2)) * nu * m);
  Poly c = Poly(make_q(1, 2)) * e * mi * (Poly(1) - mu);
  NCElement a12 = c * nc_dot(alg, kd, F1);
  NCElement a21 = -(c * nc_dot(alg, k, F3));
  NCElement a22 = nu * free1 + nc_scalar(1, Poly(make_q(1, 2)) * (lambda - nu * nu) * m);
  NCElement out(4, 4);
  auto place = [&](const NCElement& b, std::size_t r0, std::size_t c0) {
    for (const auto& kv : b.terms) {
      PMat mm(4, 4);
      mm.set_block(r0, c0, kv.second);
      out.add(kv.first, mm);
    }
  };
  place(a11, 0, 0);
  place(a12, 0, 3);
  place(a21, 3, 0);
  place(a22, 3, 3);
  return alg.normalize(out);
}

struct ProcaGaugeReport {
  NCElement system;
  NCElement op;                      // equation for Psi (nu = 0) or Hamiltonian (nu != 0)
  std::optional<NCElement> slaving;  // Psi^4 = slaving Psi when nu = 0
  TermFit fit;
  Poly g;                    // -(g e/2m) S.H in the Hamiltonian, or (g e/2m) s.H in the equation
  Poly quadratic;            // coefficient of F^2 - (s.F)^2 (nu = 0)
  Poly boost_coupling;       // coefficient of K.F or Khat.F (nu != 0)
  std::optional<bool> hermitian;  // standard pairing for nu = -1, metric M = diag(1,1,1,-1) for nu = 1
  ProcaMatrices matrices;
  CheckReport so4, so13;
};

inline ProcaGaugeReport proca_gauge_reduce(NCAlgebra& alg, const Poly& mu, const Rational& nu, const Poly& lambda) {
  if (sgn(nu) != 0 && !lambda.is_zero()) throw std::invalid_argument("proca_gauge_reduce: lambda nu must vanish");
  if (sgn(nu) == 0 && lambda.is_zero()) throw std::invalid_argument("proca_gauge_reduce: nu^2 + lambda^2 must not vanish");
  ProcaGaugeReport r;
  r.matrices = proca_matrices();
  r.so4 = rotation_boost_closure(r.matrices.S, r.matrices.K, 1);
  r.so13 = rotation_boost_closure(r.matrices.S, r.matrices.Khat, -1);
  r.system = proca_reduced_system(alg, mu, Poly(nu), lambda);
  Poly e = e_sym(), m = m_sym(), ei = e.pow(-1);
  auto s = spin1_set();
  if (sgn(nu) == 0) {
    auto sc = schur_reduce(alg, r.system, {0, 1, 2}, {0, 1, 2}, {3}, {3});
    r.op = sc.effective;
    r.slaving = sc.slaving;
    // ordered as sum (delta_ab - s_b s_a) F_a F_b, the product order produced by k^dag.F k.F
    NCVec F = nc_f_vec(alg, 3);
    NCElement q = nc_dot(alg, F, F);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) q -= alg.mul(nc_matrix(s[b] * s[a]), alg.mul(F[a], F[b]));
    r.fit = fit_terms(alg, r.op,
                      {{"pi0", nc_pi(3, 0)},
                       {"pi^2", nc_pi_squared(alg, 3)},
                       {"s.H", NCElement(field_dot(s, false))},
                       {"F^2 - (s.F)^2", q}});
    r.g = Poly(2) * m * ei * r.fit.get("s.H");
    r.quadratic = r.fit.get("F^2 - (s.F)^2");
    return r;
  }
  r.op = hamiltonian_form(alg, r.system);
  const auto& K = nu > 0 ? r.matrices.Khat : r.matrices.K;
  NCVec F = nc_f_vec(alg, 4);
  r.fit = fit_terms(alg, r.op,
                    {{"1", NCElement(PMat::identity(4))},
                     {"pi^2", nc_pi_squared(alg, 4)},
                     {"S.H", NCElement(field_dot(r.matrices.S, false))},
                     {nu > 0 ? "Khat.F" : "K.F", nc_dot(alg, K, F)}});
  r.g = Poly(-2) * m * ei * r.fit.get("S.H");
  r.boost_coupling = r.fit.get(nu > 0 ? "Khat.F" : "K.F");
  NCElement hd = alg.dagger(r.op);
  if (nu == -1) r.hermitian = hd == r.op;
  if (nu == 1) {
    CMat M = CMat::identity(4);
    M(3, 3) = Cx(-1);
    NCElement Mn = nc_matrix(M);
    r.hermitian = alg.mul(alg.mul(Mn, hd), Mn) == r.op;
  }
  return r;
}

}  // namespace galileq
