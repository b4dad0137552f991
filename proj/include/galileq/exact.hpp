#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace galileq {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string q_str(const Rational& q) { return q.get_str(); }

// Gaussian rational re + im*i.
class Cx {
 public:
  Rational re, im;

  Cx() = default;
  Cx(long v) : re(v), im(0) {}
  Cx(int v) : re(v), im(0) {}
  Cx(const Rational& r) : re(r), im(0) {}
  Cx(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Cx i() { return Cx(0, 1); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  Cx conj() const { return Cx(re, -im); }
  Rational norm2() const { return re * re + im * im; }

  Cx operator-() const { return Cx(-re, -im); }
  Cx& operator+=(const Cx& o) { re += o.re; im += o.im; return *this; }
  Cx& operator-=(const Cx& o) { re -= o.re; im -= o.im; return *this; }
  Cx& operator*=(const Cx& o) {
    Rational r = re * o.re - im * o.im;
    Rational j = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(j);
    return *this;
  }
  Cx& operator/=(const Cx& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    Rational d = o.norm2();
    Rational r = (re * o.re + im * o.im) / d;
    Rational j = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(j);
    return *this;
  }
  friend Cx operator+(Cx a, const Cx& b) { return a += b; }
  friend Cx operator-(Cx a, const Cx& b) { return a -= b; }
  friend Cx operator*(Cx a, const Cx& b) { return a *= b; }
  friend Cx operator/(Cx a, const Cx& b) { return a /= b; }
  friend bool operator==(const Cx& a, const Cx& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Cx& a, const Cx& b) { return !(a == b); }
  friend bool operator<(const Cx& a, const Cx& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }

  // "a/b", "c/d*i", "a/b+c/d*i"
  std::string str() const {
    if (sgn(im) == 0) return re.get_str();
    std::string s;
    if (sgn(re) != 0) s = re.get_str();
    if (sgn(im) > 0 && !s.empty()) s += "+";
    if (im == 1) s += "i";
    else if (im == -1) s += "-i";
    else s += im.get_str() + "*i";
    return s;
  }

  static Cx parse(const std::string& text);
};

inline Cx conj(const Cx& c) { return c.conj(); }

namespace detail {

inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

}  // namespace detail

inline Cx Cx::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  if (s.empty()) throw std::invalid_argument("empty complex");
  if (s.back() != 'i') return Cx(detail::parse_rational(s[0] == '+' ? s.substr(1) : s));
  s.pop_back();
  if (!s.empty() && s.back() == '*') s.pop_back();
  // split at the last sign that is not leading and not after '/'
  std::size_t cut = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      cut = k;
      break;
    }
  }
  std::string rp = cut == std::string::npos ? "" : s.substr(0, cut);
  std::string ip = cut == std::string::npos ? s : s.substr(cut);
  if (!ip.empty() && ip[0] == '+') ip = ip.substr(1);
  Rational im;
  if (ip.empty()) im = 1;
  else if (ip == "-") im = -1;
  else im = detail::parse_rational(ip);
  Rational re = rp.empty() ? Rational(0) : detail::parse_rational(rp[0] == '+' ? rp.substr(1) : rp);
  return Cx(re, im);
}

// ---------------------------------------------------------------------------
// Symbols

class Symbols {
 public:
  static Symbols& instance() {
    static Symbols s;
    return s;
  }
  int id(const std::string& name) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    int k = static_cast<int>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, k);
    return k;
  }
  std::string name(int k) {
    std::lock_guard<std::mutex> lock(mu_);
    return names_.at(static_cast<std::size_t>(k));
  }

 private:
  Symbols() {
    for (const char* n : {"p0", "p1", "p2", "p3", "m", "x", "eps", "eps_c", "mu", "nu", "sigma",
                          "alpha", "lambda", "omega", "kappa", "e", "l1", "l2", "l3"})
      id(n);
  }
  std::mutex mu_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

inline int sym(const std::string& name) { return Symbols::instance().id(name); }
inline std::string sym_name(int k) { return Symbols::instance().name(k); }

// Monomial: sorted (symbol id, exponent) pairs, exponents nonzero, may be negative.
using Mono = std::vector<std::pair<int, int>>;

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
    else {
      int e = a[i].second + b[j].second;
      if (e != 0) r.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return r;
}

inline Mono mono_inv(const Mono& a) {
  Mono r = a;
  for (auto& p : r) p.second = -p.second;
  return r;
}

inline int mono_exp(const Mono& a, int v) {
  for (const auto& p : a)
    if (p.first == v) return p.second;
  return 0;
}

// lex order, smaller symbol id more significant
inline int mono_lex(const Mono& a, const Mono& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int va = i < a.size() ? a[i].first : INT32_MAX;
    int vb = j < b.size() ? b[j].first : INT32_MAX;
    int v = std::min(va, vb);
    int ea = va == v ? a[i].second : 0;
    int eb = vb == v ? b[j].second : 0;
    if (ea != eb) return ea < eb ? -1 : 1;
    if (va == v) ++i;
    if (vb == v) ++j;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Laurent polynomial with Gaussian-rational coefficients.

class Poly {
 public:
  using Terms = std::map<Mono, Cx>;

  Poly() = default;
  Poly(int c) { add_term({}, Cx(c)); }
  Poly(long c) { add_term({}, Cx(c)); }
  Poly(const Rational& c) { add_term({}, Cx(c)); }
  Poly(const Cx& c) { add_term({}, c); }

  static Poly var(const std::string& name, int e = 1) { return var(sym(name), e); }
  static Poly var(int id, int e = 1) {
    Poly p;
    if (e == 0) p.add_term({}, Cx(1));
    else p.add_term({{id, e}}, Cx(1));
    return p;
  }
  static Poly monomial(const Mono& m, const Cx& c) {
    Poly p;
    p.add_term(m, c);
    return p;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_const() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
  Cx const_value() const {
    auto it = t_.find(Mono{});
    return it == t_.end() ? Cx(0) : it->second;
  }
  std::size_t size() const { return t_.size(); }

  void add_term(const Mono& m, const Cx& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) t_.emplace(m, c);
    else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& kv : r.t_) kv.second = -kv.second;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    for (const auto& kv : o.t_) add_term(kv.first, kv.second);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& kv : o.t_) add_term(kv.first, -kv.second);
    return *this;
  }
  Poly& operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& x : a.t_)
      for (const auto& y : b.t_) r.add_term(mono_mul(x.first, y.first), x.second * y.second);
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly scaled(const Cx& c) const {
    Poly r;
    if (c.is_zero()) return r;
    for (const auto& kv : t_) r.t_.emplace(kv.first, kv.second * c);
    return r;
  }
  Poly conj() const {
    Poly r;
    for (const auto& kv : t_) r.t_.emplace(kv.first, kv.second.conj());
    return r;
  }

  Poly pow(int k) const {
    if (k < 0) {
      if (t_.size() != 1) throw std::domain_error("negative power of non-monomial");
      const auto& kv = *t_.begin();
      Mono m = mono_inv(kv.first);
      Cx c = Cx(1) / kv.second;
      Poly r = Poly::monomial(m, c);
      return r.pow(-k);
    }
    Poly r(1), b = *this;
    while (k > 0) {
      if (k & 1) r = r * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return r;
  }

  int max_deg(int v) const {
    int d = INT32_MIN;
    for (const auto& kv : t_) d = std::max(d, mono_exp(kv.first, v));
    return t_.empty() ? INT32_MIN : d;
  }
  int min_deg(int v) const {
    int d = INT32_MAX;
    for (const auto& kv : t_) d = std::min(d, mono_exp(kv.first, v));
    return t_.empty() ? INT32_MAX : d;
  }
  bool has(int v) const {
    for (const auto& kv : t_)
      if (mono_exp(kv.first, v) != 0) return true;
    return false;
  }
  std::vector<int> symbols() const {
    std::vector<int> r;
    for (const auto& kv : t_)
      for (const auto& p : kv.first) r.push_back(p.first);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  }

  // coefficient of v^k (as polynomial in the remaining symbols)
  Poly coeff(int v, int k) const {
    Poly r;
    for (const auto& kv : t_) {
      if (mono_exp(kv.first, v) != k) continue;
      Mono m;
      for (const auto& p : kv.first)
        if (p.first != v) m.push_back(p);
      r.add_term(m, kv.second);
    }
    return r;
  }

  Poly subs(int v, const Poly& val) const {
    Poly r;
    std::map<int, Poly> cache;
    for (const auto& kv : t_) {
      int e = mono_exp(kv.first, v);
      Mono m;
      for (const auto& p : kv.first)
        if (p.first != v) m.push_back(p);
      Poly term = Poly::monomial(m, kv.second);
      if (e != 0) {
        auto it = cache.find(e);
        if (it == cache.end()) it = cache.emplace(e, val.pow(e)).first;
        term = term * it->second;
      }
      r += term;
    }
    return r;
  }
  Poly subs(const std::string& v, const Poly& val) const { return subs(sym(v), val); }
  Poly subs(const std::map<int, Poly>& vals) const {
    Poly r = *this;
    for (const auto& kv : vals) r = r.subs(kv.first, kv.second);
    return r;
  }

  Poly deriv(int v) const {
    Poly r;
    for (const auto& kv : t_) {
      int e = mono_exp(kv.first, v);
      if (e == 0) continue;
      Mono m;
      for (const auto& p : kv.first) {
        if (p.first != v) m.push_back(p);
        else if (p.second != 1) m.emplace_back(v, p.second - 1);
      }
      r.add_term(m, kv.second * Cx(e));
    }
    return r;
  }

  // leading term under mono_lex
  std::pair<Mono, Cx> lead() const {
    if (t_.empty()) throw std::domain_error("lead of zero polynomial");
    auto best = t_.begin();
    for (auto it = t_.begin(); it != t_.end(); ++it)
      if (mono_lex(it->first, best->first) > 0) best = it;
    return *best;
  }

  std::string str() const;

 private:
  Terms t_;
};

inline Poly conj(const Poly& p) { return p.conj(); }

namespace detail {

// Multiplies a and b by a common monomial so that all exponents are nonnegative.
inline Mono clearing_monomial(const Poly& a, const Poly& b) {
  std::map<int, int> low;
  for (const Poly* p : {&a, &b})
    for (const auto& kv : p->terms())
      for (const auto& e : kv.first) {
        auto it = low.find(e.first);
        if (it == low.end()) low[e.first] = e.second;
        else it->second = std::min(it->second, e.second);
      }
  Mono m;
  for (const auto& kv : low)
    if (kv.second < 0) m.emplace_back(kv.first, -kv.second);
  return m;
}

}  // namespace detail

// Exact division; throws if b does not divide a.
inline Poly div_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return Poly();
  if (b.size() == 1) {
    const auto& kv = *b.terms().begin();
    return a * Poly::monomial(mono_inv(kv.first), Cx(1) / kv.second);
  }
  Mono shift = detail::clearing_monomial(a, b);
  Poly s = Poly::monomial(shift, Cx(1));
  Poly r = a * s, d = b * s;
  auto ld = d.lead();
  Poly q;
  std::size_t guard = 0;
  while (!r.is_zero()) {
    if (++guard > 1000000) throw std::runtime_error("division did not terminate");
    auto lr = r.lead();
    Mono qm = mono_mul(lr.first, mono_inv(ld.first));
    for (const auto& e : qm)
      if (e.second < 0) throw std::domain_error("inexact polynomial division");
    Poly t = Poly::monomial(qm, lr.second / ld.second);
    q += t;
    r -= t * d;
  }
  return q;
}

inline std::string mono_str(const Mono& m) {
  std::vector<std::pair<std::string, int>> f;
  for (const auto& p : m) f.emplace_back(sym_name(p.first), p.second);
  std::sort(f.begin(), f.end());
  std::string s;
  for (const auto& p : f) {
    if (!s.empty()) s += "*";
    s += p.first;
    if (p.second != 1) s += "^" + std::to_string(p.second);
  }
  return s;
}

inline std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::vector<std::pair<std::string, Cx>> items;
  for (const auto& kv : t_) items.emplace_back(mono_str(kv.first), kv.second);
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::string s;
  for (const auto& it : items) {
    const Cx& c = it.second;
    std::string cs;
    bool neg = false;
    if (c.is_real()) {
      Rational v = c.re;
      if (sgn(v) < 0) {
        neg = true;
        v = -v;
      }
      cs = v.get_str();
    } else if (sgn(c.re) == 0) {
      Rational v = c.im;
      if (sgn(v) < 0) {
        neg = true;
        v = -v;
      }
      cs = (v == 1 ? std::string("i") : v.get_str() + "*i");
    } else {
      cs = "(" + c.str() + ")";
    }
    std::string term;
    if (it.first.empty()) term = cs;
    else if (cs == "1") term = it.first;
    else term = cs + "*" + it.first;
    if (s.empty()) s = (neg ? "-" : "") + term;
    else s += (neg ? " - " : " + ") + term;
  }
  return s;
}

// Recursive-descent parser for the output format of Poly::str and simple hand-written input.
class PolyParser {
 public:
  explicit PolyParser(std::string s) : s_(std::move(s)) {}
  Poly parse() {
    Poly r = expr();
    skip();
    if (k_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  std::string s_;
  std::size_t k_ = 0;

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("poly parse error (" + why + ") in '" + s_ + "' at " + std::to_string(k_));
  }
  void skip() {
    while (k_ < s_.size() && s_[k_] == ' ') ++k_;
  }
  bool eat(char c) {
    skip();
    if (k_ < s_.size() && s_[k_] == c) {
      ++k_;
      return true;
    }
    return false;
  }
  Poly expr() {
    Poly r;
    bool neg = eat('-');
    if (!neg) eat('+');
    r = term();
    if (neg) r = -r;
    for (;;) {
      if (eat('+')) r += term();
      else if (eat('-')) r -= term();
      else break;
    }
    return r;
  }
  Poly term() {
    Poly r = factor();
    for (;;) {
      if (eat('*')) r = r * factor();
      else if (eat('/')) {
        Poly d = factor();
        if (!d.is_const()) fail("division by non-constant");
        r = r.scaled(Cx(1) / d.const_value());
      } else break;
    }
    return r;
  }
  Poly factor() {
    Poly b = atom();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      std::size_t st = k_;
      while (k_ < s_.size() && isdigit(static_cast<unsigned char>(s_[k_]))) ++k_;
      if (st == k_) fail("exponent");
      int e = std::stoi(s_.substr(st, k_ - st));
      b = b.pow(neg ? -e : e);
    }
    return b;
  }
  Poly atom() {
    skip();
    if (k_ >= s_.size()) fail("unexpected end");
    char c = s_[k_];
    if (c == '(') {
      ++k_;
      Poly r = expr();
      if (!eat(')')) fail("missing )");
      return r;
    }
    if (c == '-') {
      ++k_;
      return -atom();
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = k_;
      while (k_ < s_.size() && isdigit(static_cast<unsigned char>(s_[k_]))) ++k_;
      return Poly(Rational(s_.substr(st, k_ - st)));
    }
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = k_;
      while (k_ < s_.size() && (isalnum(static_cast<unsigned char>(s_[k_])) || s_[k_] == '_')) ++k_;
      std::string name = s_.substr(st, k_ - st);
      if (name == "i") return Poly(Cx::i());
      return Poly::var(name);
    }
    fail("unexpected character");
  }
};

inline Poly parse_poly(const std::string& s) { return PolyParser(s).parse(); }

// ---------------------------------------------------------------------------
// Dense matrix

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, T(0)) {}
  Matrix(std::size_t r, std::size_t c, std::vector<T> v) : r_(r), c_(c), a_(std::move(v)) {
    if (a_.size() != r * c) throw std::invalid_argument("matrix entry count mismatch");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    for (const auto& row : rows) {
      if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
      for (const auto& x : row) a_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix zero(std::size_t r, std::size_t c) { return Matrix(r, c); }
  static Matrix scalar(std::size_t n, const T& v) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = v;
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  const std::vector<T>& data() const { return a_; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.a_) x = -x;
    return m;
  }
  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.c_; ++j) {
          const T& y = b(k, j);
          if (!y.is_zero()) m(i, j) += x * y;
        }
      }
    return m;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix m = a;
    for (auto& x : m.a_) x = s * x;
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  Matrix dagger() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = conj((*this)(i, j));
    return m;
  }
  Matrix conjugate() const {
    Matrix m = *this;
    for (auto& x : m.a_) x = conj(x);
    return m;
  }
  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<T>()))> {
    using U = decltype(f(std::declval<T>()));
    std::vector<U> v;
    v.reserve(a_.size());
    for (const auto& x : a_) v.push_back(f(x));
    return Matrix<U>(r_, c_, std::move(v));
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;

  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix dimension mismatch");
  }
};

using CMat = Matrix<Cx>;
using PMat = Matrix<Poly>;

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

template <class T>
Matrix<T> direct_sum(const std::vector<Matrix<T>>& parts) {
  std::size_t r = 0, c = 0;
  for (const auto& p : parts) {
    r += p.rows();
    c += p.cols();
  }
  Matrix<T> m(r, c);
  std::size_t i = 0, j = 0;
  for (const auto& p : parts) {
    m.set_block(i, j, p);
    i += p.rows();
    j += p.cols();
  }
  return m;
}

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

template <class T>
Matrix<T> anticommutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b + b * a;
}

template <class T>
Matrix<T> mat_pow(const Matrix<T>& a, int k) {
  Matrix<T> r = Matrix<T>::identity(a.rows());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

// Block matrix from a grid; null blocks are taken as zeros of the implied shape.
template <class T>
Matrix<T> blocks(const std::vector<std::vector<Matrix<T>>>& g) {
  std::vector<std::size_t> rh(g.size(), 0), cw(g.empty() ? 0 : g[0].size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g[i].size(); ++j) {
      rh[i] = std::max(rh[i], g[i][j].rows());
      cw[j] = std::max(cw[j], g[i][j].cols());
    }
  std::size_t R = 0, C = 0;
  for (auto v : rh) R += v;
  for (auto v : cw) C += v;
  Matrix<T> m(R, C);
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::size_t c0 = 0;
    for (std::size_t j = 0; j < g[i].size(); ++j) {
      if (g[i][j].rows() && g[i][j].cols()) {
        if (g[i][j].rows() != rh[i] || g[i][j].cols() != cw[j])
          throw std::invalid_argument("block shape mismatch");
        m.set_block(r0, c0, g[i][j]);
      }
      c0 += cw[j];
    }
    r0 += rh[i];
  }
  return m;
}

inline PMat to_poly(const CMat& m) {
  return m.map([](const Cx& c) { return Poly(c); });
}

inline bool is_constant(const PMat& m) {
  for (const auto& x : m.data())
    if (!x.is_const()) return false;
  return true;
}

inline CMat to_const(const PMat& m) {
  return m.map([](const Poly& p) {
    if (!p.is_const()) throw std::invalid_argument("matrix entry is not constant: " + p.str());
    return p.const_value();
  });
}

inline PMat subs(const PMat& m, int v, const Poly& val) {
  return m.map([&](const Poly& p) { return p.subs(v, val); });
}

inline PMat subs(const PMat& m, const std::map<int, Poly>& vals) {
  return m.map([&](const Poly& p) { return p.subs(vals); });
}


template <class T>
std::string mat_str(const Matrix<T>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
  }
  os << "]";
  return os.str();
}

}  // namespace galileq
