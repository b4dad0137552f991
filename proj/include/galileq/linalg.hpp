#pragma once

#include <optional>

#include "exact.hpp"

namespace galileq {

struct Rref {
  CMat m;
  std::vector<std::size_t> pivots;
};

inline Rref rref(CMat m) {
  Rref out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Cx inv = Cx(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Cx f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.m = std::move(m);
  return out;
}

inline std::size_t rank(const CMat& m) { return rref(m).pivots.size(); }

// Right null space basis; each vector is a column matrix.
inline std::vector<CMat> nullspace(const CMat& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<CMat> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    CMat v(m.cols(), 1);
    v(f, 0) = Cx(1);
    for (std::size_t k = 0; k < r.pivots.size(); ++k) v(r.pivots[k], 0) = -r.m(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline CMat hstack(const std::vector<CMat>& cols) {
  if (cols.empty()) return CMat();
  std::size_t r = cols[0].rows(), c = 0;
  for (const auto& x : cols) c += x.cols();
  CMat m(r, c);
  std::size_t j = 0;
  for (const auto& x : cols) {
    m.set_block(0, j, x);
    j += x.cols();
  }
  return m;
}

inline std::optional<CMat> inverse(const CMat& m) {
  if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = m.rows();
  CMat aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, CMat::identity(n));
  Rref r = rref(aug);
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  return r.m.block(0, n, n, n);
}

// Solves m x = b for one particular solution, if any.
inline std::optional<CMat> solve(const CMat& m, const CMat& b) {
  CMat aug(m.rows(), m.cols() + b.cols());
  aug.set_block(0, 0, m);
  aug.set_block(0, m.cols(), b);
  Rref r = rref(aug);
  for (auto p : r.pivots)
    if (p >= m.cols()) return std::nullopt;
  CMat x(m.cols(), b.cols());
  for (std::size_t k = 0; k < r.pivots.size(); ++k)
    for (std::size_t j = 0; j < b.cols(); ++j) x(r.pivots[k], j) = r.m(k, m.cols() + j);
  return x;
}

// Fraction-free (Bareiss) determinant; pivot is the first nonzero entry in row order.
inline Poly det_bareiss(PMat a) {
  if (!a.square()) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t n = a.rows();
  if (n == 0) return Poly(1);
  Poly prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) return Poly();
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = div_exact(num, prev);
      }
      a(i, k) = Poly();
    }
    prev = a(k, k);
  }
  Poly d = a(n - 1, n - 1);
  return sign < 0 ? -d : d;
}

inline Poly det_poly(const PMat& a, int /*var*/) { return det_bareiss(a); }

inline Cx det(const CMat& a) { return det_bareiss(to_poly(a)).const_value(); }

// Cofactor expansion, used as an independent check on small matrices.
inline Poly det_cofactor(const PMat& a) {
  if (!a.square()) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t n = a.rows();
  if (n == 0) return Poly(1);
  if (n == 1) return a(0, 0);
  Poly d;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j).is_zero()) continue;
    PMat minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    Poly t = a(0, j) * det_cofactor(minor);
    if (j % 2) d -= t;
    else d += t;
  }
  return d;
}

// Inverse over Laurent polynomials; exists when the determinant is a single monomial.
inline std::optional<PMat> inverse_laurent(const PMat& a) {
  if (!a.square()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = a.rows();
  Poly d = det_bareiss(a);
  if (d.size() != 1) return std::nullopt;
  Poly di = d.pow(-1);
  PMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PMat minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = a(r, c);
        }
        ++rr;
      }
      Poly cof = det_bareiss(minor) * di;
      inv(i, j) = (i + j) % 2 ? -cof : cof;
    }
  return inv;
}

// ---------------------------------------------------------------------------
// Univariate rational roots

struct RootReport {
  std::vector<std::pair<Rational, int>> roots;  // root, multiplicity
  std::vector<Rational> residual;              // coefficients (low to high) without rational roots
  bool identically_zero = false;
  bool has_nonrational() const { return residual.size() > 1; }
};

namespace detail {

inline std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  if (n == 0) return out;
  std::vector<std::pair<Integer, int>> f;
  Integer m = n;
  for (Integer p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) f.emplace_back(p, e);
  }
  if (m > 1) f.emplace_back(m, 1);
  out.push_back(1);
  for (const auto& pe : f) {
    std::size_t sz = out.size();
    Integer pw = 1;
    for (int e = 1; e <= pe.second; ++e) {
      pw *= pe.first;
      for (std::size_t k = 0; k < sz; ++k) out.push_back(out[k] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Rational horner(const std::vector<Rational>& c, const Rational& x) {
  Rational v = 0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

// divide c(x) by (x - r), assuming r is a root
inline std::vector<Rational> deflate(const std::vector<Rational>& c, const Rational& r) {
  std::size_t n = c.size() - 1;
  std::vector<Rational> q(n);
  Rational carry = c[n];
  for (std::size_t k = n; k-- > 0;) {
    q[k] = carry;
    carry = c[k] + carry * r;
  }
  return q;
}

}  // namespace detail

// Rational roots of a real-rational univariate polynomial given low-to-high coefficients.
inline RootReport rational_roots(std::vector<Rational> c) {
  RootReport rep;
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  if (c.empty()) {
    rep.identically_zero = true;
    return rep;
  }
  int zero_mult = 0;
  while (c.size() > 1 && sgn(c.front()) == 0) {
    c.erase(c.begin());
    ++zero_mult;
  }
  if (zero_mult) rep.roots.emplace_back(Rational(0), zero_mult);
  // integer coefficients
  Integer l = 1;
  for (const auto& q : c) l = lcm(l, q.get_den());
  std::vector<Integer> z;
  for (const auto& q : c) z.push_back(Integer(q * l));
  auto num_divs = detail::divisors(z.front());
  auto den_divs = detail::divisors(z.back());
  std::vector<Rational> cands;
  for (const auto& p : num_divs)
    for (const auto& q : den_divs) {
      Rational r(p, q);
      r.canonicalize();
      cands.push_back(r);
      cands.push_back(-r);
    }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  for (const auto& r : cands) {
    int mult = 0;
    while (c.size() > 1 && sgn(detail::horner(c, r)) == 0) {
      c = detail::deflate(c, r);
      ++mult;
    }
    if (mult) rep.roots.emplace_back(r, mult);
  }
  std::sort(rep.roots.begin(), rep.roots.end());
  rep.residual = c;
  return rep;
}

// Rational roots of a univariate Poly in symbol v. Complex coefficients are split into
// real and imaginary parts; a root must annihilate both.
inline RootReport rational_roots(const Poly& p, int v) {
  for (int s : p.symbols())
    if (s != v) throw std::invalid_argument("rational_roots: polynomial is not univariate: " + p.str());
  if (p.is_zero()) {
    RootReport r;
    r.identically_zero = true;
    return r;
  }
  if (p.min_deg(v) < 0) throw std::invalid_argument("rational_roots: negative exponent");
  int d = p.max_deg(v);
  std::vector<Rational> re(d + 1), im(d + 1);
  for (int k = 0; k <= d; ++k) {
    Cx c = p.coeff(v, k).const_value();
    re[k] = c.re;
    im[k] = c.im;
  }
  bool re_zero = std::all_of(re.begin(), re.end(), [](const Rational& q) { return sgn(q) == 0; });
  bool im_zero = std::all_of(im.begin(), im.end(), [](const Rational& q) { return sgn(q) == 0; });
  if (im_zero) return rational_roots(re);
  if (re_zero) return rational_roots(im);
  RootReport a = rational_roots(re), b = rational_roots(im);
  RootReport out;
  for (const auto& r : a.roots)
    for (const auto& s : b.roots)
      if (r.first == s.first) out.roots.emplace_back(r.first, std::min(r.second, s.second));
  out.residual = a.residual;
  return out;
}

}  // namespace galileq
