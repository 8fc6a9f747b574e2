#pragma once

#include <optional>

#include "phlat/abelian.hpp"
#include "phlat/matrix.hpp"

namespace phlat {

// gcd of the entries; 0 for the zero vector.
template <class T>
T content(const std::vector<T>& v) {
  T g = 0;
  for (auto& x : v) g = gcd_val(g, x);
  return g;
}

template <class T>
T floor_div(const T& a, const T& b) {  // b > 0
  T r = mod_pos(a, b);
  return (a - r) / b;
}

template <class T>
struct HnfResult {
  Mat<T> h;       // row-style Hermite normal form
  Mat<T> u;       // unimodular, u * input = h
  int u_sign;     // det(u) = +1 or -1
  size_t rank;    // number of pivot rows
};

// Row-style HNF by column-by-column gcd elimination. Pivots positive, entries
// above a pivot reduced into [0, pivot).
template <class T>
HnfResult<T> hnf(const Mat<T>& m_in) {
  Mat<T> h = m_in;
  Mat<T> u = Mat<T>::identity(m_in.rows());
  int sign = 1;
  const size_t m = h.rows(), n = h.cols();

  auto row_combine = [&](Mat<T>& a, size_t r, size_t i, const T& x, const T& y, const T& p,
                         const T& q) {
    // row_r <- x*row_r + y*row_i ; row_i <- p*row_r_old + q*row_i_old
    for (size_t j = 0; j < a.cols(); ++j) {
      T ar = a(r, j), ai = a(i, j);
      a(r, j) = x * ar + y * ai;
      a(i, j) = p * ar + q * ai;
    }
  };

  size_t r = 0;
  for (size_t j = 0; j < n && r < m; ++j) {
    for (size_t i = r + 1; i < m; ++i) {
      if (h(i, j) == 0) continue;
      if (h(r, j) == 0) {
        for (size_t k = 0; k < n; ++k) std::swap(h(r, k), h(i, k));
        for (size_t k = 0; k < m; ++k) std::swap(u(r, k), u(i, k));
        sign = -sign;
        continue;
      }
      if (h(i, j) % h(r, j) == 0) {
        T q = h(i, j) / h(r, j);
        for (size_t k = 0; k < n; ++k) h(i, k) -= q * h(r, k);
        for (size_t k = 0; k < m; ++k) u(i, k) -= q * u(r, k);
        continue;
      }
      T x, y;
      T g = ext_gcd(h(r, j), h(i, j), x, y);
      T p = -div_exact(h(i, j), g), q = div_exact(h(r, j), g);
      // det [[x, y], [p, q]] = (x*h(r,j) + y*h(i,j)) / g = 1
      row_combine(h, r, i, x, y, p, q);
      row_combine(u, r, i, x, y, p, q);
    }
    if (h(r, j) == 0) continue;
    if (h(r, j) < 0) {
      for (size_t k = 0; k < n; ++k) h(r, k) = -h(r, k);
      for (size_t k = 0; k < m; ++k) u(r, k) = -u(r, k);
      sign = -sign;
    }
    for (size_t i = 0; i < r; ++i) {
      T q = floor_div(h(i, j), h(r, j));
      if (q == 0) continue;
      for (size_t k = 0; k < n; ++k) h(i, k) -= q * h(r, k);
      for (size_t k = 0; k < m; ++k) u(i, k) -= q * u(r, k);
    }
    ++r;
  }
  return {std::move(h), std::move(u), sign, r};
}

template <class T>
Mat<T> hnf_form(const Mat<T>& m) {
  return hnf(m).h;
}

template <class T>
size_t rank(const Mat<T>& m) {
  return hnf(m).rank;
}

// Determinant through the HNF diagonal, sign tracked through u.
template <class T>
T determinant(const Mat<T>& m) {
  check(m.square(), errc::internal, "determinant of a non-square matrix");
  auto r = hnf(m);
  T d = r.u_sign;
  for (size_t i = 0; i < m.rows(); ++i) d *= r.h(i, i);
  return d;
}

template <class T>
bool is_ns(const Mat<T>& m) {
  check(m.square(), errc::internal, "weak nonsingularity is defined for square matrices");
  for (size_t j = 0; j < m.cols(); ++j)
    if (content(m.col(j)) != 1) return false;
  return rank(m) == m.rows();
}

template <class T>
struct SnfResult {
  std::vector<T> factors;  // d_1 | d_2 | ... | d_r, positive
  Mat<T> u, v;             // u * input * v = diag(factors) padded with zeros
};

template <class T>
SnfResult<T> snf_with_transforms(const Mat<T>& m_in) {
  Mat<T> a = m_in;
  const size_t m = a.rows(), n = a.cols();
  Mat<T> u = Mat<T>::identity(m), v = Mat<T>::identity(n);

  auto swap_rows = [&](size_t i, size_t k) {
    for (size_t j = 0; j < n; ++j) std::swap(a(i, j), a(k, j));
    for (size_t j = 0; j < m; ++j) std::swap(u(i, j), u(k, j));
  };
  auto swap_cols = [&](size_t i, size_t k) {
    for (size_t j = 0; j < m; ++j) std::swap(a(j, i), a(j, k));
    for (size_t j = 0; j < n; ++j) std::swap(v(j, i), v(j, k));
  };

  size_t s = 0;
  while (s < m && s < n) {
    // locate a nonzero entry of least magnitude in the trailing block
    size_t bi = s, bj = s;
    bool found = false;
    for (size_t i = s; i < m; ++i)
      for (size_t j = s; j < n; ++j)
        if (a(i, j) != 0 &&
            (!found || abs_val(a(i, j)) < abs_val(a(bi, bj)))) {
          bi = i;
          bj = j;
          found = true;
        }
    if (!found) break;
    if (bi != s) swap_rows(s, bi);
    if (bj != s) swap_cols(s, bj);

    bool clean = true;
    for (size_t i = s + 1; i < m; ++i) {
      if (a(i, s) == 0) continue;
      if (a(i, s) % a(s, s) == 0) {
        // plain subtraction; keeps the pivot row intact
        T q = a(i, s) / a(s, s);
        for (size_t j = 0; j < n; ++j) a(i, j) -= q * a(s, j);
        for (size_t j = 0; j < m; ++j) u(i, j) -= q * u(s, j);
        continue;
      }
      T x, y;
      T g = ext_gcd(a(s, s), a(i, s), x, y);
      T p = -div_exact(a(i, s), g), q = div_exact(a(s, s), g);
      for (size_t j = 0; j < n; ++j) {
        T as = a(s, j), ai = a(i, j);
        a(s, j) = x * as + y * ai;
        a(i, j) = p * as + q * ai;
      }
      for (size_t j = 0; j < m; ++j) {
        T us = u(s, j), ui = u(i, j);
        u(s, j) = x * us + y * ui;
        u(i, j) = p * us + q * ui;
      }
      clean = false;
    }
    for (size_t j = s + 1; j < n; ++j) {
      if (a(s, j) == 0) continue;
      if (a(s, j) % a(s, s) == 0) {
        T q = a(s, j) / a(s, s);
        for (size_t i = 0; i < m; ++i) a(i, j) -= q * a(i, s);
        for (size_t i = 0; i < n; ++i) v(i, j) -= q * v(i, s);
        continue;
      }
      T x, y;
      T g = ext_gcd(a(s, s), a(s, j), x, y);
      T p = -div_exact(a(s, j), g), q = div_exact(a(s, s), g);
      for (size_t i = 0; i < m; ++i) {
        T as = a(i, s), aj = a(i, j);
        a(i, s) = x * as + y * aj;
        a(i, j) = p * as + q * aj;
      }
      for (size_t i = 0; i < n; ++i) {
        T vs = v(i, s), vj = v(i, j);
        v(i, s) = x * vs + y * vj;
        v(i, j) = p * vs + q * vj;
      }
      clean = false;
    }
    if (!clean) continue;  // eliminations may have refilled the row

    // pivot divides the rest of the block?
    bool divides = true;
    for (size_t i = s + 1; i < m && divides; ++i)
      for (size_t j = s + 1; j < n && divides; ++j)
        if (a(i, j) % a(s, s) != 0) {
          // fold row i into row s and restart this pivot
          for (size_t k = 0; k < n; ++k) a(s, k) += a(i, k);
          for (size_t k = 0; k < m; ++k) u(s, k) += u(i, k);
          divides = false;
        }
    if (!divides) continue;
    ++s;
  }

  std::vector<T> factors;
  for (size_t i = 0; i < std::min(m, n); ++i) {
    if (a(i, i) == 0) break;
    if (a(i, i) < 0) {
      a(i, i) = -a(i, i);
      for (size_t j = 0; j < m; ++j) u(i, j) = -u(i, j);
    }
    factors.push_back(a(i, i));
  }
  return {std::move(factors), std::move(u), std::move(v)};
}

// Invariant-factor chain of the cokernel of the row-space map
// Z^{1xm} M <= Z^{1xn} (ones dropped). The free part is reported separately
// by cokernel().
template <class T>
AbelianGroup snf(const Mat<T>& m) {
  auto r = snf_with_transforms(m);
  std::vector<Int> f;
  for (auto& x : r.factors) f.push_back(Int(x));
  return AbelianGroup::from_moduli(std::move(f));
}

struct Cokernel {
  AbelianGroup torsion;
  size_t free_rank = 0;
};

template <class T>
Cokernel cokernel(const Mat<T>& m) {
  auto r = snf_with_transforms(m);
  std::vector<Int> f;
  for (auto& x : r.factors) f.push_back(Int(x));
  return {AbelianGroup::from_moduli(std::move(f)), m.cols() - r.factors.size()};
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

// Exact inverse over Q via Gauss-Jordan.
inline RatMatrix rational_inverse(const IntMatrix& m) {
  check(m.square(), errc::singular, "inverse of a non-square matrix");
  const size_t n = m.rows();
  RatMatrix a = to_rational(m);
  RatMatrix inv = RatMatrix::identity(n);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    check(p < n, errc::singular, "matrix is singular");
    if (p != c)
      for (size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rat piv = a(c, c);
    for (size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline std::optional<IntMatrix> as_integral(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (denominator(m(i, j)) != 1) return std::nullopt;
      r(i, j) = numerator(m(i, j));
    }
  return r;
}

inline RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) { return a * b; }

inline IntMatrix integral_inverse(const IntMatrix& u) {
  auto inv = as_integral(rational_inverse(u));
  check(inv.has_value(), errc::internal, "matrix is not unimodular");
  return *inv;
}

// det(m) * m^{-1}, exact over Z.
inline IntMatrix adjugate(const IntMatrix& m) {
  Int d = determinant(m);
  check(d != 0, errc::singular, "adjugate of a singular matrix");
  RatMatrix inv = rational_inverse(m);
  IntMatrix a(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      Rat v = inv(i, j) * Rat(d);
      check(denominator(v) == 1, errc::internal, "adjugate entry not integral");
      a(i, j) = numerator(v);
    }
  return a;
}

}  // namespace phlat
