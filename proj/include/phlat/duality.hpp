#pragma once

#include "phlat/structure.hpp"

namespace phlat {

// The opposite matrix: bop^T * b = diag(m), m(i) the least positive integer
// clearing the denominators of row i of b^{-1}. Both b and bop are NS and the
// construction is an involution.
struct DualData {
  IntMatrix b;
  IntMatrix bop;
  std::vector<Int> m;

  IntMatrix delta() const {
    IntMatrix d(m.size(), m.size());
    for (size_t i = 0; i < m.size(); ++i) d(i, i) = m[i];
    return d;
  }
};

inline DualData opposite(const IntMatrix& b) {
  require_ns(b, "opposite");
  RatMatrix inv = rational_inverse(b);
  std::vector<Int> m = row_denominators(b);
  const size_t n = b.rows();
  IntMatrix scaled(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rat v = inv(i, j) * Rat(m[i]);
      check(denominator(v) == 1, errc::internal, "opposite: clearing factor failed");
      scaled(i, j) = numerator(v);
    }
  IntMatrix bop = scaled.transpose();
  // each column of scaled^T is a row of delta * b^{-1}: content 1 by minimality
  for (size_t j = 0; j < n; ++j)
    check(content(bop.col(j)) == 1, errc::internal, "opposite: non-unimodular column");
  return {b, std::move(bop), std::move(m)};
}

// Self-test of the involution: (b^op)^op == b with matching clearing factors.
inline bool involution_check(const IntMatrix& b) {
  DualData d = opposite(b);
  DualData dd = opposite(d.bop);
  std::vector<Int> m1 = d.m, m2 = dd.m;
  std::sort(m1.begin(), m1.end());
  std::sort(m2.begin(), m2.end());
  return dd.bop == b && m1 == m2;
}

inline AbelianGroup coker_group(const IntMatrix& b) { return snf(b); }

// Does the middle term of 0 -> J(B^op) -> (+) Z_m(i) -> J(B) -> 0 decompose
// as the direct sum of the two ends?
inline bool sequence_splits(const IntMatrix& b) {
  DualData d = opposite(b);
  AbelianGroup middle = AbelianGroup::from_moduli(d.m);
  AbelianGroup ends = coker_group(b).direct_sum(coker_group(d.bop));
  return middle == ends;
}

// Row spaces of b and b^op together span the full lattice (equivalently the
// stacked 2n x n matrix has trivial cokernel).
inline bool super_splits(const IntMatrix& b) {
  DualData d = opposite(b);
  const size_t n = b.rows();
  IntMatrix st(2 * n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      st(i, j) = b(i, j);
      st(n + i, j) = d.bop(i, j);
    }
  return cokernel(st).torsion.trivial();
}

namespace detail {

inline StandardForm restricted_standard_form(const IntMatrix& b, const char* who) {
  require_ns(b, who);
  check(is_weakly_indecomposable(b), errc::not_applicable,
        std::string(who) + ": matrix is not weakly indecomposable");
  const size_t n = b.rows();
  StandardForm sf;
  try {
    sf = to_standard_form(b);
  } catch (const error& e) {
    if (e.kind == errc::no_large_block)
      fail(errc::not_applicable, std::string(who) + ": largest 1-block is below n-1");
    if (e.kind == errc::unimodular)
      fail(errc::not_applicable, std::string(who) + ": unimodular input");
    throw;
  }
  check(sf.n == n, errc::internal, "standard form size mismatch");
  return sf;
}

}  // namespace detail

// The invariant lattices of B and B^op agree, decided through the standard
// form: the values d/(d, a_i) must be pairwise coprime with product d and
// none equal to 1. Restricted to weakly indecomposable matrices whose largest
// 1-block is n-1.
inline bool is_dual_compatible(const IntMatrix& b) {
  StandardForm sf = detail::restricted_standard_form(b, "is_dual_compatible");
  Int prod = 1;
  std::vector<Int> di;
  for (auto& a : sf.a) {
    Int v = sf.d / gcd_val(sf.d, a);
    if (v == 1) return false;
    di.push_back(v);
    prod *= v;
  }
  if (prod != sf.d) return false;
  for (size_t i = 0; i < di.size(); ++i)
    for (size_t j = i + 1; j < di.size(); ++j)
      if (gcd_val(di[i], di[j]) != 1) return false;
  return true;
}

// Dual-compatible and additionally sum_i v_i^2 (a_i, d) = -1 mod d where
// v_i = a_i / (a_i, d); such matrices are Hermite-equivalent to their
// opposite.
inline bool is_dual_conjugate(const IntMatrix& b) {
  StandardForm sf = detail::restricted_standard_form(b, "is_dual_conjugate");
  if (!is_dual_compatible(b)) return false;
  Int sum = 0;
  for (auto& a : sf.a) {
    Int g = gcd_val(sf.d, a);
    Int v = a / g;
    sum += v * v % sf.d * g;
  }
  return mod_pos(Int(sum + 1), sf.d) == 0;
}

}  // namespace phlat
