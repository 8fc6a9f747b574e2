#pragma once

#include "phlat/invariants.hpp"

namespace phlat {

// Some(U) with U * b = c iff the Hermite forms coincide.
inline std::optional<IntMatrix> hermite_equivalent(const IntMatrix& b, const IntMatrix& c) {
  check(b.rows() == c.rows() && b.cols() == c.cols(), errc::bad_subset,
        "hermite_equivalent: shape mismatch");
  auto hb = hnf(b), hc = hnf(c);
  if (hb.h != hc.h) return std::nullopt;
  // u_b * b = h = u_c * c  =>  (u_c^{-1} u_b) b = c
  return integral_inverse(hc.u) * hb.u;
}

struct PhCertificate {
  IntMatrix u;
  IntMatrix p;                // permutation matrix, u * b = c * p
  std::vector<size_t> pi;     // its image vector
};

namespace detail {

// candidate permutations: pi with tuple(b)_i == tuple(c)_{pi(i)}
inline std::vector<std::vector<size_t>> tuple_matched_perms(const std::vector<AbelianGroup>& tb,
                                                            const std::vector<AbelianGroup>& tc) {
  std::vector<std::vector<size_t>> out;
  for (auto& pi : all_permutations(tb.size())) {
    bool ok = true;
    for (size_t i = 0; i < tb.size() && ok; ++i) ok = (tb[i] == tc[pi[i]]);
    if (ok) out.push_back(pi);
  }
  return out;
}

}  // namespace detail

// Decision by orbit search over column permutations, pruned by the ordered
// tuple of one-column-deleted cokernels.
inline std::optional<PhCertificate> ph_equivalent(const IntMatrix& b, const IntMatrix& c) {
  require_ns(b, "ph_equivalent");
  require_ns(c, "ph_equivalent");
  check(b.rows() == c.rows(), errc::bad_subset, "ph_equivalent: size mismatch");
  check(b.rows() <= 8, errc::size_limit, "ph_equivalent: limited to n <= 8");
  if (abs_val(determinant(b)) != abs_val(determinant(c))) return std::nullopt;

  auto hb = hnf(b);
  for (auto& pi : detail::tuple_matched_perms(j_tuple(b), j_tuple(c))) {
    IntMatrix cp = c.col_permuted(pi);
    auto hc = hnf(cp);
    if (hc.h != hb.h) continue;
    // u_c (c p) = h = u_b b  =>  (u_c^{-1} u_b) b = c p
    PhCertificate cert{integral_inverse(hc.u) * hb.u, perm_matrix(pi), pi};
    return cert;
  }
  return std::nullopt;
}

struct SinglePResult {
  bool applicable = false;
  std::vector<size_t> pi;                          // forced candidate
  std::optional<PhCertificate> cert;               // set when the test passes
  std::optional<std::tuple<size_t, size_t, Rat>> witness;  // 1-based offending entry
};

// For matrices whose tuple entries are pairwise nonisomorphic the candidate
// permutation is unique and the whole decision reduces to one integrality
// test of c * p * b^{-1}.
inline SinglePResult single_p_test(const IntMatrix& b, const IntMatrix& c) {
  require_ns(b, "single_p_test");
  require_ns(c, "single_p_test");
  check(b.rows() == c.rows(), errc::not_applicable, "single_p_test: size mismatch");
  auto tb = j_tuple(b), tc = j_tuple(c);
  for (size_t i = 0; i < tb.size(); ++i)
    for (size_t j = i + 1; j < tb.size(); ++j)
      check(tb[i] != tb[j], errc::not_applicable,
            "single_p_test: tuple entries are not pairwise distinct");
  auto cands = detail::tuple_matched_perms(tb, tc);
  check(cands.size() == 1, errc::not_applicable, "single_p_test: no forced permutation");

  SinglePResult res;
  res.applicable = true;
  res.pi = cands[0];
  RatMatrix t = rat_mul(to_rational(c.col_permuted(res.pi)), rational_inverse(b));
  for (size_t i = 0; i < t.rows(); ++i)
    for (size_t j = 0; j < t.cols(); ++j)
      if (denominator(t(i, j)) != 1) {
        res.witness = {i + 1, j + 1, t(i, j)};
        return res;
      }
  IntMatrix u = *as_integral(t);
  res.cert = PhCertificate{u, perm_matrix(res.pi), res.pi};
  return res;
}

// ---- standard-form column orbits -----------------------------------------

// Image column of a standard-form column under the permutation pi (1-based
// image vector over {1..n}); empty when pi(n) != n and a_{pi(n)} is not a
// unit modulo d.
inline std::optional<std::vector<Int>> realizable_column(const std::vector<Int>& a, const Int& d,
                                                         const std::vector<size_t>& pi) {
  const size_t n = a.size() + 1;
  check(pi.size() == n, errc::bad_column, "realizable_column: permutation size mismatch");
  Int g = d;
  for (auto& x : a) g = gcd_val(g, x);
  check(g == 1, errc::bad_column, "realizable_column: column not unimodular with d");

  if (pi[n - 1] == n - 1) {
    std::vector<Int> out(n - 1);
    for (size_t t = 0; t + 1 < n; ++t) out[t] = mod_pos(a[pi[t]], d);
    return out;
  }
  Int an = a[pi[n - 1]];
  if (gcd_val(an, d) != 1) return std::nullopt;
  Int inv = inv_mod(an, d);
  std::vector<Int> out(n - 1);
  size_t back = perm_inverse(pi)[n - 1];  // position mapped onto the last slot
  for (size_t t = 0; t + 1 < n; ++t) {
    if (t == back)
      out[t] = inv;
    else
      out[t] = mod_pos(Int(-a[pi[t]] * inv), d);
  }
  return out;
}

// Closure of a column under entry permutations and the realizable moves: the
// set of standard-form columns whose matrices are PH-equivalent to B_a while
// keeping the full-size 1-block.
inline std::set<std::vector<Int>> column_orbit(const std::vector<Int>& a_in, const Int& d) {
  const size_t n = a_in.size() + 1;
  std::vector<Int> a(a_in);
  for (auto& x : a) x = mod_pos(x, d);
  Int g = d;
  for (auto& x : a) g = gcd_val(g, x);
  check(g == 1, errc::bad_column, "column_orbit: column not unimodular with d");

  std::set<std::vector<Int>> orbit;
  std::vector<std::vector<Int>> queue{a};
  orbit.insert(a);
  auto perms = all_permutations(n);
  while (!queue.empty()) {
    std::vector<Int> cur = queue.back();
    queue.pop_back();
    for (auto& pi : perms) {
      auto img = realizable_column(cur, d, pi);
      if (!img) continue;
      if (orbit.insert(*img).second) queue.push_back(*img);
    }
  }
  return orbit;
}

inline std::vector<Int> column_orbit_canonical(const std::set<std::vector<Int>>& orbit) {
  std::vector<Int> best;
  for (auto v : orbit) {
    std::sort(v.begin(), v.end());
    if (best.empty() || v < best) best = v;
  }
  return best;
}

}  // namespace phlat
