#pragma once

#include <map>

#include "phlat/duality.hpp"

namespace phlat {

// Subset of {1,..,n} with bitmask semantics (bit i-1 = member i).
struct Subset {
  size_t n = 0;
  uint32_t mask = 0;

  size_t count() const { return static_cast<size_t>(__builtin_popcount(mask)); }
  bool contains(size_t i) const { return (mask >> (i - 1)) & 1u; }  // 1-based
  static Subset full(size_t n) { return {n, static_cast<uint32_t>((1u << n) - 1)}; }
  static Subset missing(size_t n, size_t i) {  // all of {1..n} except i (1-based)
    return {n, static_cast<uint32_t>(((1u << n) - 1) & ~(1u << (i - 1)))};
  }
  std::vector<size_t> indices() const {  // 0-based column indices
    std::vector<size_t> v;
    for (size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) v.push_back(i);
    return v;
  }
};

// Torsion of the projection of the row space onto the coordinates in omega;
// trivial for |omega| <= 1.
inline AbelianGroup j_sub(const IntMatrix& b, const Subset& omega) {
  require_ns(b, "j_sub");
  check(omega.n == b.rows() && omega.mask < (1u << b.rows()), errc::bad_subset,
        "subset does not match the matrix size");
  if (omega.count() <= 1) return AbelianGroup();
  return cokernel(b.columns(omega.indices())).torsion;
}

// Ordered tuple over the one-column-deleted subsets.
inline std::vector<AbelianGroup> j_tuple(const IntMatrix& b) {
  require_ns(b, "j_tuple");
  std::vector<AbelianGroup> t;
  for (size_t i = 1; i <= b.rows(); ++i) t.push_back(j_sub(b, Subset::missing(b.rows(), i)));
  return t;
}

// All 2^n subset groups plus the kernel orders |J(B)| / |J(B_{omega(i)})|.
struct InvariantLattice {
  size_t n = 0;
  std::vector<AbelianGroup> groups;  // indexed by mask
  std::vector<Int> kernel_orders;    // per column, 0-based

  const AbelianGroup& at(uint32_t mask) const { return groups[mask]; }
};

inline InvariantLattice invariant_lattice(const IntMatrix& b) {
  require_ns(b, "invariant_lattice");
  const size_t n = b.rows();
  check(n <= 12, errc::size_limit, "invariant_lattice: limited to n <= 12");
  InvariantLattice lat;
  lat.n = n;
  lat.groups.resize(1u << n);
  for (uint32_t mask = 0; mask < (1u << n); ++mask)
    lat.groups[mask] = j_sub(b, Subset{n, mask});
  Int total = lat.groups[(1u << n) - 1].order();
  for (size_t i = 1; i <= n; ++i)
    lat.kernel_orders.push_back(total / lat.groups[Subset::missing(n, i).mask].order());
  return lat;
}

enum class LatticeVerdict { decided_iso, decided_noniso, necessary_only };

struct LatticeMatch {
  LatticeVerdict verdict;
  std::optional<std::vector<size_t>> pi;  // column relabeling making families agree
  std::optional<bool> exact;              // set when the exhaustive mode ran
};

namespace detail {

inline uint32_t apply_perm_mask(const std::vector<size_t>& pi, uint32_t mask) {
  uint32_t out = 0;
  for (size_t i = 0; i < pi.size(); ++i)
    if ((mask >> i) & 1u) out |= 1u << pi[i];
  return out;
}

// Exhaustive isomorphism decision for the full lattice: look for a column
// relabeling pi and a group isomorphism J(B) -> J(B') determined by sending
// the class of E_i to a generator of the i-th kernel on the other side.
// Budgeted; returns nullopt when the budget is exceeded.
inline std::optional<bool> lattice_iso_exact(const IntMatrix& b, const IntMatrix& b2,
                                             Int order_budget = 10'000,
                                             Int choice_budget = 1'000'000) {
  const size_t n = b.rows();
  AbelianGroup jb = snf(b), jb2 = snf(b2);
  if (jb != jb2) return false;
  if (jb.order() > order_budget) return std::nullopt;

  std::vector<Int> mb = row_denominators(b), mb2 = row_denominators(b2);

  // coordinates of J(B') as a product of cyclic groups
  auto s = snf_with_transforms(b2);
  std::vector<Int> mod;  // all n factors incl. ones
  for (auto& f : s.factors) mod.push_back(f);
  check(mod.size() == n, errc::internal, "full-rank input expected");
  auto coords = [&](const std::vector<Int>& v) {
    std::vector<Int> c(n, 0);
    for (size_t j = 0; j < n; ++j) {
      Int acc = 0;
      for (size_t k = 0; k < n; ++k) acc += v[k] * s.v(k, j);
      c[j] = mod_pos(acc, mod[j]);
    }
    return c;
  };
  std::vector<std::vector<Int>> e_img(n);  // coordinates of E_i classes in J(B')
  for (size_t i = 0; i < n; ++i) {
    std::vector<Int> e(n, 0);
    e[i] = 1;
    e_img[i] = coords(e);
  }

  // order of the subgroup generated by given coordinate vectors
  auto subgroup_order = [&](const std::vector<std::vector<Int>>& gens) -> Int {
    IntMatrix st(gens.size() + n, n);
    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = 0; j < n; ++j) st(i, j) = gens[i][j];
    for (size_t j = 0; j < n; ++j) st(gens.size() + j, j) = mod[j];
    auto h = hnf(st);
    Int idx = 1;
    for (size_t j = 0; j < n; ++j) idx *= h.h(j, j);
    Int full = 1;
    for (auto& m : mod) full *= m;
    return full / idx;
  };

  Int choices = 1;
  for (auto& m : mb) {
    Int phi = 0;
    for (Int t = 1; t <= m; ++t)
      if (gcd_val(t, m) == 1) ++phi;
    choices *= phi;
    if (choices > choice_budget) return std::nullopt;
  }

  for (auto& pi : all_permutations(n)) {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) ok = (mb[i] == mb2[pi[i]]);
    if (!ok) continue;

    // g_i = t_i * (class of E_{pi(i)} in J(B')), gcd(t_i, m_i) = 1; the map is
    // well defined iff every row of B maps to zero; bijective iff the images
    // generate.
    std::vector<std::vector<Int>> units(n);
    for (size_t i = 0; i < n; ++i)
      for (Int t = 1; t <= mb[i]; ++t)
        if (gcd_val(t, mb[i]) == 1) units[i].push_back(t);

    std::vector<size_t> sel(n, 0);
    while (true) {
      std::vector<std::vector<Int>> g(n, std::vector<Int>(n));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          g[i][j] = mod_pos(Int(units[i][sel[i]] * e_img[pi[i]][j]), mod[j]);
      bool well = true;
      for (size_t r = 0; r < n && well; ++r) {
        std::vector<Int> acc(n, 0);
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j) acc[j] = mod_pos(Int(acc[j] + b(r, i) * g[i][j]), mod[j]);
        for (size_t j = 0; j < n; ++j)
          if (acc[j] != 0) well = false;
      }
      if (well && subgroup_order(g) == jb2.order()) return true;
      size_t k = n;
      while (k-- > 0) {
        if (++sel[k] < units[k].size()) break;
        sel[k] = 0;
        if (k == 0) goto next_perm;
      }
    }
  next_perm:;
  }
  return false;
}

}  // namespace detail

// Searches for a column relabeling matching the subset-group families of two
// matrices. With a cyclic cokernel a match settles lattice isomorphism; with
// a non-cyclic one the verdict stays at "necessary only" unless the optional
// exhaustive mode decides it.
inline LatticeMatch lattice_match(const IntMatrix& b, const IntMatrix& b2, bool exact_mode = false) {
  require_ns(b, "lattice_match");
  require_ns(b2, "lattice_match");
  check(b.rows() == b2.rows(), errc::bad_subset, "lattice_match: size mismatch");
  const size_t n = b.rows();
  check(n <= 8, errc::size_limit, "lattice_match: limited to n <= 8");

  InvariantLattice la = invariant_lattice(b), lb = invariant_lattice(b2);
  std::optional<std::vector<size_t>> found;
  for (auto& pi : all_permutations(n)) {
    bool ok = true;
    for (uint32_t mask = 0; mask < (1u << n) && ok; ++mask)
      ok = (la.groups[mask] == lb.groups[detail::apply_perm_mask(pi, mask)]);
    if (ok) {
      found = pi;
      break;
    }
  }

  LatticeMatch res{LatticeVerdict::necessary_only, found, std::nullopt};
  if (!found) {
    res.verdict = LatticeVerdict::decided_noniso;
  } else if (la.groups[(1u << n) - 1].cyclic()) {
    res.verdict = LatticeVerdict::decided_iso;
  }
  if (exact_mode) {
    res.exact = detail::lattice_iso_exact(b, b2);
    if (res.exact.has_value() && res.verdict == LatticeVerdict::necessary_only)
      res.verdict = *res.exact ? LatticeVerdict::decided_iso : LatticeVerdict::decided_noniso;
  }
  return res;
}

}  // namespace phlat
