#pragma once

#include <functional>
#include <optional>
#include <set>

#include "phlat/linalg.hpp"

namespace phlat {

inline void require_ns(const IntMatrix& b, const char* who) {
  check(b.square(), errc::not_ns, std::string(who) + ": matrix must be square");
  check(is_ns(b), errc::not_ns, std::string(who) + ": matrix is not weakly nonsingular");
}

// Unique Hermite-normal-form representative of the left-GL orbit of an NS
// matrix. Its (1,1) entry is 1.
inline IntMatrix weakly_terminal(const IntMatrix& b) {
  require_ns(b, "weakly_terminal");
  return hnf_form(b);
}

// Upper triangular, nondecreasing positive diagonal, reduced above-diagonal
// entries, and for every i < j the diagonal entry C_ii is at most the gcd of
// C_jj with the column-j entries in rows i..j-1.
template <class T>
bool is_terminal(const Mat<T>& c) {
  if (!c.square()) return false;
  const size_t n = c.rows();
  for (size_t i = 0; i < n; ++i) {
    if (c(i, i) <= 0) return false;
    if (i && c(i, i) < c(i - 1, i - 1)) return false;
    for (size_t j = 0; j < i; ++j)
      if (c(i, j) != 0) return false;
    for (size_t j = i + 1; j < n; ++j)
      if (c(i, j) < 0 || c(i, j) >= c(j, j)) return false;
  }
  for (size_t j = 1; j < n; ++j) {
    T g = c(j, j);
    for (size_t i = j; i-- > 0;) {  // extend the gcd downward from row j-1
      g = gcd_val(g, c(i, j));
      if (c(i, i) > g) return false;
    }
  }
  return true;
}

template <class T>
size_t one_block_size(const Mat<T>& c) {
  check(is_terminal(c), errc::not_terminal, "one_block_size: matrix is not in terminal form");
  size_t k = 0;
  while (k < c.rows() && c(k, k) == 1) ++k;
  return k;
}

namespace detail {

// J(B restricted to the columns in idx) is trivial iff those columns'
// projected rows span the full lattice.
inline bool subset_cokernel_trivial(const IntMatrix& b, const std::vector<size_t>& idx) {
  IntMatrix sub = b.columns(idx);
  auto r = hnf(sub);
  if (r.rank != idx.size()) return false;
  for (size_t i = 0; i < idx.size(); ++i)
    if (r.h(i, i) != 1) return false;
  return true;
}

inline void subsets_of_size(size_t n, size_t k, const std::function<bool(const std::vector<size_t>&)>& f) {
  std::vector<size_t> idx(k);
  std::iota(idx.begin(), idx.end(), size_t{0});
  if (k == 0) {
    f({});
    return;
  }
  while (true) {
    if (f(idx)) return;
    size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

}  // namespace detail

// Largest m such that some m-subset of columns has trivial cokernel; equals
// the largest 1-block size among terminal forms in the PH class.
inline size_t max_one_block(const IntMatrix& b) {
  require_ns(b, "max_one_block");
  const size_t n = b.rows();
  for (size_t m = n; m >= 1; --m) {
    bool hit = false;
    detail::subsets_of_size(n, m, [&](const std::vector<size_t>& idx) {
      hit = detail::subset_cokernel_trivial(b, idx);
      return hit;
    });
    if (hit) return m;
  }
  return 0;  // unreachable for NS input
}

inline std::vector<std::vector<size_t>> all_permutations(size_t n) {
  std::vector<size_t> p = perm_identity(n);
  std::vector<std::vector<size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// All 1-block sizes realized by terminal forms in B's class.
inline std::set<size_t> class_one_block_sizes(const IntMatrix& b) {
  require_ns(b, "class_one_block_sizes");
  check(b.rows() <= 8, errc::size_limit, "class_one_block_sizes: limited to n <= 8");
  std::set<size_t> sizes;
  for (auto& p : all_permutations(b.rows())) {
    IntMatrix c = hnf_form(b.col_permuted(p));
    if (is_terminal(c)) sizes.insert(one_block_size(c));
  }
  return sizes;
}

// m(i) = least positive multiple of row i of B^{-1} that is integral;
// the kernel orders of the one-column-deleted quotients.
inline std::vector<Int> row_denominators(const IntMatrix& b) {
  RatMatrix inv = rational_inverse(b);
  std::vector<Int> m(b.rows());
  for (size_t i = 0; i < b.rows(); ++i) {
    Int l = 1;
    for (size_t j = 0; j < b.cols(); ++j) l = lcm_val(l, Int(denominator(inv(i, j))));
    m[i] = l;
  }
  return m;
}

// No standard basis row lies in the row space, i.e. every m(i) exceeds 1.
inline bool is_weakly_indecomposable(const IntMatrix& b) {
  require_ns(b, "is_weakly_indecomposable");
  for (auto& mi : row_denominators(b))
    if (mi == 1) return false;
  return true;
}

// Terminal representative (I_{n-1} a; 0 d) for classes whose 1-block reaches
// n-1; entries of a reduced mod d and ordered so gcd(d, a_i) is nonincreasing
// (ties by ascending a_i).
struct StandardForm {
  size_t n = 0;
  Int d;
  std::vector<Int> a;
};

inline IntMatrix standard_matrix(const StandardForm& sf) {
  IntMatrix b = IntMatrix::identity(sf.n);
  for (size_t i = 0; i + 1 < sf.n; ++i) b(i, sf.n - 1) = sf.a[i];
  b(sf.n - 1, sf.n - 1) = sf.d;
  return b;
}

inline StandardForm make_standard_form(size_t n, Int d, std::vector<Int> a) {
  check(a.size() + 1 == n, errc::bad_column, "standard form column has wrong length");
  for (auto& x : a) x = mod_pos(x, d);
  Int g = d;
  for (auto& x : a) g = gcd_val(g, x);
  check(g == 1, errc::bad_column, "standard form column must be unimodular with d");
  std::sort(a.begin(), a.end(), [&](const Int& x, const Int& y) {
    Int gx = gcd_val(d, x), gy = gcd_val(d, y);
    if (gx != gy) return gx > gy;
    return x < y;
  });
  return {n, d, std::move(a)};
}

inline StandardForm to_standard_form(const IntMatrix& b) {
  require_ns(b, "to_standard_form");
  const size_t n = b.rows();
  Int d = abs_val(determinant(b));
  check(d != 1, errc::unimodular, "to_standard_form: unimodular matrix has no standard form");
  for (size_t j = 0; j < n; ++j) {
    std::vector<size_t> idx;
    for (size_t k = 0; k < n; ++k)
      if (k != j) idx.push_back(k);
    if (!detail::subset_cokernel_trivial(b, idx)) continue;
    idx.push_back(j);  // deleted column moves last
    IntMatrix h = hnf_form(b.columns(idx));
    std::vector<Int> a(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) a[i] = h(i, n - 1);
    check(h(n - 1, n - 1) == d, errc::internal, "unexpected reduced shape");
    return make_standard_form(n, d, std::move(a));
  }
  fail(errc::no_large_block, "to_standard_form: no terminal form with 1-block size n-1");
}

// ---- enumeration of weakly terminal matrices ----------------------------

// Streams every weakly terminal n x n matrix of determinant d exactly once,
// ordered lexicographically by (diagonal, above-diagonal entries read
// row-major). Diagonals run over all ordered factorizations of d; matrices
// whose columns fail the content-1 test are skipped.
class WeaklyTerminalEnum {
public:
  WeaklyTerminalEnum(size_t n, long long d) : n_(n), d_(d) {
    check(n >= 1, errc::size_limit, "enumeration needs n >= 1");
    check(d >= 1, errc::size_limit, "enumeration needs d >= 1");
    divisors_ = divisors_of(d);
    diag_.assign(n_, 1);
    if (!first_diagonal(0, d_)) exhausted_ = true;
    reset_entries();
  }

  // Produces the next matrix, or false when the stream is exhausted.
  bool next(SmallMatrix& out) {
    while (!exhausted_) {
      if (fresh_) {
        fresh_ = false;
      } else if (!advance_entries()) {
        if (!next_diagonal()) {
          exhausted_ = true;
          break;
        }
        reset_entries();
        fresh_ = false;
      }
      if (columns_unimodular()) {
        emit(out);
        return true;
      }
    }
    return false;
  }

  static std::vector<long long> divisors_of(long long d) {
    std::vector<long long> v;
    for (long long i = 1; i * i <= d; ++i)
      if (d % i == 0) {
        v.push_back(i);
        if (i != d / i) v.push_back(d / i);
      }
    std::sort(v.begin(), v.end());
    return v;
  }

private:
  // positions (i,j), i<j, row-major; entry at k lies in [0, diag_[pos_[k].second))
  bool first_diagonal(size_t from, long long rem) {
    if (from == n_) return rem == 1;
    for (auto dv : divisors_) {
      if (rem % dv) continue;
      diag_[from] = dv;
      if (first_diagonal(from + 1, rem / dv)) return true;
    }
    return false;
  }

  bool next_diagonal() {
    // odometer over ordered factorizations in divisor-lex order
    for (size_t i = n_; i-- > 0;) {
      long long rem = d_;
      for (size_t k = 0; k < i; ++k) rem /= diag_[k];
      auto it = std::upper_bound(divisors_.begin(), divisors_.end(), diag_[i]);
      while (it != divisors_.end()) {
        if (rem % *it == 0) {
          diag_[i] = *it;
          if (first_diagonal(i + 1, rem / *it)) return true;
        }
        ++it;
      }
    }
    return false;
  }

  void reset_entries() {
    pos_.clear();
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = i + 1; j < n_; ++j) pos_.emplace_back(i, j);
    entries_.assign(pos_.size(), 0);
    fresh_ = true;
  }

  bool advance_entries() {
    for (size_t k = pos_.size(); k-- > 0;) {
      if (entries_[k] + 1 < diag_[pos_[k].second]) {
        ++entries_[k];
        std::fill(entries_.begin() + k + 1, entries_.end(), 0LL);
        return true;
      }
    }
    return false;
  }

  bool columns_unimodular() const {
    for (size_t j = 0; j < n_; ++j) {
      long long g = diag_[j];
      for (size_t k = 0; k < pos_.size() && g != 1; ++k)
        if (pos_[k].second == j) g = gcd_val(g, entries_[k]);
      if (g != 1) return false;
    }
    return true;
  }

  void emit(SmallMatrix& out) const {
    out = SmallMatrix(n_, n_);
    for (size_t i = 0; i < n_; ++i) out(i, i) = diag_[i];
    for (size_t k = 0; k < pos_.size(); ++k) out(pos_[k].first, pos_[k].second) = entries_[k];
  }

  size_t n_;
  long long d_;
  std::vector<long long> divisors_;
  std::vector<long long> diag_;
  std::vector<std::pair<size_t, size_t>> pos_;
  std::vector<long long> entries_;
  bool exhausted_ = false;
  bool fresh_ = true;
};

inline std::vector<SmallMatrix> collect_weakly_terminal(size_t n, long long d,
                                                        size_t budget = 50'000'000) {
  WeaklyTerminalEnum en(n, d);
  std::vector<SmallMatrix> v;
  SmallMatrix m;
  while (en.next(m)) {
    v.push_back(m);
    check(v.size() <= budget, errc::budget, "weakly terminal enumeration exceeded budget");
  }
  return v;
}

}  // namespace phlat
