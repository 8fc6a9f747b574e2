#pragma once

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "phlat/common.hpp"

namespace phlat {

// Dense row-major matrix over an exact scalar type (Int, Rat, or long long
// for the bounded fast paths). Value semantics throughout.
template <class T>
class Mat {
public:
  Mat() : rows_(0), cols_(0) {}
  Mat(size_t r, size_t c) : rows_(r), cols_(c), e_(r * c, T(0)) {}
  Mat(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (auto& r : rows) {
      check(r.size() == cols_, errc::parse, "ragged matrix literal");
      e_.insert(e_.end(), r.begin(), r.end());
    }
  }

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_ && rows_ > 0; }

  T& operator()(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const { return e_ < o.e_; }  // same-shape lexicographic

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator*(const Mat& o) const {
    check(cols_ == o.rows_, errc::internal, "shape mismatch in matrix product");
    Mat p(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
      }
    return p;
  }

  // Columns picked by index list, in the given order.
  Mat columns(const std::vector<size_t>& idx) const {
    Mat m(rows_, idx.size());
    for (size_t j = 0; j < idx.size(); ++j)
      for (size_t i = 0; i < rows_; ++i) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  // Right action by the permutation matrix of pi: column j of the result is
  // column pi[j] of *this.
  Mat col_permuted(const std::vector<size_t>& pi) const {
    check(pi.size() == cols_, errc::internal, "permutation length mismatch");
    return columns(pi);
  }

  std::vector<T> row(size_t i) const {
    return std::vector<T>(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(size_t j) const {
    std::vector<T> c(rows_);
    for (size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  template <class U>
  Mat<U> cast() const {
    Mat<U> m(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) m(i, j) = static_cast<U>((*this)(i, j));
    return m;
  }

  const std::vector<T>& data() const { return e_; }

private:
  size_t rows_, cols_;
  std::vector<T> e_;
};

using IntMatrix = Mat<Int>;
using RatMatrix = Mat<Rat>;
using SmallMatrix = Mat<long long>;  // internal fast path, bounded entries

inline IntMatrix widen(const SmallMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

inline SmallMatrix narrow(const IntMatrix& m) {
  SmallMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = to_ll(m(i, j));
  return r;
}

// Permutation helpers; a permutation is a 0-based image vector pi with
// pi[i] = image of i. The matrix form has a 1 in row pi[j], column j, so that
// (M * perm_matrix(pi)).col(j) = M.col(pi[j]).
inline IntMatrix perm_matrix(const std::vector<size_t>& pi) {
  IntMatrix p(pi.size(), pi.size());
  for (size_t j = 0; j < pi.size(); ++j) p(pi[j], j) = 1;
  return p;
}

inline std::vector<size_t> perm_identity(size_t n) {
  std::vector<size_t> v(n);
  std::iota(v.begin(), v.end(), size_t{0});
  return v;
}

inline std::vector<size_t> perm_compose(const std::vector<size_t>& a, const std::vector<size_t>& b) {
  // (a ∘ b)(i) = a(b(i))
  std::vector<size_t> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline std::vector<size_t> perm_inverse(const std::vector<size_t>& a) {
  std::vector<size_t> inv(a.size());
  for (size_t i = 0; i < a.size(); ++i) inv[a[i]] = i;
  return inv;
}

}  // namespace phlat
