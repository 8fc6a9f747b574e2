#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace phlat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Failure categories, mapped to CLI exit codes (limits -> 2, bad input -> 3).
enum class errc {
  parse,
  not_ns,
  not_terminal,
  singular,
  size_limit,
  budget,
  not_square_free,
  not_applicable,
  no_large_block,
  unimodular,
  bad_subset,
  bad_column,
  bad_x,
  not_in_f,
  range,
  factor_limit,
  internal,
};

class error : public std::runtime_error {
public:
  error(errc k, const std::string& what) : std::runtime_error(what), kind(k) {}
  errc kind;
};

[[noreturn]] inline void fail(errc k, const std::string& what) { throw error(k, what); }

inline void check(bool ok, errc k, const std::string& what) {
  if (!ok) fail(k, what);
}

template <class T>
T mod_pos(const T& x, const T& m) {
  T r = x % m;
  if (r < 0) r += (m < 0 ? -m : m);
  return r;
}

template <class T>
T abs_val(const T& x) {
  return x < 0 ? T(-x) : x;
}

template <class T>
T gcd_val(T a, T b) {
  a = abs_val(a);
  b = abs_val(b);
  while (b != 0) {
    T r = a % b;
    a = b;
    b = r;
  }
  return a;
}

template <class T>
T lcm_val(const T& a, const T& b) {
  if (a == 0 || b == 0) return T(0);
  return abs_val(a / gcd_val(a, b) * b);
}

// g = gcd(a,b) together with x,y such that x*a + y*b = g.
template <class T>
T ext_gcd(const T& a, const T& b, T& x, T& y) {
  if (b == 0) {
    if (a < 0) {
      x = -1;
      y = 0;
      return -a;
    }
    x = (a == 0) ? 0 : 1;
    y = 0;
    return a;
  }
  T x1, y1;
  T g = ext_gcd(b, T(a % b), x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

template <class T>
T inv_mod(const T& a, const T& m) {
  T x, y;
  T g = ext_gcd(mod_pos(a, m), m, x, y);
  check(g == 1, errc::bad_column, "element not invertible for the given modulus");
  return mod_pos(x, m);
}

template <class T>
T div_exact(const T& a, const T& b) {
  T q = a / b;
  if (q * b != a) fail(errc::internal, "exact division failed");
  return q;
}

inline long long to_ll(const Int& v) {
  check(v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max(),
        errc::size_limit, "value does not fit in 64 bits");
  return static_cast<long long>(v);
}

}  // namespace phlat
