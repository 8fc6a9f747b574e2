#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <memory>
#include <string>

#include "phlat/common.hpp"

namespace phlat {

// ---- factorization ---------------------------------------------------------

using Factorization = std::vector<std::pair<long long, int>>;  // (p, exponent)

namespace detail {

inline unsigned long long mulmod_u64(unsigned long long a, unsigned long long b,
                                     unsigned long long m) {
  return static_cast<unsigned long long>(static_cast<__uint128_t>(a) * b % m);
}

inline unsigned long long powmod_u64(unsigned long long b, unsigned long long e,
                                     unsigned long long m) {
  unsigned long long r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

inline bool miller_rabin(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                               31ULL, 37ULL})
    if (n % p == 0) return n == p;
  unsigned long long d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned long long a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                               31ULL, 37ULL}) {
    unsigned long long x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// deterministic Brent-style rho with a fixed constant schedule
inline unsigned long long pollard_rho(unsigned long long n) {
  if ((n & 1) == 0) return 2;
  for (unsigned long long c = 1;; ++c) {
    unsigned long long x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (mulmod_u64(x, x, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      unsigned long long diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
  }
}

}  // namespace detail

inline Factorization factorize(long long d) {
  check(d >= 1, errc::range, "factorize: positive input required");
  check(d <= 1'000'000'000'000LL, errc::factor_limit, "factorize: limited to 10^12");
  std::map<long long, int> f;
  for (long long p = 2; p * p <= d && p <= 1'000'000; p += (p == 2 ? 1 : 2))
    while (d % p == 0) {
      ++f[p];
      d /= p;
    }
  // after trial division to 10^6, the cofactor of a 10^12-bounded input is 1,
  // a prime, or a semiprime
  std::vector<unsigned long long> rest;
  if (d > 1) rest.push_back(static_cast<unsigned long long>(d));
  while (!rest.empty()) {
    unsigned long long x = rest.back();
    rest.pop_back();
    if (detail::miller_rabin(x)) {
      ++f[static_cast<long long>(x)];
      continue;
    }
    unsigned long long g = detail::pollard_rho(x);
    rest.push_back(g);
    rest.push_back(x / g);
  }
  Factorization out(f.begin(), f.end());
  return out;
}

inline Int int_pow(const Int& b, int e) {
  Int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// ---- multiplicative arithmetic functions -----------------------------------

// A multiplicative function given by its prime-power values, with a memo
// shared across copies (single writer per key behind a mutex, safe for
// concurrent evaluation).
class ArithFn {
public:
  using PrimePowerEval = std::function<Int(long long p, int m)>;

  ArithFn() = default;
  ArithFn(std::string name, PrimePowerEval eval)
      : name_(std::move(name)),
        eval_(std::move(eval)),
        memo_(std::make_shared<Memo>()) {}

  const std::string& name() const { return name_; }

  Int at_prime_power(long long p, int m) const {
    if (m == 0) return 1;
    std::lock_guard<std::mutex> lock(memo_->mu);
    auto key = std::make_pair(p, m);
    auto it = memo_->map.find(key);
    if (it != memo_->map.end()) return it->second;
    Int v = eval_(p, m);
    memo_->map.emplace(key, v);
    return v;
  }

  Int operator()(long long d) const {
    Int r = 1;
    for (auto& [p, m] : factorize(d)) r *= at_prime_power(p, m);
    return r;
  }

  Int operator()(const Factorization& f) const {
    Int r = 1;
    for (auto& [p, m] : f) r *= at_prime_power(p, m);
    return r;
  }

private:
  struct Memo {
    std::mutex mu;
    std::map<std::pair<long long, int>, Int> map;
  };
  std::string name_;
  PrimePowerEval eval_;
  std::shared_ptr<Memo> memo_;
};

// (f * g)(p^m) = sum_{i<=m} f(p^i) g(p^{m-i})
inline ArithFn dirichlet_convolve(const ArithFn& f, const ArithFn& g) {
  return ArithFn(f.name() + "*" + g.name(), [f, g](long long p, int m) {
    Int s = 0;
    for (int i = 0; i <= m; ++i) s += f.at_prime_power(p, i) * g.at_prime_power(p, m - i);
    return s;
  });
}

inline ArithFn delta_fn() {
  return ArithFn("delta", [](long long, int m) { return Int(m == 0 ? 1 : 0); });
}

inline ArithFn euler_phi_fn() {
  return ArithFn("phi", [](long long p, int m) { return int_pow(p, m - 1) * (p - 1); });
}

inline ArithFn jordan_fn(int k) {
  return ArithFn("J" + std::to_string(k), [k](long long p, int m) {
    return int_pow(p, (m - 1) * k) * (int_pow(p, k) - 1);
  });
}

// number of k-th roots of unity in Z_{p^m}; the unit group is cyclic of
// order p^{m-1}(p-1) at odd p and Z_2 x Z_{2^{m-2}} at p = 2, m >= 2
inline ArithFn roots_of_unity_fn(int k) {
  return ArithFn("N" + std::to_string(k), [k](long long p, int m) -> Int {
    int vp = 0;
    long long kk = k;
    while (kk % p == 0) {
      kk /= p;
      ++vp;
    }
    if (p != 2) return int_pow(p, std::min(vp, m - 1)) * std::gcd<long long>(p - 1, k);
    if (m == 1) return 1;
    return Int(std::gcd<long long>(k, 2)) * int_pow(2, std::min(vp, m - 2));
  });
}

// number of (a, t_1..t_{k-1}) in Z_d^k with a^2 = 1 and t_i (a+1) = 0
inline ArithFn pair_solution_fn(int k) {
  return ArithFn("M" + std::to_string(k), [k](long long p, int m) {
    if (p != 2) return int_pow(p, m * (k - 1)) + 1;
    if (m == 1) return int_pow(2, k - 1);
    if (m == 2) return int_pow(2, 2 * (k - 1)) + int_pow(2, k - 1);
    return int_pow(2, m * (k - 1)) + int_pow(2, (m - 1) * (k - 1)) + int_pow(2, k);
  });
}

// square-indicator times a totient of the square root
inline ArithFn square_jordan_fn(int k) {
  ArithFn jk = jordan_fn(k);
  return ArithFn("P" + std::to_string(k), [jk](long long p, int m) {
    if (m % 2) return Int(0);
    return jk.at_prime_power(p, m / 2);
  });
}

inline ArithFn square_phi_fn() { return square_jordan_fn(1); }

inline ArithFn chi_square_fn() {
  return ArithFn("chi2", [](long long, int m) { return Int(m % 2 == 0 ? 1 : 0); });
}

// the 3x3 transposition fixed-point weight: 1 at odd p, the 2-adic table at 2
inline ArithFn m_weight_fn() { return pair_solution_fn(2); }

// ---- additive statistics ----------------------------------------------------

inline int omega_distinct(long long d) { return static_cast<int>(factorize(d).size()); }

inline int omega_one_mod3(long long d) {
  int c = 0;
  for (auto& [p, m] : factorize(d))
    if (p % 3 == 1) ++c;
  return c;
}

inline int nine_divides(long long d) { return d % 9 == 0 ? 1 : 0; }

// named evaluator used by the CLI
inline Int arith_eval(const std::string& name, long long d) {
  if (name == "phi") return euler_phi_fn()(d);
  if (name == "w") return omega_distinct(d);
  if (name == "w1") return omega_one_mod3(d);
  if (name == "w9") return nine_divides(d);
  if (name == "M") return m_weight_fn()(d);
  if (name == "P") return square_phi_fn()(d);
  if (name == "chi2") return chi_square_fn()(d);
  if (name.size() > 1 && (name[0] == 'J' || name[0] == 'N' || name[0] == 'M' || name[0] == 'P')) {
    int k = std::stoi(name.substr(1));
    check(k >= 1 && k <= 64, errc::range, "arith_eval: subscript out of range");
    if (name[0] == 'J') return jordan_fn(k)(d);
    if (name[0] == 'N') return roots_of_unity_fn(k)(d);
    if (name[0] == 'M') return pair_solution_fn(k)(d);
    return square_jordan_fn(k)(d);
  }
  fail(errc::parse, "arith_eval: unknown function '" + name + "'");
}

}  // namespace phlat
