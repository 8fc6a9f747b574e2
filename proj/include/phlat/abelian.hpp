#pragma once

#include <string>
#include <vector>

#include "phlat/common.hpp"

namespace phlat {

// Finite abelian group in invariant-factor form: factors f_1 | f_2 | ... with
// every f_i >= 2; the trivial group is the empty chain.
class AbelianGroup {
public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<Int> chain) : factors_(std::move(chain)) {
    for (size_t i = 0; i < factors_.size(); ++i) {
      check(factors_[i] >= 2, errc::internal, "invariant factor below 2");
      if (i) check(factors_[i] % factors_[i - 1] == 0, errc::internal, "broken divisibility chain");
    }
  }

  // Normalizes an arbitrary list of moduli (>= 1) into the canonical chain.
  static AbelianGroup from_moduli(std::vector<Int> m) {
    m.erase(std::remove_if(m.begin(), m.end(), [](const Int& v) { return v == 1; }), m.end());
    for (auto& v : m) {
      check(v != 0, errc::internal, "modulus 0 has no finite cyclic quotient");
      v = abs_val(v);
    }
    // Pairwise gcd/lcm passes until the divisibility chain stabilizes.
    bool changed = true;
    while (changed) {
      changed = false;
      std::sort(m.begin(), m.end());
      for (size_t i = 0; i + 1 < m.size(); ++i) {
        if (m[i + 1] % m[i] != 0) {
          Int g = gcd_val(m[i], m[i + 1]);
          Int l = m[i] / g * m[i + 1];
          m[i] = g;
          m[i + 1] = l;
          changed = true;
        }
      }
      m.erase(std::remove_if(m.begin(), m.end(), [](const Int& v) { return v == 1; }), m.end());
    }
    return AbelianGroup(std::move(m));
  }

  const std::vector<Int>& factors() const { return factors_; }
  bool trivial() const { return factors_.empty(); }

  Int order() const {
    Int o = 1;
    for (auto& f : factors_) o *= f;
    return o;
  }
  Int exponent() const { return factors_.empty() ? Int(1) : factors_.back(); }
  bool cyclic() const { return factors_.size() <= 1; }

  bool operator==(const AbelianGroup& o) const { return factors_ == o.factors_; }
  bool operator!=(const AbelianGroup& o) const { return !(*this == o); }
  bool operator<(const AbelianGroup& o) const { return factors_ < o.factors_; }

  AbelianGroup direct_sum(const AbelianGroup& o) const {
    std::vector<Int> m = factors_;
    m.insert(m.end(), o.factors_.begin(), o.factors_.end());
    return from_moduli(std::move(m));
  }

  std::string str() const {
    if (factors_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += " + ";
      s += "Z" + factors_[i].str();
    }
    return s;
  }

private:
  std::vector<Int> factors_;
};

}  // namespace phlat
