#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "phlat/duality.hpp"
#include "phlat/io.hpp"

using namespace phlat;

namespace {
IntMatrix M(const std::string& s) { return parse_matrix_text(s); }

IntMatrix sfm(Int d, std::vector<Int> a) {  // standard-form matrix, column as given
  size_t n = a.size() + 1;
  IntMatrix b = IntMatrix::identity(n);
  for (size_t i = 0; i + 1 < n; ++i) b(i, n - 1) = a[i];
  b(n - 1, n - 1) = d;
  return b;
}
}  // namespace

TEST_CASE("opposite on fixed inputs") {
  auto d = opposite(M("1 1 1; 0 2 4; 0 0 8"));
  CHECK(d.bop == M("8 0 0; -4 2 0; 1 -1 1"));
  CHECK(d.m == std::vector<Int>{8, 4, 8});
  CHECK(d.bop.transpose() * d.b == d.delta());

  auto id = opposite(IntMatrix::identity(4));
  CHECK(id.bop == IntMatrix::identity(4));
  CHECK(id.m == std::vector<Int>(4, 1));

  auto st = opposite(M("1 0 2; 0 1 3; 0 0 6"));
  CHECK(st.m == std::vector<Int>{3, 2, 6});
}

TEST_CASE("opposite is an involution") {
  CHECK(involution_check(M("1 1 1; 0 2 4; 0 0 8")));
  CHECK(involution_check(IntMatrix::identity(3)));

  std::mt19937_64 rng(2024);
  int done = 0;
  while (done < 50) {
    IntMatrix b(3, 3);
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = 0; j < 3; ++j) b(i, j) = Int(static_cast<long long>(rng() % 19)) - 9;
    if (determinant(b) == 0 || !is_ns(b)) continue;
    CHECK(involution_check(b));
    auto d = opposite(b);
    CHECK(d.bop.transpose() * b == d.delta());
    CHECK(b.transpose() * d.bop == d.delta());
    ++done;
  }
}

TEST_CASE("sequence splitting") {
  CHECK_FALSE(sequence_splits(M("1 1 1; 0 2 4; 0 0 8")));
  CHECK(sequence_splits(M("1 2; 0 5")));
  CHECK(sequence_splits(IntMatrix::identity(3)));
}

TEST_CASE("super splitting") {
  CHECK(super_splits(sfm(5, {1, 2})));     // 1 + 1 + 4 = 6 coprime to 5
  CHECK_FALSE(super_splits(sfm(5, {2})));  // 1 + 4 = 5
  CHECK(super_splits(IntMatrix::identity(3)));

  // symmetric in b <-> b^op
  for (auto& mm : collect_weakly_terminal(3, 12)) {
    IntMatrix b = widen(mm);
    CHECK(super_splits(b) == super_splits(opposite(b).bop));
  }
}

TEST_CASE("split criterion through the standard-form determinant (empirical)") {
  // sufficiency is proven: gcd(1 + sum a_i^2/(d,a_i), d) = 1 forces the span;
  // the converse without the unit condition on the a_i is tallied here
  long long agree = 0, total = 0;
  for (long long d = 2; d <= 50; ++d)
    for (long long a1 = 0; a1 < d; ++a1)
      for (long long a2 = a1; a2 < d; ++a2) {
        if (std::gcd(std::gcd(a1, a2), d) != 1) continue;
        IntMatrix b = sfm(d, {a1, a2});
        Int crit = 1 + Int(a1) * a1 / std::gcd(a1, d) + Int(a2) * a2 / std::gcd(a2, d);
        bool coprime = gcd_val(crit, Int(d)) == 1;
        bool ss = super_splits(b);
        ++total;
        if (coprime) CHECK(ss);  // proven direction
        if (coprime == ss) ++agree;
      }
  INFO("criterion agreement " << agree << "/" << total);
  CHECK(agree == total);  // observed: the unit condition is indeed unnecessary
}

TEST_CASE("dual compatibility") {
  CHECK(is_dual_compatible(sfm(6, {2, 3})));
  CHECK_FALSE(is_dual_compatible(sfm(6, {1, 5})));
  CHECK_FALSE(is_dual_compatible(sfm(4, {2, 3})));
  CHECK_THROWS_AS(is_dual_compatible(M("1 1 1; 0 2 4; 0 0 8")), error);  // block below n-1
  CHECK_THROWS_AS(is_dual_compatible(sfm(6, {0, 5})), error);            // decomposable
}

TEST_CASE("dual conjugacy") {
  CHECK(is_dual_conjugate(sfm(5, {2})));
  for (long long a = 1; a <= 6; ++a) CHECK_FALSE(is_dual_conjugate(sfm(7, {a})));
  CHECK(is_dual_conjugate(sfm(13, {5})));
  CHECK_FALSE(is_dual_conjugate(sfm(13, {2})));
  CHECK(is_dual_conjugate(sfm(10, {3})));  // 3^2 = -1 mod 10
}

TEST_CASE("exponent identity and order bookkeeping") {
  for (long long d = 1; d <= 15; ++d)
    for (auto& mm : collect_weakly_terminal(3, d)) {
      IntMatrix b = widen(mm);
      auto dd = opposite(b);
      AbelianGroup jb = snf(b), jop = snf(dd.bop);
      Int l = 1, prod = 1;
      for (auto& mi : dd.m) {
        l = lcm_val(l, mi);
        prod *= mi;
      }
      CHECK(jb.exponent() == l);
      CHECK(jop.exponent() == l);
      CHECK(jb.order() * jop.order() == prod);
    }
}

TEST_CASE("class functoriality of the opposite") {
  std::mt19937_64 rng(5);
  auto mats = collect_weakly_terminal(3, 18);
  auto perms = all_permutations(3);
  for (int t = 0; t < 25; ++t) {
    IntMatrix b = widen(mats[rng() % mats.size()]);
    auto p = perms[rng() % perms.size()];
    IntMatrix b2 = weakly_terminal(b.col_permuted(p));
    IntMatrix o1 = opposite(b).bop, o2 = opposite(b2).bop;
    bool related = false;
    for (auto& q : perms) related = related || (hnf_form(o1.col_permuted(q)) == hnf_form(o2));
    CHECK(related);
  }
}

TEST_CASE("equivalent conditions for a large block on both sides") {
  for (long long d = 2; d <= 15; ++d)
    for (auto& mm : collect_weakly_terminal(3, d)) {
      IntMatrix b = widen(mm);
      if (max_one_block(b) != 2) continue;
      auto dd = opposite(b);
      bool p1 = max_one_block(dd.bop) == 2;
      bool p2 = snf(dd.bop).cyclic();
      bool p3 = abs_val(determinant(dd.bop)) == d;
      AbelianGroup mid = AbelianGroup::from_moduli(dd.m);
      bool p4 = mid == AbelianGroup({Int(d), Int(d)});
      auto sf = to_standard_form(b);
      bool p5 = true;
      std::vector<Int> di;
      for (auto& a : sf.a) di.push_back(sf.d / gcd_val(sf.d, a));
      for (size_t i = 0; i < di.size(); ++i)
        for (size_t j = i + 1; j < di.size(); ++j)
          if (gcd_val(di[i], di[j]) != 1) p5 = false;
      CHECK(p1 == p2);
      CHECK(p2 == p3);
      CHECK(p3 == p4);
      CHECK(p4 == p5);
    }
}
