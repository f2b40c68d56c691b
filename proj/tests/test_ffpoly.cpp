#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "polyfermion/error.hpp"
#include "polyfermion/ffpoly.hpp"

using namespace polyfermion;

TEST_CASE("next_prime examples") {
  CHECK(next_prime(5) == 5);
  CHECK(next_prime(8) == 11);
  CHECK(next_prime(344) == 347);
  CHECK(next_prime(2) == 2);
  CHECK_THROWS_AS(next_prime(1), Error);
}

TEST_CASE("kth_next_prime examples") {
  CHECK(kth_next_prime(7, 1) == 11);
  CHECK(kth_next_prime(7, 2) == 13);
  CHECK(kth_next_prime(501, 1) == 503);
  CHECK_THROWS_AS(kth_next_prime(7, 0), Error);
}

TEST_CASE("primality agrees with trial division up to 10^6") {
  for (u64 n = 0; n <= 1000000; ++n) REQUIRE(is_prime(n) == oracle::is_prime(n));
}

TEST_CASE("next_prime is least and satisfies Bertrand") {
  u64 p = next_prime(2);
  for (u64 n = 2; n <= 1000000; ++n) {
    if (n > p) p = next_prime(n);
    REQUIRE(p == next_prime(n));
    REQUIRE(p < 2 * n);
  }
  // Spot-check the walk against trial division.
  for (u64 n : {2ull, 90ull, 1000ull, 65536ull, 999983ull}) {
    const u64 q = next_prime(n);
    for (u64 k = n; k < q; ++k) CHECK_FALSE(oracle::is_prime(k));
    CHECK(oracle::is_prime(q));
  }
}

TEST_CASE("large 64-bit primes") {
  CHECK(is_prime(18446744073709551557ull));
  CHECK_FALSE(is_prime(18446744073709551557ull - 2));
  CHECK(is_prime(1000000007ull));
  CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("ceil_integer_root is exact at perfect powers") {
  CHECK(ceil_integer_root(125, 3) == 5);
  CHECK(ceil_integer_root(126, 3) == 6);
  CHECK(ceil_integer_root(1, 5) == 1);
  CHECK(ceil_integer_root(1000000, 2) == 1000);
  CHECK(ceil_integer_root(1000001, 2) == 1001);
  for (u64 r = 2; r < 2000; r += 7)
    for (unsigned k = 1; k <= 4; ++k) {
      u64 n = 1;
      for (unsigned i = 0; i < k; ++i) n *= r;
      REQUIRE(ceil_integer_root(n, k) == r);
      REQUIRE(ceil_integer_root(n + 1, k) == r + 1);
      REQUIRE(ceil_integer_root(n - 1, k) == (k == 1 ? r - 1 : r));
    }
}

TEST_CASE("poly_eval examples") {
  PolyFn sq{5, {0, 0, 1}}, shift{5, {2, 1}}, zero{5, {0}};
  CHECK(poly_eval(sq, 3) == 4);
  CHECK(poly_eval(shift, 4) == 1);
  for (u64 x = 0; x < 5; ++x) CHECK(poly_eval(zero, x) == 0);
  CHECK_THROWS_AS(poly_eval(sq, 5), Error);
}

TEST_CASE("enumerate_polys counts and order") {
  CHECK(enumerate_polys(1, 3).size() == 9);
  CHECK(enumerate_polys(2, 5).size() == 125);
  const auto c = enumerate_polys(0, 7);
  REQUIRE(c.size() == 7);
  for (u64 k = 0; k < 7; ++k) CHECK(c[k].coeffs == std::vector<u64>{k});
  const auto q = enumerate_polys(2, 5);
  CHECK(q[5].coeffs == std::vector<u64>{0, 1, 0});
  CHECK(q[7].coeffs == std::vector<u64>{2, 1, 0});
  CHECK(q[25].coeffs == std::vector<u64>{0, 0, 1});
  for (u64 m = 0; m < q.size(); ++m) CHECK(poly_index(q[m]) == m);
  CHECK_THROWS_AS(enumerate_polys(3, 3), Error);
}

TEST_CASE("count_intersections examples") {
  PolyFn x{5, {0, 1}}, sq{5, {0, 0, 1}}, shift{5, {2, 1}}, zero{5, {0}};
  CHECK(count_intersections(x, sq, 5) == 2);
  CHECK(count_intersections(x, shift, 5) == 0);
  CHECK(count_intersections(zero, shift, 5) == 1);
  CHECK_THROWS_AS(count_intersections(x, x, 5), Error);
}

TEST_CASE("distinct value tables and root bound") {
  for (auto [D, p] : std::vector<std::pair<unsigned, u64>>{{1, 3}, {1, 7}, {2, 5}, {2, 13}, {3, 7}}) {
    const auto polys = enumerate_polys(D, p);
    std::set<std::vector<u64>> tables;
    for (const auto& f : polys) {
      std::vector<u64> t;
      for (u64 x = 0; x < p; ++x) t.push_back(poly_eval(f, x));
      tables.insert(t);
    }
    CHECK(tables.size() == polys.size());
    std::mt19937_64 rng(7);
    for (int k = 0; k < 2000; ++k) {
      const auto& f = polys[rng() % polys.size()];
      const auto& g = polys[rng() % polys.size()];
      if (f == g) continue;
      REQUIRE(count_intersections(f, g, p) <= D);
    }
  }
}
