#pragma once

#include <cstdint>
#include <vector>

namespace polyfermion {

using u64 = std::uint64_t;

bool is_prime(u64 n);

// Least prime p >= n.
u64 next_prime(u64 n);

// k-th prime strictly greater than n.
u64 kth_next_prime(u64 n, u64 k);

// Smallest r with r^k >= n.
u64 ceil_integer_root(u64 n, unsigned k);

// Polynomial over Z_p with coeffs[k] multiplying x^k.
struct PolyFn {
  u64 modulus = 2;
  std::vector<u64> coeffs;

  unsigned degree_bound() const { return coeffs.empty() ? 0 : unsigned(coeffs.size() - 1); }
  friend bool operator==(const PolyFn&, const PolyFn&) = default;
};

// Base-p digits of index become the coefficients, least significant first.
PolyFn poly_from_index(u64 index, unsigned D, u64 p);
u64 poly_index(const PolyFn& f);

u64 poly_eval(const PolyFn& f, u64 x);

std::vector<PolyFn> enumerate_polys(unsigned D, u64 p);

// Count of x in [0, domain) with f(x) == g(x).
u64 count_intersections(const PolyFn& f, const PolyFn& g, u64 domain);

}  // namespace polyfermion
