#include "polyfermion/ffpoly.hpp"

#include <limits>

#include "polyfermion/error.hpp"

namespace polyfermion {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return u64((unsigned __int128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is exact for all 64-bit n.
  for (u64 a : {2, 325, 9375, 28178, 450775, 9780504, 1795265022}) {
    u64 x = powmod(a, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 next_prime(u64 n) {
  if (n < 2) throw Error(Errc::invalid_argument, "next_prime needs n >= 2");
  while (!is_prime(n)) {
    if (n == std::numeric_limits<u64>::max()) throw Error(Errc::capacity, "no 64-bit prime above n");
    ++n;
  }
  return n;
}

u64 kth_next_prime(u64 n, u64 k) {
  if (n < 2) throw Error(Errc::invalid_argument, "kth_next_prime needs n >= 2");
  if (k == 0) throw Error(Errc::invalid_argument, "kth_next_prime needs k >= 1");
  u64 p = n;
  for (u64 i = 0; i < k; ++i) p = next_prime(p + 1);
  return p;
}

u64 ceil_integer_root(u64 n, unsigned k) {
  if (k == 0) throw Error(Errc::invalid_argument, "root order must be >= 1");
  if (n <= 1) return n;
  // r^k >= n, computed without overflow.
  auto reaches = [&](u64 r) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= r;
      if (acc >= n) return true;
    }
    return acc >= n;
  };
  u64 lo = 1, hi = n;
  while (lo < hi) {
    u64 mid = lo + (hi - lo) / 2;
    if (reaches(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

PolyFn poly_from_index(u64 index, unsigned D, u64 p) {
  PolyFn f;
  f.modulus = p;
  f.coeffs.resize(D + 1);
  for (unsigned k = 0; k <= D; ++k) {
    f.coeffs[k] = index % p;
    index /= p;
  }
  if (index) throw Error(Errc::out_of_range, "index exceeds p^(D+1)");
  return f;
}

u64 poly_index(const PolyFn& f) {
  u64 m = 0;
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) m = m * f.modulus + *it;
  return m;
}

u64 poly_eval(const PolyFn& f, u64 x) {
  if (x >= f.modulus) throw Error(Errc::invalid_argument, "evaluation point outside Z_p");
  u64 r = 0;
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) r = (mulmod(r, x, f.modulus) + *it) % f.modulus;
  return r;
}

std::vector<PolyFn> enumerate_polys(unsigned D, u64 p) {
  if (D >= p) throw Error(Errc::invalid_argument, "degree must be below the modulus");
  if (!is_prime(p)) throw Error(Errc::invalid_argument, "modulus must be prime");
  u64 count = 1;
  for (unsigned k = 0; k <= D; ++k) {
    if (count > (u64{1} << 32) / p) throw Error(Errc::capacity, "too many polynomials to enumerate");
    count *= p;
  }
  std::vector<PolyFn> out;
  out.reserve(count);
  for (u64 m = 0; m < count; ++m) out.push_back(poly_from_index(m, D, p));
  return out;
}

u64 count_intersections(const PolyFn& f, const PolyFn& g, u64 domain) {
  if (f.modulus != g.modulus) throw Error(Errc::invalid_argument, "moduli differ");
  if (domain > f.modulus) throw Error(Errc::invalid_argument, "domain larger than modulus");
  auto trimmed = [](std::vector<u64> c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
  };
  if (trimmed(f.coeffs) == trimmed(g.coeffs))
    throw Error(Errc::invalid_argument, "identical polynomials");
  u64 n = 0;
  for (u64 x = 0; x < domain; ++x) n += poly_eval(f, x) == poly_eval(g, x);
  return n;
}

}  // namespace polyfermion
