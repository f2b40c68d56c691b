#include "polyfermion/hermite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace polyfermion {

namespace {

constexpr unsigned kMaxPrecisionBits = 1u << 22;

unsigned bits_to_digits10(unsigned bits) { return unsigned(std::ceil(bits * 0.30102999566398120)) + 1; }

unsigned resolve_bits(unsigned bits, int degree) {
  if (bits == 0) bits = default_precision_bits(degree);
  if (bits < 64) throw Error(Errc::invalid_argument, "precision must be at least 64 bits");
  if (bits > kMaxPrecisionBits) throw Error(Errc::resource, "requested precision too large");
  return bits;
}

// Searches (lo_theta, hi_theta) in angle space, where x = cos(theta).
struct Gap {
  Real lo, hi;  // angles
  bool lo_is_node, hi_is_node;
};

std::vector<Gap> search_gaps(const InterpolationSpec& s) {
  const Real pi = boost::math::constants::pi<Real>();
  std::vector<Gap> gaps;
  const int n = s.size;
  if (s.kind == InterpKind::majority) {
    // (0, 1): nodes m < n/2, then the stretch down to x = 0.
    const int last = n / 2;
    for (int m = 0; m < last; ++m) gaps.push_back({pi * m / n, pi * (m + 1) / n, true, true});
    gaps.push_back({pi * last / n, pi / 2, true, false});
  } else {
    for (int m = 0; m < n; ++m) gaps.push_back({pi * m / n, pi * (m + 1) / n, true, true});
  }
  return gaps;
}

// Minimum of A inside [a, b] (x-space) with A'(a) < 0 < A'(b).
Real refine_min(const HermitePoly<Real>& p, Real a, Real b) {
  const Real tol = Real(1e-15);
  Real x = (a + b) / 2;
  for (int it = 0; it < 200; ++it) {
    auto d = hermite_eval_d2(p, x);
    if (d[1] < 0)
      a = x;
    else
      b = x;
    if (b - a < tol) break;
    Real next;
    bool newton = d[2] > 0;
    if (newton) {
      next = x - d[1] / d[2];
      newton = next > a && next < b;
    }
    if (!newton) next = (a + b) / 2;
    const Real step = abs(next - x);
    x = next;
    if (newton && step < tol) break;
  }
  return x;
}

std::optional<Extremum> least_min_impl(const HermitePoly<Real>& p) {
  using std::cos;
  constexpr int kSamples = 4;
  std::optional<Extremum> best;
  int found = 0;
  for (const Gap& g : search_gaps(p.spec)) {
    // Samples in increasing x, i.e. decreasing angle.
    std::vector<Real> xs;
    if (!g.hi_is_node) xs.push_back(cos(g.hi));
    for (int k = kSamples - 1; k >= 0; --k) xs.push_back(cos(g.lo + (g.hi - g.lo) * (2 * k + 1) / (2 * kSamples)));
    std::vector<Real> d1(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) d1[k] = hermite_eval_d2(p, xs[k])[1];
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      if (!(d1[k] < 0 && d1[k + 1] > 0)) continue;
      Real x = refine_min(p, xs[k], xs[k + 1]);
      Real v = hermite_eval(p, x);
      ++found;
      if (!best || v < best->value) best = Extremum{x, v, 0};
    }
  }
  if (best) best->local_minima = found;
  return best;
}

}  // namespace

unsigned default_precision_bits(int degree) { return std::max(256u, 3u * unsigned(std::max(degree, 0))); }

PrecisionScope::PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

HermitePoly<Real> hermite_interpolate(const InterpolationSpec& spec, unsigned precision_bits) {
  const unsigned bits = resolve_bits(precision_bits, spec.degree());
  PrecisionScope scope(bits);
  return hermite_build<Real>(spec, bits);
}

HermitePoly<Real> ctrl_phase_poly(int n, unsigned precision_bits) {
  if (n < 1) throw Error(Errc::invalid_argument, "ctrl_phase needs n >= 1");
  return hermite_interpolate({InterpKind::ctrl_phase, n}, precision_bits);
}

Real eval_poly(const HermitePoly<Real>& p, const Real& x) {
  PrecisionScope scope(p.precision_bits);
  return hermite_eval(p, Real(x));
}

double eval_poly(const HermitePoly<Real>& p, double x) {
  PrecisionScope scope(p.precision_bits);
  return hermite_eval(p, Real(x)).convert_to<double>();
}

std::optional<Extremum> least_local_min(const HermitePoly<Real>& p) {
  PrecisionScope scope(p.precision_bits);
  return least_min_impl(p);
}

std::optional<Extremum> least_local_min(InterpKind kind, int size, unsigned precision_bits) {
  const InterpolationSpec spec{kind, size};
  const unsigned bits = resolve_bits(precision_bits, spec.degree());
  PrecisionScope scope(bits);
  return least_min_impl(hermite_build<Real>(spec, bits));
}

Real node_error(const HermitePoly<Real>& p) {
  PrecisionScope scope(p.precision_bits);
  const auto x = hermite_nodes<Real>(p.spec);
  Real worst = 0;
  for (int m = 0; m <= p.spec.size; ++m) {
    Real e = abs(hermite_eval(p, x[m]) - p.spec.value(m));
    if (e > worst) worst = e;
  }
  return worst;
}

BoundReport bound_check(const HermitePoly<Real>& p, int grid_size) {
  if (p.spec.kind != InterpKind::majority)
    throw Error(Errc::invalid_argument, "bound_check applies to majority polynomials");
  if (grid_size < 2) throw Error(Errc::invalid_argument, "grid needs at least two points");
  PrecisionScope scope(p.precision_bits);
  BoundReport r;
  const Real tol = pow(Real(2), -int(p.precision_bits) / 4);
  r.tolerance = tol.convert_to<double>();
  auto fail = [&](const std::string& what, const Real& x) {
    if (!r.pass) return;
    r.pass = false;
    r.failure = what;
    r.witness = x.convert_to<double>();
  };
  for (int k = 0; k < grid_size && r.pass; ++k) {
    const Real t = Real(k) / (grid_size - 1);
    if (hermite_eval(p, t) > 1 + tol) fail("A > 1 on [0,1]", t);
    if (hermite_eval(p, Real(-t)) < -1 - tol) fail("A < -1 on [-1,0]", Real(-t));
    const Real u = 1 + t;
    if (abs(hermite_eval(p, u)) < 1 - tol) fail("|A| < 1 on [1,2]", u);
    if (abs(hermite_eval(p, Real(-u))) < 1 - tol) fail("|A| < 1 on [-2,-1]", Real(-u));
  }
  const auto x = hermite_nodes<Real>(p.spec);
  for (int m = 1; m < p.spec.size && r.pass; ++m)
    if (abs(hermite_eval_d2(p, x[m])[1]) > tol) fail("A' nonzero at interior node", x[m]);
  return r;
}

std::string to_decimal(const Real& v, int digits) {
  return v.str(digits, std::ios_base::fixed);
}

std::vector<ScanRow> scan_hermite(InterpKind kind, int from, int to, int step, unsigned precision_bits,
                                  int jobs) {
  if (step < 1) throw Error(Errc::invalid_argument, "scan step must be >= 1");
  std::vector<int> sizes;
  for (int s = from; s <= to; s += step) {
    if (kind == InterpKind::majority && s % 2 == 0) continue;
    sizes.push_back(s);
  }
  std::vector<ScanRow> rows(sizes.size());
  if (sizes.empty()) return rows;
  // One precision for the whole scan: the working precision is process-wide.
  const int top = InterpolationSpec{kind, sizes.back()}.degree();
  const unsigned bits = resolve_bits(precision_bits, top);
  PrecisionScope scope(bits);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    PrecisionScope local(bits);
    for (std::size_t i; (i = next++) < sizes.size();) {
      const InterpolationSpec spec{kind, sizes[i]};
      rows[i].size = sizes[i];
      rows[i].degree = spec.degree();
      rows[i].precision_bits = bits;
      rows[i].min = least_min_impl(hermite_build<Real>(spec, bits));
    }
  };
  const int n = std::max(1, std::min<int>(jobs, int(sizes.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "L,degree,least_local_min,x_at_min,precision_bits\n";
  for (const auto& r : rows) {
    os << r.size << ',' << r.degree << ',';
    if (r.min)
      os << to_decimal(r.min->value, 12) << ',' << to_decimal(r.min->x, 12);
    else
      os << ',';
    os << ',' << r.precision_bits << '\n';
  }
  return os.str();
}

}  // namespace polyfermion
