#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "polyfermion/error.hpp"

namespace polyfermion {

using Real = boost::multiprecision::mpfr_float;

enum class InterpKind { majority, ctrl_phase };

struct InterpolationSpec {
  InterpKind kind = InterpKind::majority;
  int size = 1;  // L for majority, n for ctrl_phase

  int node_count() const { return size + 1; }
  // Node m sits at cos(m*pi/size).
  int value(int m) const {
    if (kind == InterpKind::majority) return 2 * m < size ? 1 : -1;
    return m == size ? -1 : 1;
  }
  int degree() const { return 2 * size - 1; }
};

unsigned default_precision_bits(int degree);

// Sets the working precision of Real for the lifetime of the guard.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

// Newton form: A(x) = c0 + c1 (x - z0) + c2 (x - z0)(x - z1) + ...
template <class Scalar>
struct HermitePoly {
  InterpolationSpec spec;
  std::vector<Scalar> z;
  std::vector<Scalar> coeffs;
  unsigned precision_bits = 53;

  int degree() const { return int(coeffs.size()) - 1; }
};

template <class Scalar>
std::vector<Scalar> hermite_nodes(const InterpolationSpec& s) {
  using std::cos;
  const Scalar pi = boost::math::constants::pi<Scalar>();
  std::vector<Scalar> x(s.node_count());
  for (int m = 0; m <= s.size; ++m) {
    if (m == 0)
      x[m] = Scalar(1);
    else if (m == s.size)
      x[m] = Scalar(-1);
    else if (2 * m == s.size)
      x[m] = Scalar(0);
    else
      x[m] = cos(pi * m / s.size);
  }
  return x;
}

template <class Scalar>
HermitePoly<Scalar> hermite_build(const InterpolationSpec& s, unsigned bits) {
  if (s.size < 1) throw Error(Errc::invalid_argument, "interpolation size must be >= 1");
  if (s.kind == InterpKind::majority && s.size % 2 == 0)
    throw Error(Errc::invalid_argument, "majority interpolation needs odd L");
  HermitePoly<Scalar> p;
  p.spec = s;
  p.precision_bits = bits;
  const std::vector<Scalar> x = hermite_nodes<Scalar>(s);
  const int n = s.size;
  // Interior nodes appear twice; their first divided difference is the
  // prescribed zero derivative.
  std::vector<int> node_of;
  node_of.push_back(0);
  for (int m = 1; m < n; ++m) {
    node_of.push_back(m);
    node_of.push_back(m);
  }
  node_of.push_back(n);
  const int N = int(node_of.size());
  p.z.reserve(N);
  for (int k : node_of) p.z.push_back(x[k]);

  std::vector<Scalar> col(N - 1);
  for (int i = 0; i + 1 < N; ++i) {
    const int a = node_of[i], b = node_of[i + 1];
    const int dv = s.value(b) - s.value(a);
    if (a == b || dv == 0)
      col[i] = Scalar(0);
    else
      col[i] = Scalar(dv) / (p.z[i + 1] - p.z[i]);
  }
  p.coeffs.reserve(N);
  p.coeffs.push_back(Scalar(s.value(0)));
  p.coeffs.push_back(col[0]);
  for (int k = 2; k < N; ++k) {
    for (int i = 0; i + k < N; ++i) col[i] = (col[i + 1] - col[i]) / (p.z[i + k] - p.z[i]);
    col.pop_back();
    p.coeffs.push_back(col[0]);
  }
  return p;
}

template <class Scalar>
Scalar hermite_eval(const HermitePoly<Scalar>& p, const Scalar& x) {
  const int n = int(p.coeffs.size());
  Scalar r = p.coeffs[n - 1];
  for (int i = n - 2; i >= 0; --i) {
    r *= x - p.z[i];
    r += p.coeffs[i];
  }
  return r;
}

// Value, first and second derivative.
template <class Scalar>
std::array<Scalar, 3> hermite_eval_d2(const HermitePoly<Scalar>& p, const Scalar& x) {
  const int n = int(p.coeffs.size());
  Scalar f = p.coeffs[n - 1], d1 = Scalar(0), d2 = Scalar(0);
  for (int i = n - 2; i >= 0; --i) {
    const Scalar t = x - p.z[i];
    d2 = d2 * t + 2 * d1;
    d1 = d1 * t + f;
    f = f * t + p.coeffs[i];
  }
  return {f, d1, d2};
}

// Monomial coefficients, lowest order first.
template <class Scalar>
std::vector<Scalar> hermite_monomial(const HermitePoly<Scalar>& p) {
  const int n = int(p.coeffs.size());
  std::vector<Scalar> c(n, Scalar(0));
  c[0] = p.coeffs[n - 1];
  int deg = 0;
  for (int i = n - 2; i >= 0; --i) {
    // c <- c * (x - z_i) + coeffs[i]
    for (int k = deg + 1; k >= 1; --k) c[k] = c[k - 1] - p.z[i] * c[k];
    c[0] = -p.z[i] * c[0] + p.coeffs[i];
    ++deg;
  }
  return c;
}

HermitePoly<Real> hermite_interpolate(const InterpolationSpec& spec, unsigned precision_bits = 0);
HermitePoly<Real> ctrl_phase_poly(int n, unsigned precision_bits = 0);

Real eval_poly(const HermitePoly<Real>& p, const Real& x);
double eval_poly(const HermitePoly<Real>& p, double x);

struct Extremum {
  Real x;
  Real value;
  int local_minima = 0;
};

std::optional<Extremum> least_local_min(const HermitePoly<Real>& p);
std::optional<Extremum> least_local_min(InterpKind kind, int size, unsigned precision_bits = 0);

struct BoundReport {
  bool pass = true;
  std::string failure;
  double witness = 0;
  double tolerance = 0;
};

BoundReport bound_check(const HermitePoly<Real>& p, int grid_size);

// Largest node-reproduction error.
Real node_error(const HermitePoly<Real>& p);

std::string to_decimal(const Real& v, int digits);

struct ScanRow {
  int size = 0;
  int degree = 0;
  std::optional<Extremum> min;
  unsigned precision_bits = 0;
};

// Rows in increasing size; `jobs` workers, order-stable.
std::vector<ScanRow> scan_hermite(InterpKind kind, int from, int to, int step,
                                  unsigned precision_bits, int jobs);
std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace polyfermion
