#include "polyfermion/qsp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "polyfermion/error.hpp"

namespace polyfermion {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct C {
  Real re, im;
  C() : re(0), im(0) {}
  C(Real r) : re(std::move(r)), im(0) {}
  C(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
};

C operator+(const C& a, const C& b) { return {a.re + b.re, a.im + b.im}; }
C operator-(const C& a, const C& b) { return {a.re - b.re, a.im - b.im}; }
C operator*(const C& a, const C& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
C operator/(const C& a, const C& b) {
  const Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
C conj(const C& a) { return {a.re, -a.im}; }
Real norm2(const C& a) { return a.re * a.re + a.im * a.im; }
Real cabs(const C& a) { return sqrt(norm2(a)); }

using CPoly = std::vector<C>;

C horner(const CPoly& p, const C& z) {
  C r = p.back();
  for (int k = int(p.size()) - 2; k >= 0; --k) r = r * z + p[k];
  return r;
}

void horner_d1(const CPoly& p, const C& z, C& f, C& d) {
  f = p.back();
  d = C();
  for (int k = int(p.size()) - 2; k >= 0; --k) {
    d = d * z + f;
    f = f * z + p[k];
  }
}

// Aberth-Ehrlich iteration on a polynomial with nonzero leading coefficient.
std::vector<C> aberth_roots(const CPoly& poly, unsigned bits) {
  const int n = int(poly.size()) - 1;
  if (n < 1) return {};
  CPoly p = poly;
  const C lead = p.back();
  for (auto& c : p) c = c / lead;
  // Cauchy bound for the starting circle.
  Real R = 0;
  for (int k = 0; k < n; ++k) R = std::max(R, cabs(p[k]));
  R = (R + 1) / 2;
  std::vector<C> z(n);
  for (int k = 0; k < n; ++k) {
    const Real ang = 2 * boost::math::constants::pi<Real>() * k / n + Real(0.4);
    z[k] = C(R * cos(ang), R * sin(ang));
  }
  const Real tol = pow(Real(2), -int(bits) * 9 / 10);
  for (int it = 0; it < 2000; ++it) {
    Real worst = 0;
    for (int k = 0; k < n; ++k) {
      C f, d;
      horner_d1(p, z[k], f, d);
      if (norm2(f) == 0) continue;
      const C ratio = f / d;
      C s;
      for (int j = 0; j < n; ++j)
        if (j != k) s = s + C(1) / (z[k] - z[j]);
      const C w = ratio / (C(1) - ratio * s);
      z[k] = z[k] - w;
      const Real rel = cabs(w) / std::max(Real(1), cabs(z[k]));
      if (rel > worst) worst = rel;
    }
    if (worst < tol) break;
  }
  return z;
}

// Divide by (t - a) and return the remainder.
Real deflate(std::vector<Real>& c, const Real& a) {
  const int n = int(c.size()) - 1;
  std::vector<Real> b(n);
  b[n - 1] = c[n];
  for (int k = n - 1; k >= 1; --k) b[k - 1] = c[k] + a * b[k];
  const Real rem = c[0] + a * b[0];
  c = std::move(b);
  return rem;
}

int parity_of(const std::vector<Real>& a, Real& odd_mass, Real& even_mass) {
  odd_mass = 0;
  even_mass = 0;
  for (std::size_t k = 0; k < a.size(); ++k) (k % 2 ? odd_mass : even_mass) += abs(a[k]);
  return odd_mass > even_mass ? 1 : 0;
}

Real real_eval(const std::vector<Real>& a, const Real& x) {
  Real r = a.back();
  for (int k = int(a.size()) - 2; k >= 0; --k) r = r * x + a[k];
  return r;
}

struct Target {
  std::vector<Real> mono;        // P as real monomial coefficients
  std::vector<Real> known_t;     // double roots of r(t), t = x^2
  bool half_angle = false;
};

std::vector<double> chebyshev_points(int n) {
  std::vector<double> x(n);
  for (int k = 0; k < n; ++k) x[k] = std::cos(kPi * (k + 0.5) / n);
  return x;
}

using M2 = Eigen::Matrix2cd;

M2 iterate_matrix(double x, double phi) {
  const double s = std::sqrt(std::max(0.0, 1 - x * x));
  const cplx I(0, 1);
  M2 W;
  W << x, -I * std::polar(1.0, -phi) * s, -I * std::polar(1.0, phi) * s, x;
  return W;
}

cplx response(const std::vector<double>& phi, double alpha, double x) {
  M2 U = M2::Identity();
  for (double p : phi) U = U * iterate_matrix(x, p);
  return U(0, 0) * std::polar(1.0, alpha);
}

double residual_of(const std::vector<double>& phi, double alpha, const std::vector<double>& xs,
                   const std::vector<double>& target) {
  double worst = 0;
  for (std::size_t j = 0; j < xs.size(); ++j)
    worst = std::max(worst, std::abs(response(phi, alpha, xs[j]) - target[j]));
  return worst;
}

// Gauss-Newton on the phases against the block values at the check points.
void refine(std::vector<double>& phi, double& alpha, const std::vector<double>& xs,
            const std::vector<double>& target, int iterations) {
  const int n = int(phi.size()) + 1, m = int(xs.size());
  auto pack = [&](const std::vector<double>& p, double a) {
    Eigen::VectorXd r(2 * m);
    for (int j = 0; j < m; ++j) {
      const cplx d = response(p, a, xs[j]) - target[j];
      r[2 * j] = d.real();
      r[2 * j + 1] = d.imag();
    }
    return r;
  };
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd r0 = pack(phi, alpha);
    Eigen::MatrixXd J(2 * m, n);
    const double h = 1e-7;
    for (int k = 0; k < n; ++k) {
      auto p = phi;
      double a = alpha;
      (k + 1 < n ? p[k] : a) += h;
      J.col(k) = (pack(p, a) - r0) / h;
    }
    const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-r0);
    for (int k = 0; k + 1 < n; ++k) phi[k] += step[k];
    alpha += step[n - 1];
    if (step.norm() < 1e-15) break;
  }
}

AngleSequence solve(const Target& tg, unsigned bits, const QspOptions& opt) {
  std::vector<Real> A = tg.mono;
  while (A.size() > 1 && A.back() == 0) A.pop_back();
  const int N = int(A.size()) - 1;

  Real odd, even;
  const int par = parity_of(A, odd, even);
  const Real tiny = pow(Real(2), -int(bits) / 2);
  if (par != N % 2 || (par ? even : odd) > tiny * (odd + even))
    throw Error(Errc::infeasible_polynomial, "polynomial lacks the parity of its degree");
  for (int k = 0; k <= N; ++k)
    if (k % 2 != N % 2) A[k] = 0;

  // Bounds |A| <= 1 inside [-1, 1] and |A(+-1)| = 1.
  for (double x : chebyshev_points(4 * N + 64)) {
    if (abs(real_eval(A, Real(x))) > 1 + 1e-9)
      throw Error(Errc::infeasible_polynomial, "|A| exceeds 1 inside [-1, 1]");
  }
  if (abs(abs(real_eval(A, Real(1))) - 1) > 1e-9)
    throw Error(Errc::infeasible_polynomial, "|A(1)| must equal 1");

  AngleSequence out;
  out.half_angle = tg.half_angle;
  if (N == 0) {
    out.alpha = A[0] > 0 ? Angle::pi_frac(0, 1) : Angle::pi_frac(1, 1);
    return out;
  }

  // (1 - A^2) / (1 - x^2), then strip x^{2 eps} and pass to t = x^2.
  std::vector<Real> f(2 * N + 1, Real(0));
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) f[i + j] -= A[i] * A[j];
  f[0] += 1;
  std::vector<Real> q(2 * N - 1, Real(0));
  for (int k = 2 * N; k >= 2; --k) {
    q[k - 2] = f[k];
    f[k - 2] += f[k];
  }
  if (abs(f[0]) + abs(f[1]) > tiny)
    throw Error(Errc::infeasible_polynomial, "1 - A^2 does not vanish at x = +-1");
  for (auto& c : q) c = -c;
  const int eps = (N - 1) % 2;
  std::vector<Real> r;
  for (int k = 2 * eps; k <= 2 * N - 2; k += 2) r.push_back(q[k]);
  if (eps && abs(q[0]) > tiny) throw Error(Errc::infeasible_polynomial, "complement not divisible by x^2");

  for (const Real& a : tg.known_t) {
    Real rem1 = deflate(r, a);
    Real rem2 = deflate(r, a);
    Real scale = 0;
    for (auto& c : r) scale = std::max(scale, Real(abs(c)));
    if (abs(rem1) + abs(rem2) > pow(Real(2), -int(bits) / 4) * (scale + 1))
      throw Error(Errc::infeasible_polynomial, "expected double root missing from the complement");
  }
  const Real lead = r.back();
  if (!(lead > 0)) throw Error(Errc::infeasible_polynomial, "complement is negative for large |x|");

  CPoly rc;
  for (auto& c : r) rc.push_back(C(c));
  const auto roots = aberth_roots(rc, bits);
  const Real delta = pow(Real(2), -int(bits) / 8);
  std::vector<C> chosen;
  std::vector<Real> realish;
  for (const C& z : roots) {
    if (abs(z.im) <= delta * std::max(Real(1), Real(abs(z.re))))
      realish.push_back(z.re);
    else if (z.im > 0)
      chosen.push_back(z);
  }
  std::sort(realish.begin(), realish.end());
  if (realish.size() % 2) throw Error(Errc::infeasible_polynomial, "complement has a simple real root");
  for (std::size_t k = 0; k < realish.size(); k += 2) chosen.push_back(C((realish[k] + realish[k + 1]) / 2));
  for (const Real& a : tg.known_t) chosen.push_back(C(a));
  if (int(chosen.size()) * 2 != int(r.size()) - 1 + 2 * int(tg.known_t.size()))
    throw Error(Errc::infeasible_polynomial, "complement roots do not pair up");

  CPoly g{C(sqrt(lead))};
  for (const C& z : chosen) {
    CPoly h(g.size() + 1);
    for (std::size_t k = 0; k < g.size(); ++k) {
      h[k + 1] = h[k + 1] + g[k];
      h[k] = h[k] - g[k] * z;
    }
    g = std::move(h);
  }
  CPoly P(N + 1), Q(N);
  for (int k = 0; k <= N; ++k) P[k] = C(A[k]);
  for (std::size_t k = 0; k < g.size(); ++k) Q[eps + 2 * k] = g[k];

  // Peel W_phi off the left: U' = W_phi^dagger U.
  std::vector<Real> phases;
  for (int d = N; d >= 1; --d) {
    C e = C(Real(0)) - P[d] / conj(Q[d - 1]);
    e = e / C(cabs(e));
    phases.push_back(-atan2(e.im, e.re));
    CPoly P2(d + 2), Q2(d + 1);
    for (int k = 0; k <= d + 1; ++k) {
      C v;
      if (k >= 1 && k - 1 <= d) v = P[k - 1];
      C qb;
      if (k <= d - 1) qb = conj(Q[k]);
      if (k >= 2 && k - 2 <= d - 1) qb = qb - conj(Q[k - 2]);
      P2[k] = v - e * qb;
    }
    for (int k = 0; k <= d; ++k) {
      C v;
      if (k >= 1 && k - 1 <= d - 1) v = Q[k - 1];
      Q2[k] = v + e * conj(P[k]);
    }
    P2.resize(d);
    Q2.resize(std::max(d - 1, 0));
    for (int k = 0; k < int(P2.size()); ++k)
      if (k % 2 != (d - 1) % 2) P2[k] = C();
    for (int k = 0; k < int(Q2.size()); ++k)
      if (k % 2 != d % 2) Q2[k] = C();
    P = std::move(P2);
    Q = std::move(Q2);
  }
  const Real alpha = atan2(P[0].im, P[0].re);

  for (const Real& p : phases) out.phases.push_back(Angle::from_decimal(p.str(opt.digits)));
  out.alpha = Angle::from_decimal(alpha.str(opt.digits));

  // Residual at Chebyshev points, refined if needed.
  const auto xs = chebyshev_points(opt.check_points);
  std::vector<double> target;
  for (double x : xs) target.push_back(real_eval(A, Real(x)).convert_to<double>());
  std::vector<double> phi;
  for (auto& a : out.phases) phi.push_back(a.radians());
  double al = out.alpha.radians();
  out.residual = residual_of(phi, al, xs, target);
  if (out.residual > opt.tolerance) {
    refine(phi, al, xs, target, opt.refine_iterations);
    const double res = residual_of(phi, al, xs, target);
    if (res > opt.tolerance)
      throw Error(Errc::angle_finding_failed, "block residual " + std::to_string(res) + " after refinement");
    out.residual = res;
    for (std::size_t k = 0; k < phi.size(); ++k) out.phases[k] = Angle::from_double(phi[k]);
    out.alpha = Angle::from_double(al);
  }
  return out;
}

unsigned qsp_bits(int N, unsigned at_least) { return std::max(at_least, unsigned(4 * N + 256)); }

void check_support(const SupportSet& s, int qubit_count) {
  std::vector<int> all = s.qubits;
  all.push_back(s.ancilla);
  for (int q : all)
    if (q < 0 || q >= qubit_count) throw Error(Errc::out_of_range, "support qubit out of range");
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw Error(Errc::invalid_support, "support qubits must be distinct from each other and the ancilla");
}

}  // namespace

AngleSequence find_qsp_angles(const std::vector<Real>& monomial, const QspOptions& opt) {
  if (monomial.empty()) throw Error(Errc::invalid_argument, "empty polynomial");
  const unsigned have = unsigned(monomial.front().precision() * 3.3219280948873623) + 1;
  PrecisionScope scope(qsp_bits(int(monomial.size()) - 1, have));
  Target tg;
  for (const auto& c : monomial) tg.mono.push_back(Real(c));
  return solve(tg, qsp_bits(int(monomial.size()) - 1, have), opt);
}

AngleSequence find_qsp_angles(const HermitePoly<Real>& p, const QspOptions& opt) {
  const InterpolationSpec& s = p.spec;
  const bool half = s.kind == InterpKind::ctrl_phase && s.size > 1;
  const int N = half ? 2 * s.degree() : s.degree();
  const unsigned bits = qsp_bits(N, p.precision_bits);
  PrecisionScope scope(bits);
  const auto hp = hermite_build<Real>(s, bits);
  const auto A = hermite_monomial(hp);
  Target tg;
  const Real pi = boost::math::constants::pi<Real>();
  if (!half) {
    tg.mono = A;
    // Interior nodes come in +-x pairs for the majority polynomial.
    if (s.kind == InterpKind::majority)
      for (int m = 1; 2 * m < s.size; ++m) {
        const Real c = cos(pi * m / s.size);
        tg.known_t.push_back(c * c);
      }
  } else {
    // B(y) = A(2y^2 - 1), y = cos(G/2).
    std::vector<Real> B{A.back()};
    for (int k = int(A.size()) - 2; k >= 0; --k) {
      std::vector<Real> nb(B.size() + 2, Real(0));
      for (std::size_t j = 0; j < B.size(); ++j) {
        nb[j + 2] += 2 * B[j];
        nb[j] -= B[j];
      }
      nb[0] += A[k];
      B = std::move(nb);
    }
    tg.mono = B;
    tg.half_angle = true;
    for (int w = 1; w < s.size; ++w) {
      const Real c = cos(pi * w / (2 * s.size));
      tg.known_t.push_back(c * c);
    }
  }
  return solve(tg, bits, opt);
}

cplx qsp_response(const AngleSequence& a, double x) {
  std::vector<double> phi;
  for (auto& p : a.phases) phi.push_back(p.radians());
  return response(phi, a.alpha.radians(), x);
}

DenseMatrix phased_iterate_oracle(const SupportSet& s, int qubit_count, double phi, int den) {
  check_support(s, qubit_count);
  if (den == 0) den = int(s.qubits.size());
  const Eigen::Index dim = Eigen::Index(1) << qubit_count;
  DenseMatrix W = DenseMatrix::Zero(dim, dim);
  const std::uint64_t am = std::uint64_t{1} << s.ancilla;
  const cplx I(0, 1);
  for (std::uint64_t col = 0; col < std::uint64_t(dim); ++col) {
    int w = 0;
    for (int q : s.qubits) w += (col >> q) & 1;
    // H = cos G with G = (pi/2)(1 - sum Z / den) shifted to count ones.
    const double G = kPi * w / den;
    const double h = std::cos(G), r = std::sqrt(std::max(0.0, 1 - h * h));
    const std::uint64_t c0 = col & ~am, c1 = col | am;
    if (col & am) {
      W(Eigen::Index(c0), Eigen::Index(col)) = -I * std::polar(1.0, -phi) * r;
      W(Eigen::Index(c1), Eigen::Index(col)) = h;
    } else {
      W(Eigen::Index(c0), Eigen::Index(col)) = h;
      W(Eigen::Index(c1), Eigen::Index(col)) = -I * std::polar(1.0, phi) * r;
    }
  }
  return W;
}

GateProgram build_phased_iterate(const SupportSet& s, int qubit_count, const Angle& phi, int den) {
  check_support(s, qubit_count);
  const int L = int(s.qubits.size());
  if (den == 0) {
    if (L % 2 == 0) throw Error(Errc::invalid_support, "majority iterate needs an odd support");
    den = L;
  }
  GateProgram g;
  g.qubit_count = qubit_count;
  g.ancillas = {{"qsp", s.ancilla}};
  const int a = s.ancilla;
  g.add(GateKind::phase, {}, {a}, -phi, true);
  g.add(GateKind::h, {}, {a}, {}, true);
  for (int q : s.qubits) g.add(GateKind::ctrl_rz, {a}, {q}, Angle::pi_frac(2, den));
  for (int q : s.qubits) g.add(GateKind::rz, {}, {q}, Angle::pi_frac(-1, den));
  g.add(GateKind::phase, {}, {a}, Angle::pi_frac(L, den));
  g.add(GateKind::h, {}, {a}, {}, true);
  g.add(GateKind::phase, {}, {a}, phi, true);
  g.global_phase = Angle::pi_frac(-L, 2 * den);
  return g;
}

const AngleSequence& parity_angles(int L) {
  static std::mutex mu;
  static std::map<int, AngleSequence> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(L);
  if (it != cache.end()) return it->second;
  const auto p = hermite_interpolate({InterpKind::majority, L});
  return cache.emplace(L, find_qsp_angles(p)).first->second;
}

namespace {

GateProgram iterate_product(const SupportSet& s, int qubit_count, const AngleSequence& angles, int den) {
  GateProgram g;
  g.qubit_count = qubit_count;
  g.ancillas = {{"qsp", s.ancilla}};
  // W_{phi_0} ... W_{phi_{N-1}}: the last factor acts first.
  for (auto it = angles.phases.rbegin(); it != angles.phases.rend(); ++it)
    g.append(build_phased_iterate(s, qubit_count, *it, den));
  g.global_phase = g.global_phase + angles.alpha;
  return g;
}

}  // namespace

GateProgram synth_parity(const SupportSet& s, int qubit_count, const AngleSequence& angles) {
  const int L = int(s.qubits.size());
  if (L % 2 == 0) throw Error(Errc::invalid_support, "parity support must have odd size");
  if (int(angles.phases.size()) != 2 * L - 1)
    throw Error(Errc::invalid_argument, "expected " + std::to_string(2 * L - 1) + " phases");
  return iterate_product(s, qubit_count, angles, L);
}

GateProgram synth_parity(const SupportSet& s, int qubit_count) {
  const int L = int(s.qubits.size());
  if (L % 2 == 0) throw Error(Errc::invalid_support, "parity support must have odd size");
  return synth_parity(s, qubit_count, parity_angles(L));
}

GateProgram synth_encoded_x(const std::vector<int>& support, int qubit_count) {
  GateProgram g;
  g.qubit_count = qubit_count;
  for (int q : support) g.add(GateKind::x, {}, {q});
  return g;
}

GateProgram synth_multi_ctrl_phase(int n, const QspOptions& opt) {
  if (n < 1) throw Error(Errc::invalid_argument, "need n >= 1");
  SupportSet s;
  for (int q = 0; q < n; ++q) s.qubits.push_back(q);
  s.ancilla = n;
  const auto p = ctrl_phase_poly(n);
  const AngleSequence a = find_qsp_angles(p, opt);
  return iterate_product(s, n + 1, a, a.half_angle ? 2 * n : n);
}

GateProgram synth_multi_ctrl_not(int n, const QspOptions& opt) {
  GateProgram core = synth_multi_ctrl_phase(n, opt);
  GateProgram g;
  g.qubit_count = core.qubit_count;
  g.ancillas = core.ancillas;
  g.add(GateKind::h, {}, {n - 1});
  g.append(core);
  g.add(GateKind::h, {}, {n - 1});
  return g;
}

}  // namespace polyfermion
