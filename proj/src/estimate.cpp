#include "polyfermion/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "polyfermion/error.hpp"
#include "polyfermion/ffpoly.hpp"

namespace polyfermion {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  if (v == std::floor(v) && std::abs(v) < 1e15)
    os << std::fixed << std::setprecision(0) << v;
  else
    os << std::setprecision(6) << v;
  return os.str();
}

u64 degree_cap(u64 M) { return bits_for_modes(M - 1) + 2; }

// Gates for one conjugate pair a_i^dagger a_j + h.c. across the register.
u64 pair_gate_count(const CodeParams& p) {
  if (p.M < 2) return 0;
  FermionTerm t, u;
  t.coefficient = u.coefficient = 1;
  t.ops = {{p.M - 1, true}, {0, false}};
  u.ops = {{0, true}, {p.M - 1, false}};
  u64 total = 0;
  for (const auto& m : majorana_decompose({t, u})) {
    const TermCost c = term_cost(monomial_support(m, p.M), p);
    total += c.operation.single_qubit + c.operation.controlled;
  }
  return total;
}

}  // namespace

double min_qubits(u64 M, u64 F) {
  if (F > M) throw Error(Errc::invalid_argument, "F must not exceed M");
  if (F == 0 || F == M) return 0;
  const double lnb = std::lgamma(double(M) + 1) - std::lgamma(double(F) + 1) - std::lgamma(double(M - F) + 1);
  return lnb / std::log(2.0);
}

OptimalDegree optimal_degree(u64 M, u64 F, const CodeOptions& opt) {
  if (M < 2 || F < 1) throw Error(Errc::invalid_argument, "need M >= 2 and F >= 1");
  OptimalDegree best;
  bool found = false;
  for (u64 D = 0; D <= degree_cap(M); ++D) {
    CodeParams p;
    try {
      p = derive_params(M, F, D, opt);
    } catch (const Error&) {
      continue;
    }
    best.scanned.push_back(p);
    if (!found || p.Q < best.params.Q) {
      best.params = p;
      best.D = D;
      found = true;
    }
  }
  if (!found) throw Error(Errc::capacity, "no admissible degree in the scan range");
  return best;
}

std::vector<EstimateRow> compare_encodings(u64 M, u64 F) {
  std::vector<EstimateRow> rows;
  const std::string mf = "M=" + std::to_string(M) + " F=" + std::to_string(F);
  rows.push_back({"jordan-wigner", double(M), fmt(double(M)), mf, false});
  {
    // Worst Majorana weight under the Fenwick-tree transform.
    std::size_t w = 0;
    if (M <= (u64{1} << 20))
      for (std::size_t j = 0; j < M; ++j) {
        const auto s = majorana_support(j, MajoranaKind::odd, M);
        w = std::max(w, s.x.size() + s.z.size());
      }
    rows.push_back({"bravyi-kitaev", double(M), w ? fmt(double(w)) : std::string("O(log M)"), mf, false});
  }
  try {
    const SegmentParams s = segment_params(M, F);
    rows.push_back({"segment", double(s.Q), "O(F^2)",
                    mf + " L=" + std::to_string(s.L) + " segments=" + std::to_string(s.segment_count), false});
  } catch (const Error&) {
  }
  OptimalDegree opt;
  bool have_opt = true;
  try {
    opt = optimal_degree(M, F);
  } catch (const Error&) {
    have_opt = false;
  }
  auto degree_row = [&](const std::string& name, const CodeParams& p) {
    std::string gates = "O(D^2 F^2 log^3 M)";
    if (p.D > 0 && p.L <= 4097) gates = fmt(double(pair_gate_count(p)));
    std::ostringstream par;
    par << "D=" << p.D << " G=" << p.G << " L=" << p.L << " Lprime=" << p.Lprime;
    return EstimateRow{name, double(p.Q), gates, par.str(), false};
  };
  if (have_opt) {
    for (const auto& p : opt.scanned)
      if (p.D > 0) rows.push_back(degree_row("degree-" + std::to_string(p.D), p));
    rows.push_back(degree_row("optimal-degree", opt.params));
  }
  auto it = std::min_element(rows.begin(), rows.end(),
                             [](const EstimateRow& a, const EstimateRow& b) { return a.qubits < b.qubits; });
  for (auto& r : rows) r.minimum = r.qubits == it->qubits;
  return rows;
}

std::string rows_csv(const std::vector<EstimateRow>& rows) {
  std::ostringstream os;
  os << "encoding,qubits,gates,parameters,minimum\n";
  for (const auto& r : rows)
    os << r.encoding << "," << fmt(r.qubits) << "," << r.gates << "," << r.parameters << ","
       << (r.minimum ? 1 : 0) << "\n";
  return os.str();
}

std::string rows_table(const std::vector<EstimateRow>& rows) {
  std::size_t w0 = 8, w1 = 6, w2 = 5;
  for (const auto& r : rows) {
    w0 = std::max(w0, r.encoding.size());
    w1 = std::max(w1, fmt(r.qubits).size());
    w2 = std::max(w2, r.gates.size());
  }
  std::ostringstream os;
  os << std::left << std::setw(int(w0)) << "encoding" << "  " << std::right << std::setw(int(w1)) << "qubits"
     << "  " << std::setw(int(w2)) << "gates" << "  parameters\n";
  for (const auto& r : rows)
    os << std::left << std::setw(int(w0)) << r.encoding << "  " << std::right << std::setw(int(w1))
       << fmt(r.qubits) << "  " << std::setw(int(w2)) << r.gates << "  " << r.parameters
       << (r.minimum ? "  *" : "") << "\n";
  return os.str();
}

u64 threshold_k(u64 L) {
  u64 best = 0;
  u64 pk = kth_next_prime(L, 1);
  // Once p_k >= 2L, p_{k+1} < 2 p_k <= p_k^2 / L, so no larger k can qualify.
  for (u64 k = 1; pk < 2 * L; ++k) {
    const u64 next = next_prime(pk + 1);
    if ((unsigned __int128)pk * pk < (unsigned __int128)L * next) best = k;
    pk = next;
  }
  return best;
}

std::vector<ThresholdRow> threshold_scan(u64 L_max) {
  if (L_max % 2 == 0) throw Error(Errc::invalid_argument, "L_max must be odd");
  std::vector<ThresholdRow> rows;
  for (u64 G = 1; 2 * G + 1 <= L_max; ++G) rows.push_back({G, 2 * G + 1, threshold_k(2 * G + 1)});
  return rows;
}

PauliSupport representative_term(const CodeParams& p) {
  if (p.M < 4) throw Error(Errc::invalid_argument, "need at least four modes");
  FermionTerm t;
  t.coefficient = 1;
  t.ops = {{p.M - 1, true}, {p.M - 2, true}, {1, false}, {0, false}};
  PauliSupport best;
  std::size_t weight = 0;
  bool first = true;
  for (const auto& m : majorana_decompose({t})) {
    const PauliSupport s = monomial_support(m, p.M);
    if (first || s.z.size() > weight) {
      best = s;
      weight = s.z.size();
      first = false;
    }
  }
  return best;
}

SimCost sim_cost(SimKind kind, double lambda, double t_or_delta, double eps_or_eta, const CodeParams& params,
                 const CostConstants& k) {
  if (!(lambda > 0) || !(t_or_delta > 0) || !(eps_or_eta > 0))
    throw Error(Errc::invalid_argument, "cost inputs must be positive");
  SimCost c;
  if (kind == SimKind::qdrift) {
    const double lt = lambda * t_or_delta;
    c.rotations = u64(std::ceil(k.c * lt * lt / eps_or_eta));
    c.circuits = 1;
  } else {
    c.rotations = u64(std::ceil(k.c * lambda * lambda / (t_or_delta * t_or_delta)));
    c.circuits = u64(std::ceil(k.c_prime / (eps_or_eta * eps_or_eta)));
  }
  c.per_rotation_doubly_controlled = term_cost(representative_term(params), params).rotation.doubly_controlled;
  c.total_doubly_controlled = double(c.rotations) * double(c.circuits) * double(c.per_rotation_doubly_controlled);
  return c;
}

}  // namespace polyfermion
