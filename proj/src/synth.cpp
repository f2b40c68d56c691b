#include "polyfermion/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "polyfermion/error.hpp"
#include "polyfermion/qsp.hpp"

namespace polyfermion {

namespace {

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  return s;
}

using Mono = std::vector<std::size_t>;
using MonoMap = std::map<Mono, std::complex<double>>;

// Sorts a Majorana word, tracking anticommutation signs and gamma^2 = 1.
std::pair<Mono, int> canonical(Mono w) {
  int sign = 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
      if (w[j] > w[j + 1]) {
        std::swap(w[j], w[j + 1]);
        sign = -sign;
      }
  Mono out;
  for (std::size_t k = 0; k < w.size();) {
    if (k + 1 < w.size() && w[k] == w[k + 1]) {
      k += 2;
    } else {
      out.push_back(w[k]);
      ++k;
    }
  }
  return {out, sign};
}

void expand(const FermionTerm& t, std::complex<double> scale, MonoMap& acc) {
  const std::size_t k = t.ops.size();
  const std::complex<double> I(0, 1);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::complex<double> c = scale * t.coefficient;
    Mono w;
    for (std::size_t i = 0; i < k; ++i) {
      const auto [mode, creator] = t.ops[i];
      c *= 0.5;
      if (mask >> i & 1) {
        w.push_back(2 * mode + 1);
        c *= creator ? -I : I;
      } else {
        w.push_back(2 * mode);
      }
    }
    auto [m, s] = canonical(w);
    acc[m] += double(s) * c;
  }
}

FermionTerm conjugate(const FermionTerm& t) {
  FermionTerm c;
  c.coefficient = t.coefficient;
  for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) {
    c.ops.emplace_back(it->first, !it->second);
    (it->second ? c.annihilators : c.creators).push_back(it->first);
  }
  return c;
}

std::vector<int> to_ints(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

void check_layout(const PauliSupport& p, const EncodedLayout& lay) {
  for (auto s : {&p.x, &p.z})
    for (auto q : *s)
      if (q >= lay.params.M) throw Error(Errc::invalid_argument, "Pauli support outside [0, M)");
}

GateProgram blank(const EncodedLayout& lay) {
  GateProgram g;
  g.qubit_count = lay.qubit_count;
  g.ancillas = {{"qsp", lay.qsp_ancilla}};
  if (lay.rotation_ancilla >= 0) g.ancillas.emplace_back("rot", lay.rotation_ancilla);
  return g;
}

bool hermitian(const PauliSupport& p) {
  std::size_t overlap = 0;
  for (auto q : p.x) overlap += p.z.count(q);
  // (c X Z)^dagger = conj(c) (-1)^{|x & z|} X Z
  return (p.phase % 2 == 0) == (overlap % 2 == 0);
}

}  // namespace

std::vector<FermionTerm> parse_hamiltonian(const std::string& text, bool audit) {
  std::vector<FermionTerm> terms;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto bad = [&](const std::string& why) {
      return Error(Errc::parse_error, "line " + std::to_string(lineno) + ": " + why);
    };
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw bad("expected 'coeff : ops'");
    const std::string cs = trim(line.substr(0, colon));
    char* end = nullptr;
    FermionTerm t;
    t.coefficient = std::strtod(cs.c_str(), &end);
    if (cs.empty() || *end != '\0') throw bad("bad coefficient '" + cs + "'");
    std::istringstream ops(line.substr(colon + 1));
    std::string tok;
    while (ops >> tok) {
      bool creator = false;
      if (tok.back() == '^') {
        creator = true;
        tok.pop_back();
      }
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw bad("bad operator '" + tok + "'");
      const std::size_t mode = std::stoull(tok);
      t.ops.emplace_back(mode, creator);
      (creator ? t.creators : t.annihilators).push_back(mode);
    }
    terms.push_back(std::move(t));
  }
  if (audit) {
    MonoMap h, hd;
    for (const auto& t : terms) {
      expand(t, 1, h);
      expand(conjugate(t), 1, hd);
    }
    bool ok = true;
    for (const auto& [m, c] : h) {
      auto it = hd.find(m);
      const std::complex<double> d = it == hd.end() ? std::complex<double>(0) : it->second;
      if (std::abs(c - d) > 1e-12) ok = false;
    }
    for (const auto& [m, c] : hd)
      if (!h.count(m) && std::abs(c) > 1e-12) ok = false;
    if (!ok) {
      std::string offenders;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto c = conjugate(terms[i]);
        bool found = false;
        for (const auto& u : terms)
          if (u.ops == c.ops && std::abs(u.coefficient - c.coefficient) < 1e-12) found = true;
        if (!found) offenders += (offenders.empty() ? "" : ",") + std::to_string(i + 1);
      }
      throw Error(Errc::audit_failure, "Hamiltonian is not Hermitian; terms without conjugate: " +
                                           (offenders.empty() ? std::string("(none listed)") : offenders));
    }
  }
  return terms;
}

std::string MajoranaMonomial::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "(" << coefficient.real() << (coefficient.imag() < 0 ? "-" : "+") << std::abs(coefficient.imag())
     << "i)";
  if (factors.empty()) os << " I";
  for (auto f : factors) os << " g" << f;
  return os.str();
}

std::vector<MajoranaMonomial> majorana_decompose(const std::vector<FermionTerm>& terms, double drop_tol) {
  MonoMap acc;
  for (const auto& t : terms) expand(t, 1, acc);
  std::vector<MajoranaMonomial> out;
  for (auto& [m, c] : acc) {
    std::complex<double> v = c;
    if (std::abs(v.real()) <= drop_tol) v.real(0);
    if (std::abs(v.imag()) <= drop_tol) v.imag(0);
    if (v != std::complex<double>(0)) out.push_back({v, m});
  }
  return out;
}

double lambda_norm(const std::vector<MajoranaMonomial>& monos) {
  double s = 0;
  for (const auto& m : monos)
    if (!m.factors.empty()) s += std::abs(m.coefficient);
  return s;
}

PauliSupport monomial_support(const MajoranaMonomial& m, std::size_t M) {
  std::vector<PauliSupport> f;
  for (auto g : m.factors)
    f.push_back(majorana_support(g / 2, g % 2 ? MajoranaKind::odd : MajoranaKind::even, M));
  return pauli_product(f);
}

EncodedLayout make_layout(const CodeParams& p, bool with_rotation_ancilla) {
  EncodedLayout lay;
  lay.params = p;
  lay.qsp_ancilla = int(p.Q);
  lay.rotation_ancilla = with_rotation_ancilla ? int(p.Q) + 1 : -1;
  lay.qubit_count = int(p.Q) + (with_rotation_ancilla ? 2 : 1);
  return lay;
}

GateProgram encode_pauli(const PauliSupport& p, const EncodedLayout& lay) {
  check_layout(p, lay);
  GateProgram g = blank(lay);
  const CodeParams& cp = lay.params;
  if (!p.z.empty()) {
    const AngleSequence& angles = parity_angles(int(cp.L));
    for (auto i : p.z) {
      SupportSet s{to_ints(support_set(i, cp)), lay.qsp_ancilla};
      g.append(synth_parity(s, lay.qubit_count, angles));
    }
  }
  for (auto i : p.x) g.append(synth_encoded_x(to_ints(support_set(i, cp)), lay.qubit_count));
  g.global_phase = g.global_phase + Angle::pi_frac(p.phase, 2);
  return g;
}

EncodedTerm encode_term(const PauliSupport& p, double coefficient, const EncodedLayout& lay) {
  return {p, coefficient, encode_pauli(p, lay)};
}

GateProgram synth_rotation(const GateProgram& T, const Angle& theta, const EncodedLayout& lay) {
  const int b = lay.rotation_ancilla;
  if (b < 0) throw Error(Errc::invalid_argument, "layout has no rotation ancilla");
  GateProgram g = blank(lay);
  const GateProgram cT = controlled(T, b);
  g.add(GateKind::h, {}, {b});
  g.append(cT);
  g.add(GateKind::h, {}, {b});
  g.add(GateKind::phase, {}, {b}, Angle{} - theta - theta);
  g.add(GateKind::h, {}, {b});
  g.append(cT);
  g.add(GateKind::h, {}, {b});
  g.global_phase = g.global_phase + theta;
  return g;
}

GateProgram synth_rotation(const EncodedTerm& term, double theta, const EncodedLayout& lay) {
  if (!hermitian(term.pauli)) throw Error(Errc::invalid_argument, "term is not a Hermitian unitary");
  return synth_rotation(term.program, Angle::from_double(theta), lay);
}

GateProgram synth_hop(std::size_t i, std::size_t j, double phi, const EncodedLayout& lay) {
  const std::size_t M = lay.params.M;
  if (i == j) throw Error(Errc::invalid_argument, "hop needs two distinct modes");
  if (i >= M || j >= M) throw Error(Errc::invalid_argument, "hop mode outside [0, M)");
  const int b = lay.rotation_ancilla;
  if (b < 0) throw Error(Errc::invalid_argument, "layout has no rotation ancilla");
  const GateProgram Zi = encode_pauli(fermionic_z(i, M), lay);
  const GateProgram Zj = encode_pauli(fermionic_z(j, M), lay);
  const GateProgram XX = encode_pauli(pauli_product({fermionic_x(i, M), fermionic_x(j, M)}), lay);

  GateProgram g = blank(lay);
  // Phase -1 on |11>: the ancilla records Z_i, picks up Z_j, then is cleared.
  const GateProgram cZi = controlled(Zi, b), cZj = controlled(Zj, b);
  g.add(GateKind::h, {}, {b});
  g.append(cZi);
  g.add(GateKind::h, {}, {b});
  g.append(cZj);
  g.add(GateKind::h, {}, {b});
  g.append(cZi);
  g.add(GateKind::h, {}, {b});

  // exp(i phi (X_i Y_j - Y_i X_j) / 2) as six rotations.
  const Angle q = Angle::pi_frac(1, 4), half = Angle::from_double(phi / 2);
  g.append(synth_rotation(Zi, -q, lay));
  g.append(synth_rotation(XX, half, lay));
  g.append(synth_rotation(Zi, q, lay));
  g.append(synth_rotation(Zj, q, lay));
  g.append(synth_rotation(XX, half, lay));
  g.append(synth_rotation(Zj, -q, lay));
  return g;
}

std::pair<Codeword, std::complex<double>> classical_propagate(const PauliSupport& p, const CodeParams& params,
                                                              const Codeword& w) {
  std::complex<double> phase = p.phase_value();
  for (auto i : p.z)
    if (2 * overlap(w, i, params) > params.L) phase = -phase;
  Codeword out = w;
  for (auto i : p.x) out ^= elementary_codeword(i, params);
  return {out, phase};
}

TermCost term_cost(const PauliSupport& p, const CodeParams& params) {
  const std::uint64_t L = params.L, k = p.z.size(), m = p.x.size(), n = 2 * L - 1;
  TermCost c;
  c.operation.controlled = k * L * n;
  c.operation.single_qubit = k * (L * n + 5 * n) + m * L;
  // Controlled T: ctrl_rz -> cctrl_rz, rz and the ancilla phase -> controlled,
  // frame gates unchanged, x -> h ctrl_phase h, global phase -> phase on control.
  const std::uint64_t gphase = (k > 0 || p.phase != 0) ? 1 : 0;
  CostRecord ct;
  ct.doubly_controlled = k * L * n;
  ct.controlled = k * (L * n + n) + m * L;
  ct.single_qubit = k * 4 * n + 2 * m * L + gphase;
  c.rotation = 2 * ct;
  c.rotation.single_qubit += 5;
  const double F = params.F ? double(params.F) : double(params.G) / double(std::max<u64>(1, bits_for_modes(params.M)));
  const double lg = std::log2(double(std::max<u64>(2, params.M)));
  c.asymptotic = double(params.D * params.D) * F * F * lg * lg * lg;
  return c;
}

}  // namespace polyfermion
