#include "polyfermion/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "polyfermion/error.hpp"

namespace polyfermion {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  return s;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw Error(Errc::parse_error, "bad integer '" + s + "'");
  }
  if (used != s.size()) throw Error(Errc::parse_error, "bad integer '" + s + "'");
  return v;
}

}  // namespace

Angle Angle::pi_frac(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(Errc::invalid_argument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  Angle a;
  a.num = g ? num / g : 0;
  a.den = g ? den / g : 1;
  return a;
}

Angle Angle::from_double(double radians, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, radians);
  return from_decimal(buf);
}

Angle Angle::from_decimal(const std::string& text) {
  Angle a;
  a.exact = false;
  a.num = 0;
  a.den = 1;
  a.decimal = trim(text);
  char* end = nullptr;
  std::strtod(a.decimal.c_str(), &end);
  if (a.decimal.empty() || *end != '\0') throw Error(Errc::parse_error, "bad decimal angle '" + text + "'");
  return a;
}

Angle Angle::parse(const std::string& text) {
  const std::string t = trim(text);
  const auto p = t.find("pi");
  if (p == std::string::npos) return from_decimal(t);
  if (trim(t.substr(p + 2)) != "") throw Error(Errc::parse_error, "bad angle '" + text + "'");
  const std::string frac = trim(t.substr(0, p));
  const auto slash = frac.find('/');
  if (slash == std::string::npos) return pi_frac(frac.empty() ? 1 : frac == "-" ? -1 : parse_int(frac), 1);
  return pi_frac(parse_int(trim(frac.substr(0, slash))), parse_int(trim(frac.substr(slash + 1))));
}

double Angle::radians() const {
  if (exact) return kPi * double(num) / double(den);
  return std::strtod(decimal.c_str(), nullptr);
}

bool Angle::is_zero() const { return exact ? num == 0 : radians() == 0; }

std::string Angle::to_string() const {
  if (exact) return std::to_string(num) + "/" + std::to_string(den) + " pi";
  return decimal;
}

Angle Angle::operator-() const {
  if (exact) return pi_frac(-num, den);
  if (!decimal.empty() && decimal[0] == '-') return from_decimal(decimal.substr(1));
  if (!decimal.empty() && decimal[0] == '+') return from_decimal("-" + decimal.substr(1));
  return from_decimal("-" + decimal);
}

Angle operator+(const Angle& a, const Angle& b) {
  if (a.exact && b.exact) {
    const __int128 n = (__int128)a.num * b.den + (__int128)b.num * a.den;
    const __int128 d = (__int128)a.den * b.den;
    const __int128 lim = (__int128)1 << 62;
    if (n < lim && n > -lim && d < lim) return Angle::pi_frac(std::int64_t(n), std::int64_t(d));
  }
  if (a.exact && a.num == 0) return b;
  if (b.exact && b.num == 0) return a;
  return Angle::from_double(a.radians() + b.radians());
}

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::h: return "h";
    case GateKind::x: return "x";
    case GateKind::rz: return "rz";
    case GateKind::phase: return "phase";
    case GateKind::ctrl_rz: return "ctrl_rz";
    case GateKind::ctrl_phase: return "ctrl_phase";
    case GateKind::cctrl_rz: return "cctrl_rz";
    case GateKind::cctrl_phase: return "cctrl_phase";
    case GateKind::swap: return "swap";
  }
  return "?";
}

GateKind gate_kind(const std::string& name) {
  for (GateKind k : {GateKind::h, GateKind::x, GateKind::rz, GateKind::phase, GateKind::ctrl_rz,
                     GateKind::ctrl_phase, GateKind::cctrl_rz, GateKind::cctrl_phase, GateKind::swap})
    if (name == gate_name(k)) return k;
  throw Error(Errc::parse_error, "unknown gate kind '" + name + "'");
}

int control_count(GateKind k) {
  switch (k) {
    case GateKind::ctrl_rz:
    case GateKind::ctrl_phase: return 1;
    case GateKind::cctrl_rz:
    case GateKind::cctrl_phase: return 2;
    default: return 0;
  }
}

namespace {

int target_count(GateKind k) { return k == GateKind::swap ? 2 : 1; }

void check_gate(const Gate& g, int n) {
  if (int(g.controls.size()) != control_count(g.kind) || int(g.targets.size()) != target_count(g.kind))
    throw Error(Errc::invalid_argument, std::string("wrong operand count for ") + gate_name(g.kind));
  std::vector<int> all = g.controls;
  all.insert(all.end(), g.targets.begin(), g.targets.end());
  for (int q : all)
    if (q < 0 || q >= n) throw Error(Errc::out_of_range, "qubit index " + std::to_string(q) + " out of range");
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw Error(Errc::invalid_argument, "gate operands must be distinct");
}

}  // namespace

int GateProgram::ancilla(const std::string& label) const {
  for (auto& [l, q] : ancillas)
    if (l == label) return q;
  throw Error(Errc::invalid_argument, "no ancilla labelled " + label);
}

void GateProgram::add(GateKind k, std::vector<int> controls, std::vector<int> targets, Angle a, bool frame) {
  Gate g{k, std::move(controls), std::move(targets), std::move(a), frame};
  check_gate(g, qubit_count);
  gates.push_back(std::move(g));
}

void GateProgram::append(const GateProgram& other) {
  if (other.qubit_count > qubit_count) throw Error(Errc::invalid_argument, "appended program is wider");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  global_phase = global_phase + other.global_phase;
}

CostRecord& CostRecord::operator+=(const CostRecord& o) {
  single_qubit += o.single_qubit;
  controlled += o.controlled;
  doubly_controlled += o.doubly_controlled;
  swaps += o.swaps;
  return *this;
}

CostRecord operator*(std::uint64_t k, CostRecord c) {
  c.single_qubit *= k;
  c.controlled *= k;
  c.doubly_controlled *= k;
  c.swaps *= k;
  return c;
}

std::string CostRecord::to_string() const {
  std::ostringstream os;
  os << "single_qubit=" << single_qubit << " controlled=" << controlled
     << " doubly_controlled=" << doubly_controlled << " swaps=" << swaps;
  return os.str();
}

void apply_gate(StateVector& psi, const Gate& g) {
  const std::uint64_t dim = std::uint64_t(psi.size());
  std::uint64_t cm = 0;
  for (int c : g.controls) cm |= std::uint64_t{1} << c;
  const std::uint64_t tm = std::uint64_t{1} << g.targets[0];
  switch (g.kind) {
    case GateKind::h: {
      const double r = 1.0 / std::sqrt(2.0);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & tm) continue;
        const cplx a = psi[i], b = psi[i | tm];
        psi[i] = r * (a + b);
        psi[i | tm] = r * (a - b);
      }
      break;
    }
    case GateKind::x:
      for (std::uint64_t i = 0; i < dim; ++i)
        if (!(i & tm)) std::swap(psi[i], psi[i | tm]);
      break;
    case GateKind::swap: {
      const std::uint64_t um = std::uint64_t{1} << g.targets[1];
      for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & tm) && !(i & um)) std::swap(psi[i], psi[(i & ~tm) | um]);
      break;
    }
    case GateKind::rz:
    case GateKind::ctrl_rz:
    case GateKind::cctrl_rz: {
      const double t = g.angle.radians() / 2;
      const cplx lo = std::polar(1.0, -t), hi = std::polar(1.0, t);
      for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & cm) == cm) psi[i] *= (i & tm) ? hi : lo;
      break;
    }
    case GateKind::phase:
    case GateKind::ctrl_phase:
    case GateKind::cctrl_phase: {
      const cplx f = std::polar(1.0, g.angle.radians());
      for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & cm) == cm && (i & tm)) psi[i] *= f;
      break;
    }
  }
}

StateVector simulate(const GateProgram& prog, const StateVector& initial, const SimOptions& opt) {
  if (prog.qubit_count > opt.max_qubits || prog.qubit_count > 40)
    throw Error(Errc::resource, "program has " + std::to_string(prog.qubit_count) +
                                    " qubits, simulation cap is " + std::to_string(opt.max_qubits));
  if (initial.size() != (Eigen::Index(1) << prog.qubit_count))
    throw Error(Errc::invalid_argument, "initial state has wrong dimension");
  StateVector psi = initial;
  for (const Gate& g : prog.gates) apply_gate(psi, g);
  if (!prog.global_phase.is_zero()) psi *= std::polar(1.0, prog.global_phase.radians());
  return psi;
}

StateVector simulate(const GateProgram& prog, std::uint64_t basis_index, const SimOptions& opt) {
  if (prog.qubit_count > opt.max_qubits || prog.qubit_count > 40)
    throw Error(Errc::resource, "program has " + std::to_string(prog.qubit_count) +
                                    " qubits, simulation cap is " + std::to_string(opt.max_qubits));
  StateVector psi = StateVector::Zero(Eigen::Index(1) << prog.qubit_count);
  if (basis_index >= std::uint64_t(psi.size())) throw Error(Errc::out_of_range, "basis index out of range");
  psi[Eigen::Index(basis_index)] = 1;
  return simulate(prog, psi, opt);
}

DenseMatrix matrix_of(const GateProgram& prog, int max_qubits) {
  if (prog.qubit_count > max_qubits)
    throw Error(Errc::resource, "matrix extraction limited to " + std::to_string(max_qubits) + " qubits");
  const Eigen::Index dim = Eigen::Index(1) << prog.qubit_count;
  DenseMatrix U(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) U.col(j) = simulate(prog, std::uint64_t(j), {max_qubits});
  return U;
}

CostRecord count_gates(const GateProgram& prog) {
  CostRecord c;
  for (const Gate& g : prog.gates) {
    switch (control_count(g.kind)) {
      case 0:
        if (g.kind == GateKind::swap)
          ++c.swaps;
        else
          ++c.single_qubit;
        break;
      case 1: ++c.controlled; break;
      default: ++c.doubly_controlled; break;
    }
  }
  return c;
}

GateProgram adjoint(const GateProgram& prog) {
  GateProgram r = prog;
  r.gates.assign(prog.gates.rbegin(), prog.gates.rend());
  for (Gate& g : r.gates)
    if (g.kind != GateKind::h && g.kind != GateKind::x && g.kind != GateKind::swap) g.angle = -g.angle;
  r.global_phase = -prog.global_phase;
  return r;
}

GateProgram controlled(const GateProgram& prog, int control) {
  if (control < 0 || control >= prog.qubit_count) throw Error(Errc::out_of_range, "control out of range");
  GateProgram r;
  r.qubit_count = prog.qubit_count;
  r.ancillas = prog.ancillas;
  for (const Gate& g : prog.gates) {
    for (int q : g.controls)
      if (q == control) throw Error(Errc::invalid_argument, "control qubit already used by the program");
    for (int q : g.targets)
      if (q == control) throw Error(Errc::invalid_argument, "control qubit already used by the program");
    if (g.frame) {
      r.gates.push_back(g);
      continue;
    }
    std::vector<int> cs = g.controls;
    cs.insert(cs.begin(), control);
    switch (g.kind) {
      case GateKind::x:
        r.add(GateKind::h, {}, g.targets, {}, true);
        r.add(GateKind::ctrl_phase, {control}, g.targets, Angle::pi_frac(1, 1));
        r.add(GateKind::h, {}, g.targets, {}, true);
        break;
      case GateKind::rz: r.add(GateKind::ctrl_rz, cs, g.targets, g.angle); break;
      case GateKind::phase: r.add(GateKind::ctrl_phase, cs, g.targets, g.angle); break;
      case GateKind::ctrl_rz: r.add(GateKind::cctrl_rz, cs, g.targets, g.angle); break;
      case GateKind::ctrl_phase: r.add(GateKind::cctrl_phase, cs, g.targets, g.angle); break;
      default:
        throw Error(Errc::invalid_argument,
                    std::string("no controlled counterpart for non-frame ") + gate_name(g.kind));
    }
  }
  if (!prog.global_phase.is_zero()) r.add(GateKind::phase, {}, {control}, prog.global_phase);
  return r;
}

std::string serialize_program(const GateProgram& prog) {
  std::ostringstream os;
  os << "qubits " << prog.qubit_count << "\n";
  for (auto& [label, q] : prog.ancillas) os << "ancilla " << label << " " << q << "\n";
  os << "global_phase " << prog.global_phase.to_string() << "\n";
  auto list = [](const std::vector<int>& v) {
    if (v.empty()) return std::string("-");
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  for (const Gate& g : prog.gates)
    os << gate_name(g.kind) << " c=" << list(g.controls) << " t=" << list(g.targets)
       << " f=" << (g.frame ? 1 : 0) << " a=" << g.angle.to_string() << "\n";
  return os.str();
}

GateProgram parse_program(const std::string& text) {
  GateProgram prog;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    try {
      if (head == "qubits") {
        std::string n;
        ls >> n;
        prog.qubit_count = int(parse_int(n));
        have_header = true;
      } else if (head == "ancilla") {
        std::string label, q;
        ls >> label >> q;
        prog.ancillas.emplace_back(label, int(parse_int(q)));
      } else if (head == "global_phase") {
        std::string rest;
        std::getline(ls, rest);
        prog.global_phase = Angle::parse(rest);
      } else {
        if (!have_header) throw Error(Errc::parse_error, "gate before qubits header");
        Gate g;
        g.kind = gate_kind(head);
        std::string c, t, f;
        ls >> c >> t >> f;
        if (c.rfind("c=", 0) || t.rfind("t=", 0) || f.rfind("f=", 0))
          throw Error(Errc::parse_error, "expected c= t= f= a= fields");
        auto ints = [](const std::string& s) {
          std::vector<int> v;
          if (s == "-") return v;
          std::istringstream ss(s);
          std::string item;
          while (std::getline(ss, item, ',')) v.push_back(int(parse_int(item)));
          return v;
        };
        g.controls = ints(c.substr(2));
        g.targets = ints(t.substr(2));
        g.frame = f.substr(2) == "1";
        std::string rest;
        std::getline(ls, rest);
        rest = trim(rest);
        if (rest.rfind("a=", 0)) throw Error(Errc::parse_error, "missing angle field");
        g.angle = Angle::parse(rest.substr(2));
        check_gate(g, prog.qubit_count);
        prog.gates.push_back(std::move(g));
      }
    } catch (const Error& e) {
      if (e.code() == Errc::parse_error || e.code() == Errc::out_of_range || e.code() == Errc::invalid_argument)
        throw Error(Errc::parse_error, where() + e.what());
      throw;
    }
  }
  if (!have_header) throw Error(Errc::parse_error, "missing qubits header");
  return prog;
}

namespace {

bool diagonal(GateKind k) {
  return k == GateKind::ctrl_rz || k == GateKind::ctrl_phase;
}

struct Layout {
  std::vector<int> pos;  // logical -> slot
  std::vector<int> at;   // slot -> logical
  void swap_slots(int a, int b) {
    std::swap(at[a], at[b]);
    pos[at[a]] = a;
    pos[at[b]] = b;
  }
};

// Walks the control along the line, first toward `first_dir`, applying every
// pending gate once its target is adjacent.
std::uint64_t run_block(Layout& lay, int control, std::vector<Gate> pending, int first_dir,
                        std::vector<Gate>* out) {
  std::uint64_t swaps = 0;
  auto flush = [&] {
    const int c = lay.pos[control];
    for (auto it = pending.begin(); it != pending.end();) {
      const int t = lay.pos[it->targets[0]];
      if (t == c - 1 || t == c + 1) {
        if (out) {
          Gate g = *it;
          g.controls = {c};
          g.targets = {t};
          out->push_back(g);
        }
        it = pending.erase(it);
      } else {
        ++it;
      }
    }
  };
  auto any_side = [&](int dir) {
    const int c = lay.pos[control];
    for (const Gate& g : pending)
      if ((lay.pos[g.targets[0]] - c) * dir > 0) return true;
    return false;
  };
  for (int dir : {first_dir, -first_dir}) {
    flush();
    while (any_side(dir)) {
      const int c = lay.pos[control];
      if (out) {
        Gate s;
        s.kind = GateKind::swap;
        s.targets = {c, c + dir};
        out->push_back(s);
      }
      lay.swap_slots(c, c + dir);
      ++swaps;
      flush();
    }
  }
  return swaps;
}

}  // namespace

RoutedProgram route_linear(const GateProgram& prog, const std::vector<int>& line_order) {
  const int n = prog.qubit_count;
  if (int(line_order.size()) != n) throw Error(Errc::invalid_argument, "line order must cover every qubit");
  Layout lay;
  lay.pos.assign(n, -1);
  lay.at = line_order;
  for (int s = 0; s < n; ++s) {
    const int q = line_order[s];
    if (q < 0 || q >= n || lay.pos[q] != -1) throw Error(Errc::invalid_argument, "line order is not a permutation");
    lay.pos[q] = s;
  }
  RoutedProgram r;
  r.program.qubit_count = n;
  for (auto& [label, q] : prog.ancillas) r.program.ancillas.emplace_back(label, lay.pos[q]);
  r.program.global_phase = prog.global_phase;

  std::size_t i = 0;
  while (i < prog.gates.size()) {
    const Gate& g = prog.gates[i];
    const int cc = control_count(g.kind);
    if (cc == 0 && g.kind != GateKind::swap) {
      Gate m = g;
      m.targets = {lay.pos[g.targets[0]]};
      r.program.gates.push_back(m);
      ++i;
      continue;
    }
    if (cc != 1 || !diagonal(g.kind))
      throw Error(Errc::unsupported_topology, std::string("cannot route ") + gate_name(g.kind));
    // Maximal run of two-qubit diagonal gates with this control.
    const int control = g.controls[0];
    std::vector<Gate> block;
    std::size_t j = i;
    while (j < prog.gates.size() && control_count(prog.gates[j].kind) == 1 && diagonal(prog.gates[j].kind) &&
           prog.gates[j].controls[0] == control) {
      if (prog.gates[j].targets[0] == control) throw Error(Errc::unsupported_topology, "control equals target");
      block.push_back(prog.gates[j]);
      ++j;
    }
    Layout left = lay, right = lay;
    const std::uint64_t cl = run_block(left, control, block, -1, nullptr);
    const std::uint64_t cr = run_block(right, control, block, +1, nullptr);
    const int dir = cl <= cr ? -1 : +1;
    const std::uint64_t used = run_block(lay, control, block, dir, &r.program.gates);
    r.swaps_per_block.push_back(used);
    r.total_swaps += used;
    i = j;
  }
  r.final_position = lay.pos;
  return r;
}

}  // namespace polyfermion
