#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace polyfermion {

using cplx = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;

// Angle as an exact rational multiple of pi, or as a decimal string.
struct Angle {
  bool exact = true;
  std::int64_t num = 0;
  std::int64_t den = 1;
  std::string decimal;

  static Angle pi_frac(std::int64_t num, std::int64_t den);
  static Angle from_double(double radians, int digits = 17);
  static Angle from_decimal(const std::string& text);
  static Angle parse(const std::string& text);

  double radians() const;
  bool is_zero() const;
  std::string to_string() const;

  Angle operator-() const;
  friend Angle operator+(const Angle& a, const Angle& b);
  friend Angle operator-(const Angle& a, const Angle& b) { return a + (-b); }
  friend bool operator==(const Angle& a, const Angle& b) {
    return a.exact == b.exact && a.num == b.num && a.den == b.den && a.decimal == b.decimal;
  }
};

enum class GateKind { h, x, rz, phase, ctrl_rz, ctrl_phase, cctrl_rz, cctrl_phase, swap };

const char* gate_name(GateKind k);
GateKind gate_kind(const std::string& name);
int control_count(GateKind k);

// rz(t) = diag(e^{-it/2}, e^{it/2}); phase(t) = diag(1, e^{it}).
struct Gate {
  GateKind kind = GateKind::h;
  std::vector<int> controls;
  std::vector<int> targets;
  Angle angle;
  // Basis-change gates that can stay uncontrolled when the whole program
  // is controlled, because they are undone later in the same program.
  bool frame = false;

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct GateProgram {
  int qubit_count = 0;
  std::vector<std::pair<std::string, int>> ancillas;
  Angle global_phase;
  std::vector<Gate> gates;

  int ancilla(const std::string& label) const;
  void add(GateKind k, std::vector<int> controls, std::vector<int> targets, Angle a = {},
           bool frame = false);
  void append(const GateProgram& other);
  friend bool operator==(const GateProgram&, const GateProgram&) = default;
};

struct CostRecord {
  std::uint64_t single_qubit = 0;
  std::uint64_t controlled = 0;
  std::uint64_t doubly_controlled = 0;
  std::uint64_t swaps = 0;

  CostRecord& operator+=(const CostRecord& o);
  friend CostRecord operator*(std::uint64_t k, CostRecord c);
  friend bool operator==(const CostRecord&, const CostRecord&) = default;
  std::string to_string() const;
};

struct SimOptions {
  int max_qubits = 24;
};

StateVector simulate(const GateProgram& prog, const StateVector& initial, const SimOptions& opt = {});
StateVector simulate(const GateProgram& prog, std::uint64_t basis_index, const SimOptions& opt = {});
void apply_gate(StateVector& psi, const Gate& g);

DenseMatrix matrix_of(const GateProgram& prog, int max_qubits = 12);

CostRecord count_gates(const GateProgram& prog);

GateProgram adjoint(const GateProgram& prog);

// Each gate gains `control` as an extra control; frame gates are left alone.
GateProgram controlled(const GateProgram& prog, int control);

std::string serialize_program(const GateProgram& prog);
GateProgram parse_program(const std::string& text);

struct RoutedProgram {
  GateProgram program;
  // final_position[q] is the line slot holding logical qubit q at the end.
  std::vector<int> final_position;
  std::vector<std::uint64_t> swaps_per_block;
  std::uint64_t total_swaps = 0;
};

// Maps logical qubits onto a line (line_order[slot] = logical qubit) and
// inserts nearest-neighbour swaps for the shared control of every run of
// two-qubit gates.
RoutedProgram route_linear(const GateProgram& prog, const std::vector<int>& line_order);

}  // namespace polyfermion
