#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "polyfermion/bk.hpp"
#include "polyfermion/circuit.hpp"
#include "polyfermion/codebook.hpp"

namespace polyfermion {

struct FermionTerm {
  double coefficient = 0;
  std::vector<std::size_t> creators;
  std::vector<std::size_t> annihilators;
  // Operator order as written, true for a creator.
  std::vector<std::pair<std::size_t, bool>> ops;
};

std::vector<FermionTerm> parse_hamiltonian(const std::string& text, bool audit = false);

// Modes 2j (even kind) and 2j+1 (odd kind), strictly ascending.
struct MajoranaMonomial {
  std::complex<double> coefficient;
  std::vector<std::size_t> factors;

  std::string to_string() const;
};

std::vector<MajoranaMonomial> majorana_decompose(const std::vector<FermionTerm>& terms,
                                                 double drop_tol = 1e-12);

// Sum of |coefficient| over non-identity monomials.
double lambda_norm(const std::vector<MajoranaMonomial>& monos);

PauliSupport monomial_support(const MajoranaMonomial& m, std::size_t M);

struct EncodedLayout {
  CodeParams params;
  int qubit_count = 0;
  int qsp_ancilla = 0;
  int rotation_ancilla = -1;
};

// Q code qubits, then the QSP ancilla, then the rotation ancilla.
EncodedLayout make_layout(const CodeParams& p, bool with_rotation_ancilla);

// Z parts first, then the X parts; the Pauli phase goes to global_phase.
GateProgram encode_pauli(const PauliSupport& p, const EncodedLayout& lay);

struct EncodedTerm {
  PauliSupport pauli;
  double coefficient = 0;
  GateProgram program;
};

EncodedTerm encode_term(const PauliSupport& p, double coefficient, const EncodedLayout& lay);

// e^{i theta T} for Hermitian unitary T (the Pauli phase must be +1 or -1).
GateProgram synth_rotation(const EncodedTerm& term, double theta, const EncodedLayout& lay);
GateProgram synth_rotation(const GateProgram& T, const Angle& theta, const EncodedLayout& lay);

// Hop gate on modes i, j.
GateProgram synth_hop(std::size_t i, std::size_t j, double phi, const EncodedLayout& lay);

// Basis-state action of an encoded Pauli: (image codeword, phase).
std::pair<Codeword, std::complex<double>> classical_propagate(const PauliSupport& p, const CodeParams& params,
                                             const Codeword& w);

struct TermCost {
  CostRecord operation;  // one application of the encoded Pauli
  CostRecord rotation;   // e^{i theta T}
  double asymptotic = 0;  // D^2 F^2 log^3 M
};

TermCost term_cost(const PauliSupport& p, const CodeParams& params);

}  // namespace polyfermion
