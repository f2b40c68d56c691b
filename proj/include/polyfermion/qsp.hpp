#pragma once

#include <string>
#include <vector>

#include "polyfermion/circuit.hpp"
#include "polyfermion/hermite.hpp"

namespace polyfermion {

// W_phi = [[x, -i e^{-i phi} s], [-i e^{i phi} s, x]], x = cos G, s = sin G.
// The product W_{phases[0]} W_{phases[1]} ... (rightmost applied first)
// times diag(e^{i alpha}, e^{-i alpha}) has top-left entry A(x).
struct AngleSequence {
  std::vector<Angle> phases;
  Angle alpha;
  std::string convention = "Wx";
  // Half-angle iterates: the polynomial is in cos(G/2).
  bool half_angle = false;
  double residual = 0;
};

struct SupportSet {
  std::vector<int> qubits;
  int ancilla = 0;
};

struct QspOptions {
  int digits = 30;          // decimal digits stored per phase
  double tolerance = 1e-8;  // block residual at Chebyshev nodes
  int check_points = 64;
  int refine_iterations = 20;
};

// Angle sequence for an arbitrary real polynomial given in monomial form.
AngleSequence find_qsp_angles(const std::vector<Real>& monomial, const QspOptions& opt = {});
AngleSequence find_qsp_angles(const HermitePoly<Real>& p, const QspOptions& opt = {});

// Top-left block entry of the iterate product at x, double precision.
cplx qsp_response(const AngleSequence& a, double x);

// Exact block-form matrix of one iterate on (ancilla, register),
// built from the eigenvalues of the rescaled Z-sum; little-endian indices
// with the ancilla given as a qubit index.
DenseMatrix phased_iterate_oracle(const SupportSet& s, int qubit_count, double phi, int den = 0);

GateProgram build_phased_iterate(const SupportSet& s, int qubit_count, const Angle& phi,
                                 int den = 0);

// Cached majority angles for support size L.
const AngleSequence& parity_angles(int L);

GateProgram synth_parity(const SupportSet& s, int qubit_count, const AngleSequence& angles);
GateProgram synth_parity(const SupportSet& s, int qubit_count);

GateProgram synth_encoded_x(const std::vector<int>& support, int qubit_count);

// n data qubits 0..n-1 plus ancilla n.
GateProgram synth_multi_ctrl_phase(int n, const QspOptions& opt = {});
// Hadamard-conjugated target n-1: flips it when qubits 0..n-2 are all one.
GateProgram synth_multi_ctrl_not(int n, const QspOptions& opt = {});

}  // namespace polyfermion
