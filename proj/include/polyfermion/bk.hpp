#pragma once

#include <complex>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "polyfermion/bits.hpp"

namespace polyfermion {

using OccupationVector = Bits;

// Fenwick-tree sets over modes 0..M-1.
std::vector<std::size_t> update_set(std::size_t j, std::size_t M);
std::vector<std::size_t> parity_set(std::size_t j, std::size_t M);
std::vector<std::size_t> flip_set(std::size_t j, std::size_t M);
std::vector<std::size_t> remainder_set(std::size_t j, std::size_t M);

Bits bk_encode(const OccupationVector& occ);
OccupationVector bk_decode(const Bits& b);

// Dense GF(2) transform: row i, column j is 1 when mode j feeds bit i.
std::vector<Bits> bk_matrix(std::size_t M);

enum class MajoranaKind { even, odd };

// phase * prod X_x * prod Z_z
struct PauliSupport {
  std::set<std::size_t> x;
  std::set<std::size_t> z;
  int phase = 0;  // power of i, in 0..3

  std::complex<double> phase_value() const;
  bool is_identity() const { return x.empty() && z.empty(); }
  std::string to_string() const;
  static PauliSupport parse(const std::string& s);
  friend bool operator==(const PauliSupport&, const PauliSupport&) = default;
};

PauliSupport majorana_support(std::size_t j, MajoranaKind kind, std::size_t M);

PauliSupport pauli_product(const std::vector<PauliSupport>& factors);

// Occupation-level Pauli operators written over BK bits.
PauliSupport fermionic_x(std::size_t j, std::size_t M);
PauliSupport fermionic_z(std::size_t j, std::size_t M);

}  // namespace polyfermion
