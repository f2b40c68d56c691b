#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyfermion/bits.hpp"
#include "polyfermion/ffpoly.hpp"

namespace polyfermion {

struct CodeOptions {
  bool use_raw_G = false;
  bool add_four_margin = false;
  u64 max_qubits = u64{1} << 40;
  // Force a particular block size; must be prime and admissible.
  std::optional<u64> lprime;
};

struct CodeParams {
  u64 M = 0;
  u64 F = 0;  // fermion count, or 0 when G was given directly
  u64 D = 0;
  u64 G = 0;
  u64 L = 0;
  u64 Lprime = 0;
  u64 Q = 0;
  bool raw_G = false;
  bool margin = false;

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

// ceil(log2(M + 1))
u64 bits_for_modes(u64 M);

CodeParams derive_params(u64 M, u64 F_or_G, u64 D, const CodeOptions& opt = {});

// Flat "key = value" record; the mode assignment rule is recorded too.
std::string serialize_params(const CodeParams& p);
CodeParams parse_params(const std::string& text);

using Codeword = Bits;
using BKString = Bits;

PolyFn mode_poly(u64 mode, const CodeParams& p);

// Qubit positions of the L ones of the elementary codeword, one per block.
std::vector<std::size_t> support_set(u64 mode, const CodeParams& p);

Codeword elementary_codeword(u64 mode, const CodeParams& p);

Codeword encode(const BKString& b, const CodeParams& p);

// Overlap of codeword w with the elementary codeword of `mode`.
u64 overlap(const Codeword& w, u64 mode, const CodeParams& p);

BKString decode(const Codeword& w, const CodeParams& p);

std::string codeword_string(const Codeword& w, const CodeParams& p);

struct VerifyReport {
  bool pass = true;
  bool exhaustive = false;
  u64 codewords = 0;
  u64 pairs = 0;
  u64 max_overlap = 0;
  u64 sums_checked = 0;
  std::string failure;
  std::optional<std::pair<u64, u64>> bad_pair;
};

enum class VerifyMode { exhaustive, sampled };

VerifyReport verify_code(const CodeParams& p, VerifyMode mode, u64 samples = 10000,
                         u64 seed = 1);

// Checks an explicit codeword family against weight L and overlap <= D.
VerifyReport verify_codewords(const std::vector<Codeword>& words, u64 L, u64 D);

struct SegmentParams {
  u64 M = 0;
  u64 F = 0;
  u64 L = 0;
  u64 segment_count = 0;
  u64 remainder = 0;
  u64 Q = 0;
  bool advantage() const { return Q < M; }
};

SegmentParams segment_params(u64 M, u64 F);

}  // namespace polyfermion
