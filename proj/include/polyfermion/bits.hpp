#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace polyfermion {

// Fixed-length bit sequence packed into 64-bit words. Bit 0 is the first
// character of the textual form.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    if (v)
      w_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
      w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t weight() const;
  bool none() const;
  std::vector<std::size_t> ones() const;

  Bits& operator^=(const Bits& o);
  friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }
  friend bool operator==(const Bits& a, const Bits& b) { return a.n_ == b.n_ && a.w_ == b.w_; }

  // Number of positions set in both.
  std::size_t dot(const Bits& o) const;

  // '0'/'1' characters, with a space after every `block` bits when block > 0.
  std::string to_string(std::size_t block = 0) const;
  static Bits from_string(const std::string& s);

  // Big-endian hex over the textual bit order, padded to a multiple of 4 bits.
  std::string to_hex() const;
  static Bits from_hex(const std::string& hex, std::size_t n);

  static Bits from_indices(std::size_t n, const std::vector<std::size_t>& idx);

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace polyfermion
