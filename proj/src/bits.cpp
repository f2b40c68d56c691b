#include "polyfermion/bits.hpp"

#include <bit>

#include "polyfermion/error.hpp"

namespace polyfermion {

std::size_t Bits::weight() const {
  std::size_t s = 0;
  for (auto w : w_) s += std::popcount(w);
  return s;
}

bool Bits::none() const {
  for (auto w : w_)
    if (w) return false;
  return true;
}

std::vector<std::size_t> Bits::ones() const {
  std::vector<std::size_t> r;
  for (std::size_t k = 0; k < w_.size(); ++k) {
    auto w = w_[k];
    while (w) {
      r.push_back(k * 64 + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return r;
}

Bits& Bits::operator^=(const Bits& o) {
  if (o.n_ != n_) throw Error(Errc::invalid_argument, "bit length mismatch");
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
  return *this;
}

std::size_t Bits::dot(const Bits& o) const {
  if (o.n_ != n_) throw Error(Errc::invalid_argument, "bit length mismatch");
  std::size_t s = 0;
  for (std::size_t k = 0; k < w_.size(); ++k) s += std::popcount(w_[k] & o.w_[k]);
  return s;
}

std::string Bits::to_string(std::size_t block) const {
  std::string s;
  s.reserve(n_ + (block ? n_ / block : 0));
  for (std::size_t i = 0; i < n_; ++i) {
    if (block && i && i % block == 0) s.push_back(' ');
    s.push_back(get(i) ? '1' : '0');
  }
  return s;
}

Bits Bits::from_string(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) {
    if (c == '0' || c == '1')
      ++n;
    else if (c != ' ' && c != '\t' && c != '_')
      throw Error(Errc::parse_error, std::string("bad bit character '") + c + "'");
  }
  Bits b(n);
  std::size_t i = 0;
  for (char c : s) {
    if (c == '1') b.set(i);
    if (c == '0' || c == '1') ++i;
  }
  return b;
}

std::string Bits::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (std::size_t i = 0; i < n_; i += 4) {
    int v = 0;
    for (std::size_t k = 0; k < 4; ++k) v = (v << 1) | (i + k < n_ && get(i + k) ? 1 : 0);
    s.push_back(digits[v]);
  }
  return s;
}

Bits Bits::from_hex(const std::string& hex, std::size_t n) {
  if (hex.size() != (n + 3) / 4) throw Error(Errc::parse_error, "hex length does not match bit count");
  Bits b(n);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    char c = hex[d];
    int v;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'a' && c <= 'f')
      v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      v = c - 'A' + 10;
    else
      throw Error(Errc::parse_error, "bad hex digit");
    for (std::size_t k = 0; k < 4; ++k) {
      std::size_t i = 4 * d + k;
      bool bit = (v >> (3 - k)) & 1;
      if (i < n)
        b.set(i, bit);
      else if (bit)
        throw Error(Errc::parse_error, "hex padding bits must be zero");
    }
  }
  return b;
}

Bits Bits::from_indices(std::size_t n, const std::vector<std::size_t>& idx) {
  Bits b(n);
  for (auto i : idx) {
    if (i >= n) throw Error(Errc::out_of_range, "bit index out of range");
    b.flip(i);
  }
  return b;
}

}  // namespace polyfermion
