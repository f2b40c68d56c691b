#include "polyfermion/bk.hpp"

#include <algorithm>
#include <sstream>

#include "polyfermion/error.hpp"

namespace polyfermion {

namespace {

std::size_t lowbit(std::size_t i) { return i & (~i + 1); }

void check_mode(std::size_t j, std::size_t M) {
  if (j >= M)
    throw Error(Errc::invalid_argument, "mode " + std::to_string(j) + " outside [0, " + std::to_string(M) + ")");
}

}  // namespace

// Node j (1-based i = j+1) stores the parity of modes [i - lowbit(i), i).
std::vector<std::size_t> update_set(std::size_t j, std::size_t M) {
  check_mode(j, M);
  std::vector<std::size_t> s;
  for (std::size_t i = j + 1 + lowbit(j + 1); i <= M; i += lowbit(i)) s.push_back(i - 1);
  return s;
}

std::vector<std::size_t> parity_set(std::size_t j, std::size_t M) {
  check_mode(j, M);
  std::vector<std::size_t> s;
  for (std::size_t i = j; i > 0; i -= lowbit(i)) s.push_back(i - 1);
  std::reverse(s.begin(), s.end());
  return s;
}

std::vector<std::size_t> flip_set(std::size_t j, std::size_t M) {
  check_mode(j, M);
  const std::size_t i = j + 1, stop = i - lowbit(i);
  std::vector<std::size_t> s;
  for (std::size_t c = i - 1; c > stop; c -= lowbit(c)) s.push_back(c - 1);
  std::reverse(s.begin(), s.end());
  return s;
}

std::vector<std::size_t> remainder_set(std::size_t j, std::size_t M) {
  auto p = parity_set(j, M), f = flip_set(j, M);
  std::vector<std::size_t> r;
  std::set_difference(p.begin(), p.end(), f.begin(), f.end(), std::back_inserter(r));
  return r;
}

Bits bk_encode(const OccupationVector& occ) {
  const std::size_t M = occ.size();
  Bits b(M);
  for (auto j : occ.ones()) {
    b.flip(j);
    for (auto u : update_set(j, M)) b.flip(u);
  }
  return b;
}

OccupationVector bk_decode(const Bits& b) {
  const std::size_t M = b.size();
  OccupationVector occ(M);
  for (std::size_t j = 0; j < M; ++j) {
    bool v = b.get(j);
    for (auto c : flip_set(j, M)) v ^= b.get(c);
    occ.set(j, v);
  }
  return occ;
}

std::vector<Bits> bk_matrix(std::size_t M) {
  std::vector<Bits> rows(M, Bits(M));
  for (std::size_t i = 1; i <= M; ++i)
    for (std::size_t j = i - lowbit(i); j < i; ++j) rows[i - 1].set(j);
  return rows;
}

std::complex<double> PauliSupport::phase_value() const {
  static const std::complex<double> v[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return v[phase & 3];
}

std::string PauliSupport::to_string() const {
  static const char* ph[4] = {"+1", "+i", "-1", "-i"};
  std::ostringstream os;
  os << ph[phase & 3];
  auto set = [&](char c, const std::set<std::size_t>& s) {
    if (s.empty()) return;
    os << ' ' << c << '{';
    bool first = true;
    for (auto i : s) {
      os << (first ? "" : ",") << i;
      first = false;
    }
    os << '}';
  };
  set('X', x);
  set('Z', z);
  if (x.empty() && z.empty()) os << " I";
  return os.str();
}

PauliSupport PauliSupport::parse(const std::string& s) {
  PauliSupport p;
  std::istringstream is(s);
  std::string tok;
  if (!(is >> tok)) throw Error(Errc::parse_error, "empty Pauli support");
  if (tok == "+1" || tok == "+") p.phase = 0;
  else if (tok == "+i") p.phase = 1;
  else if (tok == "-1" || tok == "-") p.phase = 2;
  else if (tok == "-i") p.phase = 3;
  else throw Error(Errc::parse_error, "bad phase '" + tok + "'");
  while (is >> tok) {
    if (tok == "I") continue;
    if (tok.size() < 3 || (tok[0] != 'X' && tok[0] != 'Z') || tok[1] != '{' || tok.back() != '}')
      throw Error(Errc::parse_error, "bad Pauli factor '" + tok + "'");
    auto& target = tok[0] == 'X' ? p.x : p.z;
    std::string body = tok.substr(2, tok.size() - 3);
    std::istringstream bs(body);
    std::string item;
    while (std::getline(bs, item, ',')) {
      try {
        target.insert(std::stoull(item));
      } catch (const std::exception&) {
        throw Error(Errc::parse_error, "bad index '" + item + "'");
      }
    }
  }
  return p;
}

PauliSupport majorana_support(std::size_t j, MajoranaKind kind, std::size_t M) {
  check_mode(j, M);
  PauliSupport p;
  p.x.insert(j);
  for (auto u : update_set(j, M)) p.x.insert(u);
  if (kind == MajoranaKind::even) {
    for (auto q : parity_set(j, M)) p.z.insert(q);
  } else {
    p.phase = 1;
    p.z.insert(j);
    for (auto q : remainder_set(j, M)) p.z.insert(q);
  }
  return p;
}

PauliSupport pauli_product(const std::vector<PauliSupport>& factors) {
  PauliSupport acc;
  for (const auto& f : factors) {
    // (X1 Z1)(X2 Z2) = (-1)^{|z1 & x2|} X1 X2 Z1 Z2
    std::size_t clash = 0;
    for (auto q : acc.z) clash += f.x.count(q);
    acc.phase = (acc.phase + f.phase + 2 * int(clash & 1)) & 3;
    for (auto q : f.x)
      if (!acc.x.erase(q)) acc.x.insert(q);
    for (auto q : f.z)
      if (!acc.z.erase(q)) acc.z.insert(q);
  }
  return acc;
}

PauliSupport fermionic_x(std::size_t j, std::size_t M) {
  PauliSupport p;
  p.x.insert(j);
  for (auto u : update_set(j, M)) p.x.insert(u);
  return p;
}

PauliSupport fermionic_z(std::size_t j, std::size_t M) {
  check_mode(j, M);
  PauliSupport p;
  p.z.insert(j);
  for (auto c : flip_set(j, M)) p.z.insert(c);
  return p;
}

}  // namespace polyfermion
