#include "polyfermion/codebook.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "polyfermion/error.hpp"

namespace polyfermion {

u64 bits_for_modes(u64 M) {
  u64 b = 0;
  while (b < 64 && (u64{1} << b) < M + 1) ++b;
  return b;
}

CodeParams derive_params(u64 M, u64 F_or_G, u64 D, const CodeOptions& opt) {
  if (M < 1) throw Error(Errc::invalid_argument, "need at least one mode");
  if (F_or_G < 1) throw Error(Errc::invalid_argument, "F (or G) must be >= 1");
  if (D > 64) throw Error(Errc::degree_too_large, "degree out of range");
  CodeParams p;
  p.M = M;
  p.D = D;
  p.raw_G = opt.use_raw_G;
  p.margin = opt.add_four_margin && !opt.use_raw_G;
  if (opt.use_raw_G) {
    p.F = 0;
    p.G = F_or_G;
  } else {
    p.F = F_or_G;
    p.G = (F_or_G + (p.margin ? 4 : 0)) * bits_for_modes(M);
  }
  const unsigned __int128 L = (unsigned __int128)2 * D * p.G + 1;
  if (L > opt.max_qubits) throw Error(Errc::capacity, "codeword weight exceeds qubit limit");
  p.L = u64(L);
  const u64 root = ceil_integer_root(M, unsigned(D + 1));
  if (opt.lprime) {
    const u64 lp = *opt.lprime;
    if (!is_prime(lp)) throw Error(Errc::parameter_invalid, "Lprime must be prime");
    if (lp < p.L || lp < root)
      throw Error(Errc::parameter_invalid, "Lprime too small for L and M");
    p.Lprime = lp;
  } else {
    p.Lprime = next_prime(std::max<u64>({root, p.L, 2}));
  }
  if (D >= p.Lprime) throw Error(Errc::degree_too_large, "degree must be below Lprime");
  const unsigned __int128 Q = (unsigned __int128)p.Lprime * p.L;
  if (Q > opt.max_qubits) throw Error(Errc::capacity, "qubit count exceeds configured limit");
  p.Q = u64(Q);
  return p;
}

std::string serialize_params(const CodeParams& p) {
  std::ostringstream os;
  os << "M = " << p.M << "\n"
     << "F = " << p.F << "\n"
     << "D = " << p.D << "\n"
     << "G = " << p.G << "\n"
     << "L = " << p.L << "\n"
     << "Lprime = " << p.Lprime << "\n"
     << "Q = " << p.Q << "\n"
     << "raw_G = " << (p.raw_G ? 1 : 0) << "\n"
     << "margin = " << (p.margin ? 1 : 0) << "\n"
     << "mode_assignment = base-Lprime-digits-lsd-x0\n";
  return os.str();
}

CodeParams parse_params(const std::string& text) {
  CodeParams p;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": expected key = value");
    }
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (k == "mode_assignment") continue;
    u64 x;
    try {
      std::size_t used = 0;
      x = std::stoull(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": bad number '" + v + "'");
    }
    if (k == "M") p.M = x;
    else if (k == "F") p.F = x;
    else if (k == "D") p.D = x;
    else if (k == "G") p.G = x;
    else if (k == "L") p.L = x;
    else if (k == "Lprime") p.Lprime = x;
    else if (k == "Q") p.Q = x;
    else if (k == "raw_G") p.raw_G = x != 0;
    else if (k == "margin") p.margin = x != 0;
    else throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": unknown key " + k);
  }
  if (!is_prime(p.Lprime) || p.L != 2 * p.D * p.G + 1 || p.Q != p.L * p.Lprime || p.Lprime < p.L)
    throw Error(Errc::parameter_invalid, "inconsistent code parameters");
  return p;
}

PolyFn mode_poly(u64 mode, const CodeParams& p) {
  if (mode >= p.M) throw Error(Errc::out_of_range, "mode index " + std::to_string(mode) + " >= M");
  return poly_from_index(mode, unsigned(p.D), p.Lprime);
}

std::vector<std::size_t> support_set(u64 mode, const CodeParams& p) {
  const PolyFn f = mode_poly(mode, p);
  std::vector<std::size_t> s(p.L);
  for (u64 x = 0; x < p.L; ++x) s[x] = std::size_t(x * p.Lprime + poly_eval(f, x));
  return s;
}

Codeword elementary_codeword(u64 mode, const CodeParams& p) {
  Codeword w(p.Q);
  for (auto q : support_set(mode, p)) w.set(q);
  return w;
}

namespace {

Codeword encode_unchecked(const BKString& b, const CodeParams& p) {
  Codeword w(p.Q);
  for (auto i : b.ones())
    for (auto q : support_set(i, p)) w.flip(q);
  return w;
}

// Overlap of w with every mode's codeword, by walking the polynomials that
// pass through each set qubit.
std::vector<std::uint32_t> overlaps_by_points(const Codeword& w, const CodeParams& p) {
  std::vector<std::uint32_t> cnt(p.M, 0);
  const u64 Lp = p.Lprime, D = p.D;
  std::vector<u64> tail(D, 0), xpow(D + 1);
  for (auto q : w.ones()) {
    const u64 x = q / Lp, v = q % Lp;
    xpow[0] = 1;
    for (u64 k = 1; k <= D; ++k) xpow[k] = xpow[k - 1] * x % Lp;
    std::fill(tail.begin(), tail.end(), 0);
    while (true) {
      u64 s = 0, idx = 0;
      for (u64 k = D; k >= 1; --k) {
        s = (s + tail[k - 1] * xpow[k]) % Lp;
        idx = idx * Lp + tail[k - 1];
      }
      const u64 c0 = (v + Lp - s) % Lp;
      const unsigned __int128 m = (unsigned __int128)idx * Lp + c0;
      if (m < p.M) ++cnt[std::size_t(m)];
      u64 k = 0;
      while (k < D && ++tail[k] == Lp) tail[k++] = 0;
      if (k == D) break;
    }
  }
  return cnt;
}

}  // namespace

Codeword encode(const BKString& b, const CodeParams& p) {
  if (b.size() != p.M) throw Error(Errc::invalid_argument, "BK string length must equal M");
  const auto wt = b.weight();
  if (wt > p.G)
    throw Error(Errc::weight_exceeded,
                "BK weight " + std::to_string(wt) + " exceeds G = " + std::to_string(p.G));
  return encode_unchecked(b, p);
}

u64 overlap(const Codeword& w, u64 mode, const CodeParams& p) {
  u64 n = 0;
  for (auto q : support_set(mode, p)) n += w.get(q);
  return n;
}

BKString decode(const Codeword& w, const CodeParams& p) {
  if (w.size() != p.Q) throw Error(Errc::invalid_argument, "codeword length must equal Q");
  BKString b(p.M);
  double walk = double(w.weight());
  for (u64 k = 0; k < p.D; ++k) walk *= double(p.Lprime);
  if (walk < double(p.M) * double(p.L)) {
    auto cnt = overlaps_by_points(w, p);
    for (u64 i = 0; i < p.M; ++i)
      if (2 * u64(cnt[i]) > p.L) b.set(i);
  } else {
    for (u64 i = 0; i < p.M; ++i)
      if (2 * overlap(w, i, p) > p.L) b.set(i);
  }
  const Codeword back = encode_unchecked(b, p);
  if (!(back == w)) {
    const Codeword mask = back ^ w;
    throw Error(Errc::not_a_codeword, "re-encoding differs; mismatch mask " + mask.to_hex());
  }
  return b;
}

std::string codeword_string(const Codeword& w, const CodeParams& p) {
  return w.to_string(std::size_t(p.Lprime));
}

VerifyReport verify_codewords(const std::vector<Codeword>& words, u64 L, u64 D) {
  VerifyReport r;
  r.exhaustive = true;
  r.codewords = words.size();
  for (std::size_t i = 0; i < words.size() && r.pass; ++i) {
    if (words[i].weight() != L) {
      r.pass = false;
      r.failure = "codeword " + std::to_string(i) + " has weight " + std::to_string(words[i].weight());
    }
  }
  for (std::size_t i = 0; i < words.size() && r.pass; ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      ++r.pairs;
      const u64 o = words[i].dot(words[j]);
      r.max_overlap = std::max(r.max_overlap, o);
      if (o > D) {
        r.pass = false;
        r.bad_pair = {i, j};
        r.failure = "overlap " + std::to_string(o) + " between codewords " + std::to_string(i) +
                    " and " + std::to_string(j);
        break;
      }
    }
  }
  return r;
}

VerifyReport verify_code(const CodeParams& p, VerifyMode mode, u64 samples, u64 seed) {
  if (p.L <= 2 * p.D * p.G)
    throw Error(Errc::parameter_invalid, "L must exceed 2DG for unique decoding");
  if (!is_prime(p.Lprime) || p.Lprime < p.L || p.D >= p.Lprime || p.Q != p.L * p.Lprime)
    throw Error(Errc::parameter_invalid, "inconsistent code parameters");
  u64 space = 1;
  for (u64 k = 0; k <= p.D && space <= 4096; ++k) space *= p.Lprime;
  if (mode == VerifyMode::exhaustive && space > 4096)
    throw Error(Errc::capacity, "exhaustive verification limited to Lprime^(D+1) <= 4096");

  VerifyReport r;
  r.exhaustive = mode == VerifyMode::exhaustive;
  r.codewords = p.M;
  std::mt19937_64 rng(seed);
  auto fail = [&](const std::string& msg) {
    r.pass = false;
    if (r.failure.empty()) r.failure = msg;
  };

  // Weight and block structure.
  std::vector<u64> modes;
  if (r.exhaustive) {
    for (u64 i = 0; i < p.M; ++i) modes.push_back(i);
  } else {
    std::uniform_int_distribution<u64> pick(0, p.M - 1);
    for (u64 s = 0; s < samples; ++s) modes.push_back(pick(rng));
  }
  for (u64 i : modes) {
    const auto s = support_set(i, p);
    const Codeword w = elementary_codeword(i, p);
    if (w.weight() != p.L) fail("mode " + std::to_string(i) + " has wrong weight");
    for (u64 x = 0; x < p.L; ++x)
      if (s[x] / p.Lprime != x) fail("mode " + std::to_string(i) + " leaves its block");
  }

  // Pairwise overlaps via polynomial agreement on [0, L).
  auto check_pair = [&](u64 i, u64 j) {
    ++r.pairs;
    const u64 o = count_intersections(mode_poly(i, p), mode_poly(j, p), p.L);
    r.max_overlap = std::max(r.max_overlap, o);
    if (o > p.D && !r.bad_pair) {
      r.bad_pair = {i, j};
      fail("overlap " + std::to_string(o) + " between modes " + std::to_string(i) + " and " +
           std::to_string(j));
    }
  };
  if (r.exhaustive) {
    for (u64 i = 0; i < p.M; ++i)
      for (u64 j = i + 1; j < p.M; ++j) check_pair(i, j);
  } else if (p.M > 1) {
    std::uniform_int_distribution<u64> pick(0, p.M - 1);
    for (u64 s = 0; s < samples; ++s) {
      u64 i = pick(rng), j = pick(rng);
      if (i != j) check_pair(i, j);
    }
  }

  // Sums of up to G codewords: round trip and the membership margins.
  auto check_sum = [&](const std::vector<u64>& members) {
    ++r.sums_checked;
    BKString b(p.M);
    for (u64 i : members) b.set(i);
    const Codeword w = encode(b, p);
    try {
      if (!(decode(w, p) == b)) fail("round trip failed");
    } catch (const Error& e) {
      fail(std::string("round trip raised ") + e.what());
    }
    std::vector<char> in(p.M, 0);
    for (u64 i : members) in[i] = 1;
    const auto cnt = overlaps_by_points(w, p);
    const u64 k = members.size();
    for (u64 i = 0; i < p.M; ++i) {
      if (in[i] && cnt[i] + (k - 1) * p.D < p.L)
        fail("member " + std::to_string(i) + " overlap below L - (k-1)D");
      if (!in[i] && cnt[i] > k * p.D)
        fail("non-member " + std::to_string(i) + " overlap exceeds kD");
    }
  };
  // Count of b with weight <= G, saturating.
  double count = 0, term = 1;
  for (u64 k = 0; k <= std::min(p.G, p.M); ++k) {
    count += term;
    term = term * double(p.M - k) / double(k + 1);
  }
  const u64 gmax = std::min(p.G, p.M);
  if (r.exhaustive && count <= 1e5) {
    std::vector<u64> cur;
    auto rec = [&](auto&& self, u64 start) -> void {
      check_sum(cur);
      if (cur.size() == gmax) return;
      for (u64 i = start; i < p.M; ++i) {
        cur.push_back(i);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  } else {
    std::uniform_int_distribution<u64> wt(0, gmax), pick(0, p.M - 1);
    for (u64 s = 0; s < samples && r.pass; ++s) {
      const u64 k = wt(rng);
      std::vector<u64> m;
      while (m.size() < k) {
        u64 i = pick(rng);
        if (std::find(m.begin(), m.end(), i) == m.end()) m.push_back(i);
      }
      check_sum(m);
    }
  }
  return r;
}

SegmentParams segment_params(u64 M, u64 F) {
  if (F < 1) throw Error(Errc::invalid_argument, "F must be >= 1");
  SegmentParams s;
  s.M = M;
  s.F = F;
  s.L = 2 * F + 1;
  if (M < s.L + 1) throw Error(Errc::no_segment_advantage, "need M >= 2F + 2");
  s.segment_count = M / (s.L + 1);
  s.remainder = M - s.segment_count * (s.L + 1);
  s.Q = s.segment_count * s.L + s.remainder;
  return s;
}

}  // namespace polyfermion
