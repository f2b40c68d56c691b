#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "polyfermion/circuit.hpp"
#include "polyfermion/error.hpp"
#include "polyfermion/qsp.hpp"

using namespace polyfermion;

namespace {

StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  StateVector v(1 << n);
  for (auto& a : v) a = cplx(g(rng), g(rng));
  return v / v.norm();
}

// Moves amplitudes from logical qubit order to slot order.
StateVector relabel(const StateVector& v, const std::vector<int>& pos) {
  StateVector out = StateVector::Zero(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Eigen::Index j = 0;
    for (std::size_t q = 0; q < pos.size(); ++q)
      if (i >> q & 1) j |= Eigen::Index(1) << pos[q];
    out[j] = v[i];
  }
  return out;
}

GateProgram parity_program(int L) {
  std::vector<int> q(L);
  for (int k = 0; k < L; ++k) q[k] = k;
  return synth_parity({q, L}, L + 1);
}

}  // namespace

TEST_CASE("Angle arithmetic and text") {
  CHECK(Angle::pi_frac(2, 4).to_string() == "1/2 pi");
  CHECK(Angle::pi_frac(3, -6).to_string() == "-1/2 pi");
  CHECK(Angle::parse("pi") == Angle::pi_frac(1, 1));
  CHECK(Angle::parse("-pi") == Angle::pi_frac(-1, 1));
  CHECK(Angle::parse("3/7 pi") == Angle::pi_frac(3, 7));
  CHECK(Angle::parse("0.25").radians() == 0.25);
  CHECK((Angle::pi_frac(1, 3) + Angle::pi_frac(1, 6)) == Angle::pi_frac(1, 2));
  CHECK((-Angle::from_decimal("0.5")).decimal == "-0.5");
  CHECK(Angle::pi_frac(0, 5).is_zero());
  CHECK_THROWS_AS(Angle::parse("1/0 pi"), Error);
  CHECK_THROWS_AS(Angle::parse("abc"), Error);
}

TEST_CASE("simulate basics") {
  GateProgram h;
  h.qubit_count = 1;
  h.add(GateKind::h, {}, {0});
  const StateVector v = simulate(h, 0);
  CHECK(std::abs(v[0] - cplx(M_SQRT1_2)) < 1e-15);
  CHECK(std::abs(v[1] - cplx(M_SQRT1_2)) < 1e-15);

  GateProgram big;
  big.qubit_count = 25;
  CHECK_THROWS_AS(simulate(big, 0), Error);
  try {
    simulate(big, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::resource);
  }
  GateProgram empty;
  empty.qubit_count = 3;
  CHECK(matrix_of(empty).isApprox(DenseMatrix::Identity(8, 8)));
  CHECK(count_gates(empty) == CostRecord{});
  GateProgram wide;
  wide.qubit_count = 13;
  CHECK_THROWS_AS(matrix_of(wide), Error);
}

TEST_CASE("gate conventions") {
  GateProgram p;
  p.qubit_count = 2;
  p.add(GateKind::rz, {}, {0}, Angle::pi_frac(1, 2));
  const DenseMatrix m = matrix_of(p);
  CHECK(std::abs(m(0, 0) - std::exp(cplx(0, -M_PI / 4))) < 1e-15);
  CHECK(std::abs(m(1, 1) - std::exp(cplx(0, M_PI / 4))) < 1e-15);
  GateProgram c;
  c.qubit_count = 2;
  c.add(GateKind::ctrl_phase, {1}, {0}, Angle::pi_frac(1, 1));
  const DenseMatrix cz = matrix_of(c);
  CHECK(cz.isApprox(DenseMatrix(Eigen::Vector4cd(1, 1, 1, -1).asDiagonal())));
  GateProgram s;
  s.qubit_count = 2;
  s.add(GateKind::x, {}, {0});
  s.add(GateKind::swap, {}, {0, 1});
  CHECK(std::abs(simulate(s, 0)[2] - 1.0) < 1e-15);
  GateProgram bad;
  bad.qubit_count = 2;
  CHECK_THROWS_AS(bad.add(GateKind::ctrl_rz, {0}, {0}, Angle::pi_frac(1, 3)), Error);
  CHECK_THROWS_AS(bad.add(GateKind::h, {}, {2}), Error);
}

TEST_CASE("count_gates on parity programs") {
  const CostRecord c3 = count_gates(parity_program(3));
  CHECK(c3.controlled == 15);
  CHECK(c3.single_qubit == 40);
  const CostRecord c5 = count_gates(parity_program(5));
  CHECK(c5.controlled == 45);
  CHECK(c5.single_qubit == 45 + 5 * 9);
  CHECK(count_gates(parity_program(5)) == c5);
}

TEST_CASE("adjoint inverts and programs are unitary") {
  for (int L : {3, 5}) {
    const GateProgram p = parity_program(L);
    GateProgram both = p;
    both.append(adjoint(p));
    both.global_phase = p.global_phase + adjoint(p).global_phase;
    const DenseMatrix m = matrix_of(both);
    CHECK((m - DenseMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() < 1e-10);
    const DenseMatrix u = matrix_of(p);
    CHECK((u.adjoint() * u - DenseMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("controlled program") {
  GateProgram p;
  p.qubit_count = 3;
  p.add(GateKind::h, {}, {0}, {}, true);
  p.add(GateKind::rz, {}, {0}, Angle::pi_frac(1, 3));
  p.add(GateKind::ctrl_phase, {0}, {1}, Angle::pi_frac(1, 5));
  p.add(GateKind::x, {}, {1});
  p.add(GateKind::h, {}, {0}, {}, true);
  p.global_phase = Angle::pi_frac(1, 7);
  const GateProgram c = controlled(p, 2);
  const DenseMatrix U = matrix_of(p), C = matrix_of(c);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const bool ci = i >> 2 & 1, cj = j >> 2 & 1;
      cplx want = 0;
      if (ci == cj) want = ci ? U(i, j) : (i == j ? 1.0 : 0.0);
      REQUIRE(std::abs(C(i, j) - want) < 1e-12);
    }
  const CostRecord k = count_gates(c);
  CHECK(k.doubly_controlled == 1);
  CHECK_THROWS_AS(controlled(p, 1), Error);
}

TEST_CASE("program text round trip") {
  GateProgram p = parity_program(3);
  p.add(GateKind::swap, {}, {0, 1});
  p.add(GateKind::cctrl_phase, {0, 1}, {2}, Angle::pi_frac(1, 4));
  const std::string s = serialize_program(p);
  const GateProgram q = parse_program(s);
  CHECK(q == p);
  CHECK(serialize_program(q) == s);
  try {
    parse_program("qubits 2\nh c=- t=0 f=0 a=0/1 pi\nfrob c=- t=0 f=0 a=0\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("routing examples") {
  GateProgram adj;
  adj.qubit_count = 2;
  adj.add(GateKind::ctrl_phase, {0}, {1}, Angle::pi_frac(1, 3));
  CHECK(route_linear(adj, {0, 1}).total_swaps == 0);

  GateProgram ends;
  ends.qubit_count = 9;
  ends.add(GateKind::ctrl_rz, {4}, {0}, Angle::pi_frac(1, 3));
  ends.add(GateKind::ctrl_rz, {4}, {8}, Angle::pi_frac(1, 3));
  const RoutedProgram r = route_linear(ends, {0, 1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(r.total_swaps <= 13);

  GateProgram bad;
  bad.qubit_count = 3;
  bad.add(GateKind::cctrl_phase, {0, 1}, {2}, Angle::pi_frac(1, 3));
  CHECK_THROWS_AS(route_linear(bad, {0, 1, 2}), Error);
}

TEST_CASE("routing preserves semantics and respects the swap bound") {
  std::mt19937_64 rng(11);
  for (int L : {3, 5}) {
    // Support spread over a 9- or 11-qubit register, ancilla last.
    const int Q = L == 3 ? 9 : 11;
    std::vector<int> support;
    for (int k = 0; k < L; ++k) support.push_back(k * (Q - 1) / (L - 1));
    const GateProgram p = synth_parity({support, Q}, Q + 1);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> order(Q + 1);
      std::iota(order.begin(), order.end(), 0);
      if (trial) std::shuffle(order.begin(), order.end(), rng);
      const RoutedProgram r = route_linear(p, order);
      REQUIRE(r.swaps_per_block.size() == std::size_t(2 * L - 1));
      for (auto s : r.swaps_per_block) CHECK(s <= std::uint64_t(3 * Q / 2));
      std::vector<int> start(Q + 1);
      for (int s = 0; s <= Q; ++s) start[order[s]] = s;
      for (int k = 0; k < 10; ++k) {
        const StateVector v = random_state(Q + 1, rng);
        const StateVector want = relabel(simulate(p, v), r.final_position);
        const StateVector got = simulate(r.program, relabel(v, start));
        REQUIRE((want - got).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }
}
