#include <cmath>
#include <random>

#include "doctest.h"
#include "polyfermion/error.hpp"
#include "polyfermion/estimate.hpp"

using namespace polyfermion;

namespace {

const EstimateRow* row(const std::vector<EstimateRow>& rows, const std::string& name) {
  for (const auto& r : rows)
    if (r.encoding == name) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("min_qubits") {
  CHECK(min_qubits(4, 2) == doctest::Approx(std::log2(6.0)));
  CHECK(min_qubits(100, 0) == 0);
  CHECK(min_qubits(30, 7) == doctest::Approx(std::log2(2035800.0)));
  CHECK_THROWS_AS(min_qubits(3, 4), Error);
  const double M = 1e12;
  CHECK(min_qubits(u64(M), 3) / (3 * std::log2(M)) > 0.97);
}

TEST_CASE("optimal degree examples") {
  const OptimalDegree a = optimal_degree(1000000, 10);
  CHECK(a.D == 1);
  CHECK(a.params.Q == 404609);
  const OptimalDegree b = optimal_degree(10000000, 10);
  CHECK(b.D == 2);
  CHECK(std::abs(double(b.params.Q) - 9e5) < 0.1 * 9e5);
  CHECK(optimal_degree(50, 3).D == 0);
}

TEST_CASE("optimizer exactness") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const u64 M = 2 + rng() % 100000000, F = 1 + rng() % 20;
    const OptimalDegree o = optimal_degree(M, F);
    const u64 cap = bits_for_modes(M - 1) + 2;
    u64 bestD = 0, bestQ = 0;
    bool found = false;
    for (u64 D = 0; D <= cap; ++D) {
      try {
        const CodeParams p = derive_params(M, F, D);
        if (!found || p.Q < bestQ) {
          bestQ = p.Q;
          bestD = D;
          found = true;
        }
      } catch (const Error&) {
      }
    }
    REQUIRE(found);
    REQUIRE(o.D == bestD);
    REQUIRE(o.params.Q == bestQ);
  }
}

TEST_CASE("information floor and monotonicity") {
  for (u64 M : {100ull, 5000ull, 118328ull, 1000000ull})
    for (u64 F : {1ull, 2ull, 10ull})
      for (u64 D = 0; D <= 4; ++D) {
        CodeParams p;
        try {
          p = derive_params(M, F, D);
        } catch (const Error&) {
          continue;
        }
        CHECK(double(p.Q) >= min_qubits(M, F));
      }
  CodeOptions o;
  o.use_raw_G = true;
  for (u64 D : {1, 2, 3}) {
    u64 prev = 0;
    for (u64 G = 1; G <= 60; ++G) {
      const u64 q = derive_params(100000, G, D, o).Q;
      CHECK(q >= prev);
      prev = q;
    }
  }
}

TEST_CASE("optimal Q over F^2 log^4 M stays bounded") {
  const u64 F = 10;
  double lo = 1e300, hi = 0;
  for (u64 M = 10000; M <= 100000000; M *= 10) {
    const double l = std::log2(double(M));
    const double r = double(optimal_degree(M, F).params.Q) / (F * F * l * l * l * l);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo < 10);
}

TEST_CASE("compare_encodings rows") {
  const auto a = compare_encodings(118328, 10);
  REQUIRE(row(a, "degree-1"));
  REQUIRE(row(a, "jordan-wigner"));
  CHECK(row(a, "degree-1")->qubits == 118327);
  CHECK(row(a, "jordan-wigner")->qubits == 118328);
  CHECK(row(a, "segment")->minimum);
  CHECK(!row(a, "degree-1")->minimum);

  const auto b = compare_encodings(1000000, 10);
  CHECK(row(b, "degree-1")->qubits == 404609);
  CHECK(row(b, "segment")->qubits == 954546);
  CHECK(row(b, "segment")->gates == "O(F^2)");

  const auto c = compare_encodings(100, 2);
  REQUIRE(row(c, "segment"));
  CHECK(row(c, "segment")->qubits == 84);
  CHECK(row(c, "segment")->minimum);
  for (const auto& r : c)
    if (r.encoding.rfind("degree-", 0) == 0) CHECK(r.qubits > 84);

  const std::string csv = rows_csv(b);
  CHECK(csv.rfind("encoding,qubits,gates,parameters,minimum\n", 0) == 0);
  CHECK(rows_table(b).find("optimal-degree") != std::string::npos);
}

TEST_CASE("threshold scan") {
  CHECK(threshold_k(3) == 0);
  // L = 5: 7^2 = 49 < 5*11 = 55, but 11^2 = 121 >= 5*13.
  CHECK(threshold_k(5) == 1);
  u64 worst = 0;
  const auto rows = threshold_scan(501);
  CHECK(rows.size() == 250);
  for (const auto& r : rows) worst = std::max(worst, r.max_k);
  CHECK(worst <= 4);
  CHECK_THROWS_AS(threshold_scan(500), Error);
}

TEST_CASE("simulation cost scaling") {
  const CodeParams p = optimal_degree(100000, 4).params;
  const SimCost a = sim_cost(SimKind::qdrift, 10, 1, 0.01, p);
  const SimCost b = sim_cost(SimKind::qdrift, 20, 1, 0.01, p);
  const SimCost c = sim_cost(SimKind::qdrift, 10, 1, 0.005, p);
  CHECK(b.rotations == 4 * a.rotations);
  CHECK(c.rotations == 2 * a.rotations);
  CHECK(a.per_rotation_doubly_controlled > 0);
  CHECK(a.total_doubly_controlled == double(a.rotations) * double(a.per_rotation_doubly_controlled));
  const SimCost r = sim_cost(SimKind::rpe, 10, 0.1, 0.5, p);
  CHECK(r.rotations == 20000);
  CHECK(r.circuits == 4);
  CHECK_THROWS_AS(sim_cost(SimKind::qdrift, 0, 1, 0.1, p), Error);
  CHECK_THROWS_AS(sim_cost(SimKind::rpe, 1, -1, 0.1, p), Error);

  u64 prev = 0;
  for (u64 M : {1000ull, 10000ull, 100000ull}) {
    const CodeParams q = optimal_degree(M, 4).params;
    const u64 per = sim_cost(SimKind::qdrift, 10, 1, 0.01, q).per_rotation_doubly_controlled;
    CHECK(per > prev);
    prev = per;
  }
}
