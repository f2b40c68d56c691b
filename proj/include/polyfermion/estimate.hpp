#pragma once

#include <string>
#include <vector>

#include "polyfermion/codebook.hpp"
#include "polyfermion/synth.hpp"

namespace polyfermion {

double min_qubits(u64 M, u64 F);

struct OptimalDegree {
  u64 D = 0;
  CodeParams params;
  std::vector<CodeParams> scanned;
};

OptimalDegree optimal_degree(u64 M, u64 F, const CodeOptions& opt = {});

struct EstimateRow {
  std::string encoding;
  double qubits = 0;
  std::string gates;  // numeric where a formula exists, asymptotic otherwise
  std::string parameters;
  bool minimum = false;
};

std::vector<EstimateRow> compare_encodings(u64 M, u64 F);
std::string rows_csv(const std::vector<EstimateRow>& rows);
std::string rows_table(const std::vector<EstimateRow>& rows);

struct ThresholdRow {
  u64 G = 0;
  u64 L = 0;
  u64 max_k = 0;
};

std::vector<ThresholdRow> threshold_scan(u64 L_max);

// Largest k with p_k^2 < L p_{k+1}, p_k the k-th prime above L; 0 if none.
u64 threshold_k(u64 L);

enum class SimKind { qdrift, rpe };

struct CostConstants {
  double c = 2;
  double c_prime = 1;
};

struct SimCost {
  u64 rotations = 0;  // per circuit for rpe
  u64 circuits = 1;
  u64 per_rotation_doubly_controlled = 0;
  double total_doubly_controlled = 0;
};

// Worst-case two-body term used to price one rotation.
PauliSupport representative_term(const CodeParams& p);

SimCost sim_cost(SimKind kind, double lambda, double t_or_delta, double eps_or_eta,
                 const CodeParams& params, const CostConstants& k = {});

}  // namespace polyfermion
