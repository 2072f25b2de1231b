#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "diamond/entropy.hpp"
#include "diamond/mac.hpp"

namespace diamond {

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimRates {
  double r12 = 0, r1 = 0, r2 = 0, r1p = 0, r2p = 0;
};

struct SimConfig {
  int n = 8;
  SimRates rates;
  Joint3PMF joint;
  MacChannel mac;
  double eps = 0.2;
  long trials = 1000;
  uint64_t seed = 1;
  std::size_t budget = std::size_t(1) << 28;  // bytes of codeword storage

  SimConfig(Joint3PMF j, MacChannel m) : joint(std::move(j)), mac(std::move(m)) {}

  static SimConfig from_json(const std::string& text);
  std::string to_json() const;
};

struct SimOutcome {
  double error_estimate = 0.0;
  double covering_failure_rate = 0.0;  // fraction of bins without a pair
  double e1_rate = 0.0;                // transmitted bin had no stored pair
  double e2_rate[4] = {0, 0, 0, 0};    // wrong-candidate subcases
  long trials = 0;
  double wilson_radius = 1.0;          // 95% half-width on error_estimate

  std::string to_json(const SimConfig& config) const;
};

struct Codebook {
  long m12 = 1, m1 = 1, m1p = 1, m2 = 1, m2p = 1;
  std::vector<uint8_t> u;    // [m12][l]
  std::vector<uint8_t> x1;   // [m12][m1][m1p][l]
  std::vector<uint8_t> x2;   // [m12][m2][m2p][l]
  std::vector<int32_t> pair1, pair2;  // chosen (m1p,m2p) per bin, -1 if none
  long covering_failures = 0;
};

// Per-symbol strong typicality: |N(a)/n - p(a)| <= eps * p(a) for every
// cell a of the joint alphabet.
bool strongly_typical(const std::vector<int>& counts,
                      const std::vector<double>& pmf, int n, double eps);

Codebook build_codebook(const SimConfig& config);

SimOutcome run_trials(const SimConfig& config);

}  // namespace diamond
