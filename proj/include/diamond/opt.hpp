#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace diamond {

// Counter-based mixing generator. Stateless: the output depends only on the
// inputs, so parallel work can draw order-independent randomness.
uint64_t mix64(uint64_t x);
uint64_t mix_key(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0);
double mix_unit(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0);

// Small stateful generator for optimizer restarts (splitmix64).
class SplitMix {
 public:
  explicit SplitMix(uint64_t seed) : state_(seed) {}
  uint64_t next();
  double unit();  // uniform in [0,1)

 private:
  uint64_t state_;
};

struct OptimConfig {
  int restarts = 16;
  int iters = 250;
  uint64_t seed = 1;
};

// Maximizes f over the product of probability simplexes described by
// `block_sizes` (the argument vector is the concatenation of the blocks,
// each block a pmf). Softmax reparameterization with finite-difference
// gradients and backtracking line search. `starts` supplies deterministic
// structured starting points in addition to seeded random restarts.
// Returns the best point found; deterministic for a fixed config.
std::vector<double> simplex_maximize(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<int>& block_sizes, const OptimConfig& config,
    const std::vector<std::vector<double>>& starts = {});

// Golden-section maximization of a unimodal f on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol = 1e-10);

// Bisection for the unique p in [lo, hi] with g(p) = 0, g increasing.
double bisect_increasing(const std::function<double(double)>& g, double lo,
                         double hi, int iters = 100);

}  // namespace diamond
