#pragma once

#include <string>

#include "diamond/entropy.hpp"
#include "diamond/opt.hpp"
#include "diamond/report.hpp"

namespace diamond {

// Scalar Gaussian MAC y = x1 + x2 + z, unit noise variance, average power
// constraints p1, p2, with bit-pipe capacities c1, c2.
struct GaussianNet {
  double p1 = 1.0, p2 = 1.0;
  Bits c1 = 0.0, c2 = 0.0;

  bool symmetric() const { return p1 == p2 && c1 == c2; }
};

struct GaussConstants {
  double rho1 = 0.0;      // maximizer of the balance constraint
  double rho2 = 0.0;      // Markov threshold for the aux noise
  double rho0 = 0.0;      // c1+c2 crossing correlation
  double lambda = 0.0;    // optimal correlation of the jointly Gaussian lower bound
  double n_lambda = 0.0;  // aux noise variance matched to lambda
  bool lambda_defined = false;
  bool rho0_defined = false;
  std::string regime;
};

struct GaussRegime {
  std::string label;
  bool matching = false;
};

// Jointly Gaussian inputs with correlation rho: the four rate constraints.
BoundReport gauss_lower_jg(const GaussianNet& net, double rho);

enum class GaussLowerMode { kJointlyGaussian, kFullCoop, kTwoMixture, kAll };

// Best lower bound over the enabled input families.
BoundReport gauss_lower_best(const GaussianNet& net,
                             GaussLowerMode mode = GaussLowerMode::kAll,
                             const OptimConfig& config = {});

// Threshold constants. rho1 and lambda use the geometric-mean power.
GaussConstants gauss_constants(const GaussianNet& net);

// First converse bound with Gaussian aux noise: max over rho of the
// regime-split constraint sets.
BoundReport gauss_upper_cor1(const GaussianNet& net);

// Second converse bound: max over rho of the four explicit constraints and
// the implicit aux-noise constraint minimized over N >= 0.
BoundReport gauss_upper_thm3(const GaussianNet& net,
                             const OptimConfig& config = {});

// The fixed point in R of the implicit aux-noise constraint, for given rho
// and N (closed form).
Bits gauss_thm3_fixed_point(const GaussianNet& net, double rho, double n);

// Same fixed point solved by bisection on the implicit form; used as a
// cross-check of the closed form.
Bits gauss_thm3_fixed_point_bisect(const GaussianNet& net, double rho,
                                   double n);

GaussRegime gauss_regime(const GaussianNet& net);

}  // namespace diamond
