#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

// Scalar information-theoretic primitives. All entropies and rates are in
// bits (base-2 logarithms).

namespace diamond {

using Prob = double;  // value in [0,1]
using Bits = double;  // non-negative rate/entropy in bits

// -p*log2(p) with 0*log(0) := 0.
double plog2p(double p);

// Binary entropy h2(p) = -p log2 p - (1-p) log2 (1-p).
// Throws std::domain_error outside [0,1].
Bits h2(Prob p);

// Inverse of h2 on the monotone branch [0, 1/2], by bisection.
// |h2(result) - v| <= 1e-12. Throws std::domain_error outside [0,1].
Prob h2_inv(Bits v);

// Binary convolution a*b = a(1-b) + b(1-a).
Prob star(Prob a, Prob b);

// A finite probability mass function. Masses are validated to be
// non-negative and to sum to 1 within 1e-12.
class FinitePMF {
 public:
  explicit FinitePMF(std::vector<double> mass);

  std::size_t size() const { return mass_.size(); }
  double operator[](std::size_t i) const { return mass_[i]; }
  const std::vector<double>& mass() const { return mass_; }

  Bits entropy() const;

 private:
  std::vector<double> mass_;
};

// Mutual information I(A;B) of a joint pmf given as a rows x cols matrix
// (row-major). Terms with p(a,b) = 0 contribute 0.
Bits mutual_info(std::span<const double> joint, std::size_t rows,
                 std::size_t cols);

// Entropy of a pmf given as a raw vector (no validation).
Bits entropy(std::span<const double> pmf);

// Differential entropy, in bits, of a one-dimensional Gaussian mixture.
// Adaptive Simpson quadrature over +-8 standard deviations of the widest
// component, absolute tolerance 1e-9 bits. Variances must be positive.
Bits gm_diff_entropy(std::span<const double> weights,
                     std::span<const double> means,
                     std::span<const double> variances);

// Joint pmf p(u, x1, x2) with exact summation marginals.
class Joint3PMF {
 public:
  Joint3PMF(std::size_t nu, std::size_t nx1, std::size_t nx2,
            std::vector<double> mass);

  std::size_t nu() const { return nu_; }
  std::size_t nx1() const { return nx1_; }
  std::size_t nx2() const { return nx2_; }

  double at(std::size_t u, std::size_t x1, std::size_t x2) const {
    return mass_[(u * nx1_ + x1) * nx2_ + x2];
  }
  const std::vector<double>& mass() const { return mass_; }

  std::vector<double> marginal_u() const;
  // p(x1, x2) as an nx1 x nx2 row-major matrix.
  std::vector<double> marginal_x1x2() const;

 private:
  std::size_t nu_, nx1_, nx2_;
  std::vector<double> mass_;
};

}  // namespace diamond
