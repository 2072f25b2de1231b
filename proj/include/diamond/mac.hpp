#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "diamond/entropy.hpp"

namespace diamond {

// Noiseless broadcast bit-pipes of capacities c1, c2 (bits per use).
struct BitPipes {
  Bits c1 = 0.0;
  Bits c2 = 0.0;
};

// A finite multiple access channel p(y | x1, x2).
class MacChannel {
 public:
  MacChannel(std::size_t nx1, std::size_t nx2, std::size_t ny,
             std::vector<double> transition);

  static MacChannel binary_adder();

  // Parses the channel JSON schema
  //   { "x1_size": int, "x2_size": int, "y_size": int,
  //     "p_y_given_x1x2": [x1][x2][y] }
  // Rejects unless every (x1,x2) row sums to 1 within 1e-9.
  static MacChannel from_json(const std::string& text);
  std::string to_json() const;

  std::size_t nx1() const { return nx1_; }
  std::size_t nx2() const { return nx2_; }
  std::size_t ny() const { return ny_; }

  double at(std::size_t x1, std::size_t x2, std::size_t y) const {
    return p_[(x1 * nx2_ + x2) * ny_ + y];
  }

  // Joint pmf p(x1, x2, y) for an input pmf given as nx1 x nx2 row-major.
  std::vector<double> joint_with_inputs(
      const std::vector<double>& p_x1x2) const;

 private:
  std::size_t nx1_, nx2_, ny_;
  std::vector<double> p_;  // [x1][x2][y]
};

// Auxiliary channel p(u | y) used inside the converse bounds.
class AuxChannelU {
 public:
  AuxChannelU(std::size_t ny, std::size_t nu, std::vector<double> rows);

  // The symmetric 3->2 channel used for the binary adder: y=0 maps to u=0
  // with probability 1-alpha, y=2 to u=1 with probability 1-alpha, and y=1
  // uniformly.
  static AuxChannelU adder_symmetric(double alpha);

  // u = y (requires nu == ny).
  static AuxChannelU identity(std::size_t ny);

  std::size_t ny() const { return ny_; }
  std::size_t nu() const { return nu_; }
  double at(std::size_t y, std::size_t u) const { return p_[y * nu_ + u]; }
  std::vector<double>& rows() { return p_; }
  const std::vector<double>& rows() const { return p_; }

 private:
  std::size_t ny_, nu_;
  std::vector<double> p_;  // [y][u]
};

// Time-sharing map p(q | x1, x2), |Q| <= 4.
class TimeShareQ {
 public:
  TimeShareQ(std::size_t nx1, std::size_t nx2, std::size_t nq,
             std::vector<double> rows);

  static TimeShareQ constant(std::size_t nx1, std::size_t nx2);

  std::size_t nq() const { return nq_; }
  double at(std::size_t x1, std::size_t x2, std::size_t q) const {
    return p_[(x1 * nx2_ + x2) * nq_ + q];
  }

 private:
  std::size_t nx1_, nx2_, nq_;
  std::vector<double> p_;
};

}  // namespace diamond
