#pragma once

#include <string>
#include <utility>
#include <vector>

#include "diamond/entropy.hpp"

namespace diamond {

// Result of a bound evaluation or optimization: the bound value, the
// per-constraint values with the binding one(s) labeled, witness parameters
// of the optimizer, and a regime tag where applicable.
struct BoundReport {
  Bits value = 0.0;
  std::vector<std::pair<std::string, Bits>> constraints;
  std::vector<std::string> binding;  // all labels within 1e-9 of the min
  std::vector<std::pair<std::string, double>> witness;
  std::string regime;

  // Records constraint values and fills `binding` with every label within
  // 1e-9 of the minimum. Does not touch `value`.
  void set_constraints(std::vector<std::pair<std::string, Bits>> c);
  Bits min_constraint() const;
};

}  // namespace diamond
