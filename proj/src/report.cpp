#include "diamond/report.hpp"

#include <algorithm>
#include <limits>

namespace diamond {

void BoundReport::set_constraints(
    std::vector<std::pair<std::string, Bits>> c) {
  constraints = std::move(c);
  binding.clear();
  double mn = min_constraint();
  for (const auto& [label, v] : constraints)
    if (v <= mn + 1e-9) binding.push_back(label);
}

Bits BoundReport::min_constraint() const {
  double mn = std::numeric_limits<double>::infinity();
  for (const auto& [label, v] : constraints) mn = std::min(mn, v);
  return mn;
}

}  // namespace diamond
