#pragma once

#include <optional>
#include <vector>

namespace diamond {

// A small dense system of linear inequalities A x <= b.
struct LinSystem {
  int nvars = 0;
  std::vector<std::vector<double>> A;  // each row has nvars entries
  std::vector<double> b;

  void add(std::vector<double> row, double rhs);
};

// Decides feasibility of A x <= b by Fourier-Motzkin elimination and, when
// feasible, reconstructs a witness by back-substitution (midpoint of each
// variable's residual interval). Constraints are treated with slack `tol`,
// so points on the boundary count as feasible.
std::optional<std::vector<double>> fme_solve(const LinSystem& sys,
                                             double tol = 1e-9);

}  // namespace diamond
