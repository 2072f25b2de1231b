#include "diamond/fme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace diamond {

void LinSystem::add(std::vector<double> row, double rhs) {
  if (static_cast<int>(row.size()) != nvars)
    throw std::invalid_argument("LinSystem::add: row length");
  A.push_back(std::move(row));
  b.push_back(rhs);
}

namespace {

// Drops exact-duplicate rows after scaling the largest coefficient to 1,
// to limit the quadratic growth during elimination.
void dedup(LinSystem& s) {
  std::vector<std::vector<double>> keep_a;
  std::vector<double> keep_b;
  for (std::size_t i = 0; i < s.A.size(); ++i) {
    double mx = std::abs(s.b[i]);
    for (double c : s.A[i]) mx = std::max(mx, std::abs(c));
    if (mx == 0.0) mx = 1.0;
    std::vector<double> na(s.A[i]);
    for (double& c : na) c /= mx;
    double nb = s.b[i] / mx;
    bool dup = false;
    for (std::size_t j = 0; j < keep_a.size() && !dup; ++j) {
      if (std::abs(keep_b[j] - nb) > 1e-12) continue;
      bool same = true;
      for (int k = 0; k < s.nvars && same; ++k)
        same = std::abs(keep_a[j][k] - na[k]) <= 1e-12;
      dup = same;
    }
    if (!dup) {
      keep_a.push_back(std::move(na));
      keep_b.push_back(nb);
    }
  }
  s.A = std::move(keep_a);
  s.b = std::move(keep_b);
}

// Eliminates the last variable of s, returning a system in nvars-1 variables.
LinSystem eliminate_last(const LinSystem& s) {
  const int v = s.nvars - 1;
  LinSystem out;
  out.nvars = v;
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < s.A.size(); ++i) {
    double c = s.A[i][v];
    if (c > 1e-12)
      pos.push_back(i);
    else if (c < -1e-12)
      neg.push_back(i);
    else
      out.add(std::vector<double>(s.A[i].begin(), s.A[i].begin() + v), s.b[i]);
  }
  // Pair every lower bound (negative coefficient) with every upper bound.
  for (std::size_t ip : pos)
    for (std::size_t in : neg) {
      double cp = s.A[ip][v], cn = -s.A[in][v];
      std::vector<double> row(v);
      for (int k = 0; k < v; ++k) row[k] = s.A[ip][k] / cp + s.A[in][k] / cn;
      out.add(std::move(row), s.b[ip] / cp + s.b[in] / cn);
    }
  dedup(out);
  return out;
}

}  // namespace

std::optional<std::vector<double>> fme_solve(const LinSystem& sys,
                                             double tol) {
  std::vector<LinSystem> stages;  // stages[k] has k+1 variables
  stages.resize(sys.nvars);
  if (sys.nvars > 0) stages[sys.nvars - 1] = sys;
  for (int v = sys.nvars - 1; v > 0; --v)
    stages[v - 1] = eliminate_last(stages[v]);

  // Constant constraints (0 <= b) left after full elimination.
  LinSystem final0 = sys.nvars > 0 ? eliminate_last(stages[0]) : sys;
  for (double rhs : final0.b)
    if (rhs < -tol) return std::nullopt;

  // Back-substitute from the first variable up.
  std::vector<double> x;
  for (int v = 0; v < sys.nvars; ++v) {
    const LinSystem& s = stages[v];
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.A.size(); ++i) {
      double c = s.A[i][v];
      double rest = 0.0;
      for (int k = 0; k < v; ++k) rest += s.A[i][k] * x[k];
      if (c > 1e-12)
        hi = std::min(hi, (s.b[i] - rest) / c);
      else if (c < -1e-12)
        lo = std::max(lo, (s.b[i] - rest) / c);
      else if (rest > s.b[i] + tol)
        return std::nullopt;  // numerically inconsistent constants
    }
    if (lo > hi + tol) return std::nullopt;
    double val;
    if (std::isinf(lo) && std::isinf(hi))
      val = 0.0;
    else if (std::isinf(lo))
      val = std::min(hi, 0.0);
    else if (std::isinf(hi))
      val = std::max(lo, 0.0);
    else
      val = 0.5 * (lo + hi);
    x.push_back(val);
  }
  return x;
}

}  // namespace diamond
