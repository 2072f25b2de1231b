#include "diamond/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace diamond {

double plog2p(double p) {
  if (p <= 0.0) return 0.0;
  return -p * std::log2(p);
}

Bits h2(Prob p) {
  if (p < 0.0 || p > 1.0) throw std::domain_error("h2: p outside [0,1]");
  return plog2p(p) + plog2p(1.0 - p);
}

Prob h2_inv(Bits v) {
  if (v < 0.0 || v > 1.0) throw std::domain_error("h2_inv: v outside [0,1]");
  if (v == 0.0) return 0.0;
  if (v == 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  // h2 is strictly increasing on [0, 1/2]; bisect until the bracket and the
  // residual are both below 1e-12.
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double hm = h2(mid);
    if (std::abs(hm - v) <= 1e-13) return mid;
    (hm < v ? lo : hi) = mid;
    if (hi - lo < 1e-16) break;
  }
  return 0.5 * (lo + hi);
}

Prob star(Prob a, Prob b) { return a * (1.0 - b) + b * (1.0 - a); }

FinitePMF::FinitePMF(std::vector<double> mass) : mass_(std::move(mass)) {
  if (mass_.empty()) throw std::invalid_argument("FinitePMF: empty support");
  double sum = 0.0;
  for (double m : mass_) {
    if (m < 0.0) throw std::invalid_argument("FinitePMF: negative mass");
    sum += m;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("FinitePMF: masses do not sum to 1");
}

Bits FinitePMF::entropy() const { return diamond::entropy(mass_); }

Bits entropy(std::span<const double> pmf) {
  double h = 0.0;
  for (double p : pmf) h += plog2p(p);
  return h;
}

Bits mutual_info(std::span<const double> joint, std::size_t rows,
                 std::size_t cols) {
  if (joint.size() != rows * cols)
    throw std::invalid_argument("mutual_info: shape mismatch");
  std::vector<double> pa(rows, 0.0), pb(cols, 0.0);
  for (std::size_t a = 0; a < rows; ++a)
    for (std::size_t b = 0; b < cols; ++b) {
      pa[a] += joint[a * cols + b];
      pb[b] += joint[a * cols + b];
    }
  double mi = 0.0;
  for (std::size_t a = 0; a < rows; ++a)
    for (std::size_t b = 0; b < cols; ++b) {
      double pab = joint[a * cols + b];
      if (pab > 0.0) mi += pab * std::log2(pab / (pa[a] * pb[b]));
    }
  return std::max(mi, 0.0);
}

namespace {

// Recursive adaptive Simpson on [a,b] with absolute tolerance tol.
double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb, double whole, double tol,
               int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

Bits gm_diff_entropy(std::span<const double> weights,
                     std::span<const double> means,
                     std::span<const double> variances) {
  const std::size_t k = weights.size();
  if (means.size() != k || variances.size() != k || k == 0)
    throw std::invalid_argument("gm_diff_entropy: component size mismatch");
  double wsum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (variances[i] <= 0.0)
      throw std::invalid_argument("gm_diff_entropy: non-positive variance");
    wsum += weights[i];
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    throw std::invalid_argument("gm_diff_entropy: weights do not sum to 1");

  double sigma_max = 0.0, lo = means[0], hi = means[0];
  for (std::size_t i = 0; i < k; ++i) {
    sigma_max = std::max(sigma_max, std::sqrt(variances[i]));
    lo = std::min(lo, means[i]);
    hi = std::max(hi, means[i]);
  }
  lo -= 8.0 * sigma_max;
  hi += 8.0 * sigma_max;

  auto density = [&](double x) {
    double f = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double d = x - means[i];
      f += weights[i] / std::sqrt(2.0 * M_PI * variances[i]) *
           std::exp(-0.5 * d * d / variances[i]);
    }
    return f;
  };
  auto integrand = [&](double x) {
    double f = density(x);
    return f > 0.0 ? -f * std::log2(f) : 0.0;
  };
  return adaptive_simpson(integrand, lo, hi, 1e-9);
}

Joint3PMF::Joint3PMF(std::size_t nu, std::size_t nx1, std::size_t nx2,
                     std::vector<double> mass)
    : nu_(nu), nx1_(nx1), nx2_(nx2), mass_(std::move(mass)) {
  if (mass_.size() != nu_ * nx1_ * nx2_)
    throw std::invalid_argument("Joint3PMF: shape mismatch");
  double sum = 0.0;
  for (double m : mass_) {
    if (m < -1e-15) throw std::invalid_argument("Joint3PMF: negative mass");
    sum += m;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("Joint3PMF: masses do not sum to 1");
}

std::vector<double> Joint3PMF::marginal_u() const {
  std::vector<double> pu(nu_, 0.0);
  for (std::size_t u = 0; u < nu_; ++u)
    for (std::size_t a = 0; a < nx1_; ++a)
      for (std::size_t b = 0; b < nx2_; ++b) pu[u] += at(u, a, b);
  return pu;
}

std::vector<double> Joint3PMF::marginal_x1x2() const {
  std::vector<double> p(nx1_ * nx2_, 0.0);
  for (std::size_t u = 0; u < nu_; ++u)
    for (std::size_t a = 0; a < nx1_; ++a)
      for (std::size_t b = 0; b < nx2_; ++b) p[a * nx2_ + b] += at(u, a, b);
  return p;
}

}  // namespace diamond
