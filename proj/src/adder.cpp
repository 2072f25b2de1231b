#include "diamond/adder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "diamond/opt.hpp"

namespace diamond {

BoundReport adder_lower(const AdderNet& net, Prob p) {
  double h = h2(p);
  BoundReport rep;
  rep.set_constraints({
      {"c1+c2-1+h2(p)", net.c1 + net.c2 - 1.0 + h},
      {"c1+h2(p)", net.c1 + h},
      {"h2(p)+1-p", h + 1.0 - p},
  });
  rep.value = std::max(0.0, rep.min_constraint());
  rep.witness.emplace_back("p", p);
  return rep;
}

BoundReport adder_capacity(const AdderNet& net) {
  auto val = [&](double p) { return adder_lower(net, p).value; };
  double p = golden_max(val, 0.0, 0.5, 1e-12);
  double eta = std::clamp(2.0 - net.c1 - net.c2, 0.0, 0.5);
  for (double cand : {1.0 / 3.0, 0.5, eta})
    if (val(cand) > val(p)) p = cand;
  BoundReport rep = adder_lower(net, p);
  if (net.c2 >= 1.0)
    rep.regime = "cut-set, large c2";
  else if (net.c1 + net.c2 >= 5.0 / 3.0 && net.c1 >= 2.0 / 3.0)
    rep.regime = "full-cooperation";
  else if (net.c1 + net.c2 <= 1.5)
    rep.regime = "pipe-limited";
  else
    rep.regime = "crossing";
  return rep;
}

BoundReport adder_upper_cor2(const AdderNet& net) {
  auto value_at = [&](double p) {
    double h = h2(p);
    return std::max(
        0.0, std::min({net.c1 + net.c2, net.c1 + h, h + 1.0 - p,
                       0.5 * (net.c1 + net.c2) + h - 0.5 * p}));
  };
  double p = golden_max(value_at, 0.0, 0.5, 1e-12);
  const double p1 = 1.0 / (1.0 + std::sqrt(2.0));
  for (double cand : {0.5, p1})
    if (value_at(cand) > value_at(p)) p = cand;
  double h = h2(p);
  BoundReport rep;
  rep.set_constraints({
      {"c1+c2", net.c1 + net.c2},
      {"c1+h2(p)", net.c1 + h},
      {"h2(p)+1-p", h + 1.0 - p},
      {"half-balance", 0.5 * (net.c1 + net.c2) + h - 0.5 * p},
  });
  rep.value = value_at(p);
  rep.witness.emplace_back("p", p);
  return rep;
}

Prob adder_aux_alpha(Prob p) {
  if (p < 0.0 || p > 0.5)
    throw std::domain_error("adder_aux_alpha: p outside [0,1/2]");
  double c = p / (2.0 * (1.0 - p));
  double disc = std::max(0.0, 1.0 - 4.0 * c * c);
  return 0.5 * (1.0 - std::sqrt(disc));
}

Bits mi_given_u(Prob p, Prob alpha) {
  return 2.0 * h2(star(alpha, 0.5 * p)) - (1.0 - p) * h2(alpha) - h2(p) - p;
}

Bits gerber_g(Bits x, Prob y, Prob alpha) {
  if (y < 0.0 || y > 1.0 || alpha < 0.0 || alpha > 0.5)
    throw std::domain_error("gerber_g: parameter outside range");
  if (x < -1e-12 || x > 1.0 + h2(y) - y + 1e-12)
    throw std::domain_error("gerber_g: x outside [0, 1+h2(y)-y]");
  double inner;
  if (y >= 1.0) {
    inner = 0.0;  // continuous limit of the vanishing support
  } else {
    double ratio = std::max(0.0, x - h2(y)) / (1.0 - y);
    inner = (1.0 - y) * h2_inv(std::min(1.0, ratio));
  }
  return h2(star(alpha, 0.5 * y + inner)) - h2(star(alpha, 0.5 * y));
}

GerberKernels gerber_kernels(Prob alpha, Prob y, Prob z) {
  if (alpha < 0.0 || alpha > 0.5 || y < 0.0 || y > 1.0 || z < 0.0 || z > 0.5)
    throw std::domain_error("gerber_kernels: parameter outside range");
  auto r = [](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return x * (1.0 - x) * std::log((1.0 - x) / x);
  };
  GerberKernels k;
  k.r = r(z);
  k.rprime = (z > 0.0 && z < 1.0)
                 ? (1.0 - 2.0 * z) * std::log((1.0 - z) / z) - 1.0
                 : std::numeric_limits<double>::infinity();
  if (alpha >= 0.5)
    throw std::domain_error("gerber_kernels: t singular at alpha = 1/2");
  double s = star(alpha, 0.5 * y + (1.0 - y) * z);
  double lnz = (z > 0.0) ? std::log((1.0 - z) / z)
                         : std::numeric_limits<double>::infinity();
  double first = (z > 0.0) ? -0.25 * y * (1.0 - y) * (1.0 - y) * lnz * r(z)
                           : 0.0;  // r(z)->0 faster than ln((1-z)/z) diverges
  double oma = 1.0 - 2.0 * alpha;
  k.t = first + r(s) * r(s) / (oma * oma) -
        (1.0 - y) * (1.0 - y) * r(s) * r(z) / oma;
  if (y >= 1.0 || z >= 0.5)
    throw std::domain_error("gerber_kernels: f singular at y=1 or z=1/2");
  double s0 = star(0.0, 0.5 * y + (1.0 - y) * z);
  double t0 = ((z > 0.0) ? -0.25 * y * (1.0 - y) * (1.0 - y) * lnz * r(z)
                         : 0.0) +
              r(s0) * r(s0) - (1.0 - y) * (1.0 - y) * r(s0) * r(z);
  double den = (1.0 - y) * (1.0 - y) * std::pow(1.0 - 2.0 * z, 4);
  k.f = t0 / den;
  return k;
}

namespace {

// Largest R satisfying the self-referential aux constraint: the RHS is
// non-increasing in R, so the admissible set is an interval [0, R*].
double cap4_fixed_point(const AdderNet& net, double q, double alpha) {
  double hq = h2(q);
  double base = net.c1 + net.c2 - (1.0 - q) * h2(alpha) - q +
                2.0 * h2(star(alpha, 0.5 * q));
  auto rhs = [&](double r) {
    double ratio = q < 1.0 ? std::min(1.0, std::max(0.0, r - hq) / (1.0 - q))
                           : 0.0;
    return base - h2(star(alpha, 0.5 * q + (1.0 - q) * h2_inv(ratio)));
  };
  auto g = [&](double r) { return r - rhs(r); };
  if (g(0.0) >= 0.0) return 0.0;
  double hi = net.c1 + net.c2;
  if (g(hi) <= 0.0) return hi;
  return bisect_increasing(g, 0.0, hi, 60);
}

double mgl_fixed_point(const AdderNet& net, double q, double alpha) {
  double hq = h2(q);
  double base = net.c1 + net.c2 - (1.0 - q) * h2(alpha) - q +
                2.0 * h2(star(alpha, 0.5 * q));
  auto rhs = [&](double r) {
    double x = std::min(1.0, std::max(0.0, r - hq + q));
    return base - h2(star(alpha, h2_inv(x)));
  };
  auto g = [&](double r) { return r - rhs(r); };
  if (g(0.0) >= 0.0) return 0.0;
  double hi = net.c1 + net.c2;
  if (g(hi) <= 0.0) return hi;
  return bisect_increasing(g, 0.0, hi, 60);
}

using FixedPointFn = double (*)(const AdderNet&, double, double);

BoundReport adder_upper_impl(const AdderNet& net, FixedPointFn fp,
                             const char* aux_label) {
  double eta = std::clamp(2.0 - net.c1 - net.c2, 0.0, 0.5);
  double alpha_eta = adder_aux_alpha(eta);
  auto min_over_alpha = [&](double q) {
    double best = std::numeric_limits<double>::infinity();
    for (double a : {alpha_eta, 0.0, 0.1, 0.25, 0.4, 0.5})
      best = std::min(best, fp(net, q, a));
    return best;
  };
  auto value_at = [&](double q) {
    double h = h2(q);
    return std::max(0.0, std::min({net.c1 + net.c2, net.c1 + h,
                                   h + 1.0 - q, min_over_alpha(q)}));
  };
  double q = golden_max(value_at, 0.0, 0.5, 1e-10);
  for (double cand : {eta, 1.0 / 3.0, 0.5})
    if (value_at(cand) > value_at(q)) q = cand;
  double h = h2(q);
  BoundReport rep;
  rep.set_constraints({
      {"c1+c2", net.c1 + net.c2},
      {"c1+h2(q)", net.c1 + h},
      {"h2(q)+1-q", h + 1.0 - q},
      {aux_label, min_over_alpha(q)},
  });
  rep.value = value_at(q);
  rep.witness.emplace_back("q", q);
  rep.witness.emplace_back("alpha_eta", alpha_eta);
  return rep;
}

}  // namespace

BoundReport adder_upper_thm3(const AdderNet& net) {
  return adder_upper_impl(net, &cap4_fixed_point, "aux-implicit");
}

BoundReport adder_upper_mgl(const AdderNet& net) {
  return adder_upper_impl(net, &mgl_fixed_point, "aux-mgl");
}

}  // namespace diamond
