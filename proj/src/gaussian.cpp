#include "diamond/gaussian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace diamond {

namespace {

double hl(double x) { return 0.5 * std::log2(x); }

double full_coop_rate(const GaussianNet& net) {
  return hl(1.0 + net.p1 + net.p2 + 2.0 * std::sqrt(net.p1 * net.p2));
}

// Coordinate pattern search on [0,1]^d maximizing f; deterministic.
std::vector<double> pattern_search(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, int iters) {
  double val = f(x);
  double step = 0.25;
  for (int it = 0; it < iters; ++it) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double dir : {+1.0, -1.0}) {
        std::vector<double> y = x;
        y[i] = std::clamp(y[i] + dir * step, 0.0, 1.0);
        double v = f(y);
        if (v > val + 1e-13) {
          x = std::move(y);
          val = v;
          improved = true;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
      if (step < 1e-8) break;
    }
  }
  return x;
}

}  // namespace

BoundReport gauss_lower_jg(const GaussianNet& net, double rho) {
  BoundReport rep;
  if (rho >= 1.0) {
    rep.set_constraints({{"c1+c2-i(x1;x2)",
                          -std::numeric_limits<double>::infinity()}});
    rep.value = 0.0;
    rep.regime = "infeasible rho";
    return rep;
  }
  double r2 = rho * rho;
  rep.set_constraints({
      {"c1+c2-i(x1;x2)", net.c1 + net.c2 - hl(1.0 / (1.0 - r2))},
      {"c1+i(x2;y|x1)", net.c1 + hl(1.0 + net.p2 * (1.0 - r2))},
      {"c2+i(x1;y|x2)", net.c2 + hl(1.0 + net.p1 * (1.0 - r2))},
      {"i(x1x2;y)",
       hl(1.0 + net.p1 + net.p2 + 2.0 * rho * std::sqrt(net.p1 * net.p2))},
  });
  rep.value = std::max(0.0, rep.min_constraint());
  rep.witness.emplace_back("rho", rho);
  return rep;
}

GaussConstants gauss_constants(const GaussianNet& net) {
  GaussConstants k;
  double pg = std::sqrt(net.p1 * net.p2);
  k.rho2 = std::sqrt(1.0 + 1.0 / (4.0 * pg * pg)) -
           std::sqrt(1.0 / (4.0 * pg * pg));
  k.rho1 = (-(1.0 + 2.0 * pg) +
            std::sqrt(12.0 * pg * pg + (1.0 + 2.0 * pg) * (1.0 + 2.0 * pg))) /
           (6.0 * pg);

  double csum = net.c1 + net.c2;
  double s = std::exp2(2.0 * csum);
  double disc = pg * pg + s * (s - 1.0 - net.p1 - net.p2);
  if (csum >= hl(1.0 + net.p1 + net.p2) && disc >= 0.0) {
    k.rho0_defined = true;
    k.rho0 = std::clamp((-pg + std::sqrt(disc)) / s, 0.0, 1.0);
  }

  // lambda: the correlation at which the two binding constraints cross,
  // for the symmetric parameterization with the geometric-mean power.
  double c = 0.5 * csum;
  auto g = [&](double l) {
    return 0.25 * std::log2((1.0 + 2.0 * pg * (1.0 + l)) / (1.0 - l * l)) - c;
  };
  if (g(0.0) <= 0.0) {
    k.lambda_defined = true;
    k.lambda = bisect_increasing(g, 0.0, 1.0 - 1e-15);
    double nl = pg * (1.0 / k.lambda - k.lambda) - 1.0;
    k.n_lambda = std::max(0.0, nl);
    k.regime = "partial-cooperation";
  } else {
    k.regime = "no-cooperation";
  }
  return k;
}

BoundReport gauss_lower_best(const GaussianNet& net, GaussLowerMode mode,
                             const OptimConfig& config) {
  BoundReport best;
  best.value = -1.0;

  const bool all = mode == GaussLowerMode::kAll;
  if (all || mode == GaussLowerMode::kJointlyGaussian) {
    auto val = [&](double rho) { return gauss_lower_jg(net, rho).value; };
    double r = golden_max(val, 0.0, 1.0 - 1e-12, 1e-12);
    for (double cand : {r, 0.0}) {
      BoundReport rep = gauss_lower_jg(net, cand);
      if (rep.value > best.value) {
        best = rep;
        best.regime = "jointly-gaussian";
      }
    }
  }
  if (all || mode == GaussLowerMode::kFullCoop) {
    double v = std::min({(double)net.c1, (double)net.c2, full_coop_rate(net)});
    if (v > best.value) {
      best = BoundReport{};
      best.value = v;
      best.set_constraints({{"c1", net.c1},
                            {"c2", net.c2},
                            {"i(x1x2;y)", full_coop_rate(net)}});
      best.value = v;
      best.regime = "full-cooperation";
      best.witness.emplace_back("rho", 1.0);
    }
  }
  if (all || mode == GaussLowerMode::kTwoMixture) {
    // Two jointly Gaussian components, the component label playing the
    // role of U. x = (w, rho_a, rho_b, power share 1, power share 2).
    auto value_at = [&](const std::vector<double>& x) {
      double w = std::clamp(x[0], 1e-6, 1.0 - 1e-6);
      std::array<double, 2> wt = {w, 1.0 - w};
      std::array<double, 2> rho = {std::min(x[1], 0.999),
                                   std::min(x[2], 0.999)};
      std::array<double, 2> q1 = {net.p1 * x[3] / w,
                                  net.p1 * (1.0 - x[3]) / (1.0 - w)};
      std::array<double, 2> q2 = {net.p2 * x[4] / w,
                                  net.p2 * (1.0 - x[4]) / (1.0 - w)};
      double i12u = 0, i1y = 0, i2y = 0, isumu = 0;
      std::array<double, 2> vary;
      for (int i = 0; i < 2; ++i) {
        double r2 = rho[i] * rho[i];
        double cross = 2.0 * rho[i] * std::sqrt(q1[i] * q2[i]);
        i12u += wt[i] * hl(1.0 / (1.0 - r2));
        i1y += wt[i] * hl(1.0 + q1[i] * (1.0 - r2));
        i2y += wt[i] * hl(1.0 + q2[i] * (1.0 - r2));
        isumu += wt[i] * hl(1.0 + q1[i] + q2[i] + cross);
        vary[i] = 1.0 + q1[i] + q2[i] + cross;
      }
      std::array<double, 2> means = {0.0, 0.0};
      double hy = gm_diff_entropy(wt, means, vary);
      double isum = hy - hl(2.0 * M_PI * M_E);
      return std::max(
          0.0, std::min({net.c1 + net.c2 - i12u, net.c2 + i1y,
                         net.c1 + i2y,
                         0.5 * (net.c1 + net.c2 + isumu - i12u), isum}));
    };
    // Starts: the jointly Gaussian optimum duplicated, plus seeded points.
    std::vector<std::vector<double>> starts;
    {
      auto val = [&](double rho) { return gauss_lower_jg(net, rho).value; };
      double r = golden_max(val, 0.0, 1.0 - 1e-12, 1e-12);
      starts.push_back({0.5, r, r, 0.5, 0.5});
      starts.push_back({0.5, r, 0.999, 0.5, 0.5});
      starts.push_back({0.3, 0.0, 0.999, 0.3, 0.3});
    }
    SplitMix rng(config.seed);
    for (int s = 0; s < 8; ++s) {
      std::vector<double> x(5);
      for (double& v : x) v = rng.unit();
      starts.push_back(std::move(x));
    }
    for (auto& s : starts) {
      std::vector<double> x = pattern_search(value_at, s, 120);
      double v = value_at(x);
      if (v > best.value) {
        best = BoundReport{};
        best.value = v;
        best.regime = "two-mixture";
        const char* names[] = {"w", "rho_a", "rho_b", "share1", "share2"};
        for (int i = 0; i < 5; ++i) best.witness.emplace_back(names[i], x[i]);
      }
    }
  }
  return best;
}

namespace {

double cor1_value(const GaussianNet& net, double rho, double rho2) {
  double r2 = rho * rho;
  double pg = std::sqrt(net.p1 * net.p2);
  double f4 = hl(1.0 + net.p1 + net.p2 + 2.0 * rho * pg);
  double v = std::min({net.c1 + net.c2,
                       net.c2 + hl(1.0 + net.p1 * (1.0 - r2)),
                       net.c1 + hl(1.0 + net.p2 * (1.0 - r2)), f4});
  if (rho <= rho2) {
    double balance =
        0.5 * (net.c1 + net.c2 + f4 - hl(1.0 / (1.0 - r2)));
    v = std::min(v, balance);
  }
  return std::max(0.0, v);
}

}  // namespace

BoundReport gauss_upper_cor1(const GaussianNet& net) {
  GaussConstants k = gauss_constants(net);
  auto val = [&](double rho) { return cor1_value(net, rho, k.rho2); };
  double best_rho = 0.0, best = val(0.0);
  const int n = 4000;
  for (int i = 0; i <= n; ++i) {
    double rho = (double)i / n;
    double v = val(rho);
    if (v > best) {
      best = v;
      best_rho = rho;
    }
  }
  // Refine within the piece around the grid best.
  double lo = std::max(0.0, best_rho - 2.0 / n);
  double hi = std::min(1.0, best_rho + 2.0 / n);
  if (best_rho <= k.rho2) hi = std::min(hi, k.rho2);
  else lo = std::max(lo, k.rho2);
  double r = golden_max(val, lo, hi, 1e-12);
  if (val(r) > best) {
    best = val(r);
    best_rho = r;
  }
  BoundReport rep;
  double r2 = best_rho * best_rho;
  double pg = std::sqrt(net.p1 * net.p2);
  std::vector<std::pair<std::string, Bits>> cons = {
      {"c1+c2", net.c1 + net.c2},
      {"c2+i(x1;y|x2)", net.c2 + hl(1.0 + net.p1 * (1.0 - r2))},
      {"c1+i(x2;y|x1)", net.c1 + hl(1.0 + net.p2 * (1.0 - r2))},
      {"i(x1x2;y)", hl(1.0 + net.p1 + net.p2 + 2.0 * best_rho * pg)},
  };
  if (best_rho <= k.rho2)
    cons.emplace_back("balance",
                      0.5 * (net.c1 + net.c2 +
                             hl(1.0 + net.p1 + net.p2 + 2.0 * best_rho * pg) -
                             hl(1.0 / (1.0 - r2))));
  rep.set_constraints(cons);
  rep.value = best;
  rep.witness.emplace_back("rho", best_rho);
  rep.regime = best_rho <= k.rho2 ? "markov-aux" : "no-aux";
  return rep;
}

Bits gauss_thm3_fixed_point(const GaussianNet& net, double rho, double n) {
  double r2 = rho * rho;
  double a = (1.0 + n + net.p1 * (1.0 - r2)) * (1.0 + n + net.p2 * (1.0 - r2));
  double s = std::exp2(2.0 * (net.c1 + net.c2 + 1.0));
  double root = std::sqrt(n * n + s * a / (1.0 + n));
  return std::max(0.0, hl(0.5 * (root - n)));
}

Bits gauss_thm3_fixed_point_bisect(const GaussianNet& net, double rho,
                                   double n) {
  double r2 = rho * rho;
  auto g = [&](double r) {
    double rhs = net.c1 + net.c2 - hl(n + std::exp2(2.0 * r)) - hl(1.0 + n) +
                 hl(1.0 + n + net.p1 * (1.0 - r2)) +
                 hl(1.0 + n + net.p2 * (1.0 - r2));
    return r - rhs;
  };
  if (g(0.0) >= 0.0) return 0.0;
  return bisect_increasing(g, 0.0, net.c1 + net.c2 + 4.0);
}

namespace {

// The implicit constraint minimized over the aux noise variance.
double thm3_min_over_n(const GaussianNet& net, double rho,
                       const GaussConstants& k) {
  auto val = [&](double n) { return gauss_thm3_fixed_point(net, rho, n); };
  double pg = std::sqrt(net.p1 * net.p2);
  double best_n = 0.0, best = val(0.0);
  std::vector<double> cands = {0.0};
  if (rho > 1e-9) cands.push_back(std::max(0.0, pg * (1.0 / rho - rho) - 1.0));
  if (k.lambda_defined) cands.push_back(k.n_lambda);
  for (int i = 0; i <= 60; ++i)
    cands.push_back(std::exp2(0.25 * i) - 1.0);  // up to ~2^15
  for (double n : cands) {
    double v = val(n);
    if (v < best) {
      best = v;
      best_n = n;
    }
  }
  double lo = std::max(0.0, best_n * 0.5 - 0.5);
  double hi = best_n * 2.0 + 1.0;
  double n = golden_max([&](double x) { return -val(x); }, lo, hi, 1e-10);
  return std::min(best, val(n));
}

}  // namespace

BoundReport gauss_upper_thm3(const GaussianNet& net,
                             const OptimConfig& config) {
  (void)config;
  GaussConstants k = gauss_constants(net);
  double pg = std::sqrt(net.p1 * net.p2);
  auto val = [&](double rho) {
    double r2 = rho * rho;
    double v = std::min({net.c1 + net.c2,
                         net.c1 + hl(1.0 + net.p2 * (1.0 - r2)),
                         net.c2 + hl(1.0 + net.p1 * (1.0 - r2)),
                         hl(1.0 + net.p1 + net.p2 + 2.0 * rho * pg)});
    return std::max(0.0, std::min(v, thm3_min_over_n(net, rho, k)));
  };
  double best_rho = 0.0, best = val(0.0);
  const int n = 1000;
  std::vector<double> grid;
  for (int i = 0; i <= n; ++i) grid.push_back((double)i / n);
  if (k.lambda_defined) grid.push_back(k.lambda);
  if (k.rho0_defined) grid.push_back(k.rho0);
  for (double rho : grid) {
    double v = val(rho);
    if (v > best) {
      best = v;
      best_rho = rho;
    }
  }
  double r = golden_max(val, std::max(0.0, best_rho - 1.5 / n),
                        std::min(1.0, best_rho + 1.5 / n), 1e-11);
  if (val(r) > best) {
    best = val(r);
    best_rho = r;
  }
  BoundReport rep;
  double r2 = best_rho * best_rho;
  rep.set_constraints({
      {"c1+c2", net.c1 + net.c2},
      {"c1+i(x2;y|x1)", net.c1 + hl(1.0 + net.p2 * (1.0 - r2))},
      {"c2+i(x1;y|x2)", net.c2 + hl(1.0 + net.p1 * (1.0 - r2))},
      {"i(x1x2;y)",
       hl(1.0 + net.p1 + net.p2 + 2.0 * best_rho * pg)},
      {"aux-implicit", thm3_min_over_n(net, best_rho, k)},
  });
  rep.value = best;
  rep.witness.emplace_back("rho", best_rho);
  return rep;
}

GaussRegime gauss_regime(const GaussianNet& net) {
  GaussConstants k = gauss_constants(net);
  GaussRegime out;
  double pg = std::sqrt(net.p1 * net.p2);
  if (net.symmetric()) {
    double p = net.p1, c = net.c1;
    double t0 = 0.25 * std::log2(1.0 + 2.0 * p);
    auto edge = [&](double rho) {
      return 0.25 *
             std::log2((1.0 + 2.0 * p * (1.0 + rho)) / (1.0 - rho * rho));
    };
    double tlo = edge(k.rho1), thi = edge(k.rho2);
    double tfc = 0.5 * std::log2(1.0 + 4.0 * p);
    if (c <= t0) {
      out.label = "no-cooperation";
      out.matching = true;
    } else if (c >= tfc) {
      out.label = "full-cooperation";
      out.matching = true;
    } else if (c >= tlo && c <= thi) {
      out.label = "cor1-window";
      out.matching = true;
    } else if (c < tlo) {
      out.label = "thm3-window";  // matched only by the implicit-aux bound
      out.matching = true;
    } else {
      out.label = "open-gap";
      out.matching = false;
    }
    return out;
  }
  double fc = hl(1.0 + net.p1 + net.p2 + 2.0 * pg);
  bool pp0 = false, pp1 = false, pp2 = false;
  {
    double r = k.rho2;
    pp0 = net.c1 + net.c2 <=
          hl((1.0 + net.p1 + net.p2 + 2.0 * r * pg) / (1.0 - r * r));
  }
  if (k.rho0_defined) {
    double r = k.rho0;
    double num = 1.0 + net.p1 + net.p2 + 2.0 * r * pg;
    pp1 = net.c1 <= hl(num / (1.0 + net.p2 * (1.0 - r * r)));
    pp2 = net.c2 <= hl(num / (1.0 + net.p1 * (1.0 - r * r)));
  }
  bool pp = std::min(net.c1, net.c2) >= fc;
  out.matching = pp0 || pp1 || pp2 || pp;
  if (pp)
    out.label = "full-cooperation";
  else if (out.matching)
    out.label = "asymmetric-matching";
  else
    out.label = "open-gap";
  return out;
}

}  // namespace diamond
