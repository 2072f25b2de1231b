#include "diamond/dmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diamond/fme.hpp"

namespace diamond {

JointUXY::JointUXY(const Joint3PMF& joint, const MacChannel& mac)
    : nu_(joint.nu()), nx1_(joint.nx1()), nx2_(joint.nx2()), ny_(mac.ny()) {
  if (nx1_ != mac.nx1() || nx2_ != mac.nx2())
    throw std::invalid_argument("JointUXY: alphabet mismatch");
  p_.resize(nu_ * nx1_ * nx2_ * ny_);
  for (std::size_t u = 0; u < nu_; ++u)
    for (std::size_t a = 0; a < nx1_; ++a)
      for (std::size_t b = 0; b < nx2_; ++b)
        for (std::size_t y = 0; y < ny_; ++y)
          p_[((u * nx1_ + a) * nx2_ + b) * ny_ + y] =
              joint.at(u, a, b) * mac.at(a, b, y);
}

JointUXY::JointUXY(const std::vector<double>& p_x1x2, const MacChannel& mac,
                   const AuxChannelU& aux)
    : nu_(aux.nu()), nx1_(mac.nx1()), nx2_(mac.nx2()), ny_(mac.ny()) {
  if (p_x1x2.size() != nx1_ * nx2_ || aux.ny() != ny_)
    throw std::invalid_argument("JointUXY: alphabet mismatch");
  p_.resize(nu_ * nx1_ * nx2_ * ny_);
  for (std::size_t u = 0; u < nu_; ++u)
    for (std::size_t a = 0; a < nx1_; ++a)
      for (std::size_t b = 0; b < nx2_; ++b)
        for (std::size_t y = 0; y < ny_; ++y)
          p_[((u * nx1_ + a) * nx2_ + b) * ny_ + y] =
              p_x1x2[a * nx2_ + b] * mac.at(a, b, y) * aux.at(y, u);
}

JointUXY::JointUXY(const Joint3PMF& joint)
    : nu_(joint.nu()), nx1_(joint.nx1()), nx2_(joint.nx2()), ny_(1),
      p_(joint.mass()) {}

Bits JointUXY::entropy_of(unsigned mask) const {
  std::size_t su = (mask & kU) ? nu_ : 1;
  std::size_t s1 = (mask & kX1) ? nx1_ : 1;
  std::size_t s2 = (mask & kX2) ? nx2_ : 1;
  std::size_t sy = (mask & kY) ? ny_ : 1;
  std::vector<double> marg(su * s1 * s2 * sy, 0.0);
  for (std::size_t u = 0; u < nu_; ++u)
    for (std::size_t a = 0; a < nx1_; ++a)
      for (std::size_t b = 0; b < nx2_; ++b)
        for (std::size_t y = 0; y < ny_; ++y) {
          std::size_t iu = (mask & kU) ? u : 0;
          std::size_t i1 = (mask & kX1) ? a : 0;
          std::size_t i2 = (mask & kX2) ? b : 0;
          std::size_t iy = (mask & kY) ? y : 0;
          marg[((iu * s1 + i1) * s2 + i2) * sy + iy] +=
              p_[((u * nx1_ + a) * nx2_ + b) * ny_ + y];
        }
  return entropy(marg);
}

Bits JointUXY::mi(unsigned a, unsigned b, unsigned c) const {
  double v = entropy_of(a | c) + entropy_of(b | c) - entropy_of(a | b | c) -
             (c ? entropy_of(c) : 0.0);
  return std::max(0.0, v);
}

namespace {

constexpr unsigned U = JointUXY::kU, X1 = JointUXY::kX1, X2 = JointUXY::kX2,
                   Y = JointUXY::kY;

struct InfoTerms {
  double i12u;   // I(X1;X2|U)
  double i1y;    // I(X1;Y|X2,U)
  double i2y;    // I(X2;Y|X1,U)
  double isumu;  // I(X1X2;Y|U)
  double isum;   // I(X1X2;Y)
};

InfoTerms region_terms(const JointUXY& j) {
  return {j.mi(X1, X2, U), j.mi(X1, Y, X2 | U), j.mi(X2, Y, X1 | U),
          j.mi(X1 | X2, Y, U), j.mi(X1 | X2, Y)};
}

}  // namespace

BoundReport lower_region_value(const Joint3PMF& joint, const MacChannel& mac,
                               const BitPipes& pipes) {
  JointUXY j(joint, mac);
  InfoTerms t = region_terms(j);
  BoundReport rep;
  rep.set_constraints({
      {"c1+c2-i(x1;x2|u)", pipes.c1 + pipes.c2 - t.i12u},
      {"c2+i(x1;y|x2u)", pipes.c2 + t.i1y},
      {"c1+i(x2;y|x1u)", pipes.c1 + t.i2y},
      {"half-sum", 0.5 * (pipes.c1 + pipes.c2 + t.isumu - t.i12u)},
      {"i(x1x2;y)", t.isum},
  });
  rep.value = std::max(0.0, rep.min_constraint());
  return rep;
}

BoundReport lower_bound_optimize(const MacChannel& mac, const BitPipes& pipes,
                                 std::size_t nu, const OptimConfig& config) {
  const std::size_t n1 = mac.nx1(), n2 = mac.nx2();
  const std::size_t dim = nu * n1 * n2;
  auto f = [&](const std::vector<double>& p) {
    Joint3PMF joint(nu, n1, n2, p);
    return lower_region_value(joint, mac, pipes).value;
  };
  // Structured starts: U-constant independent uniform, and a diagonal
  // (fully correlated) coupling.
  std::vector<std::vector<double>> starts;
  {
    std::vector<double> s(dim, 0.0);
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t b = 0; b < n2; ++b) s[a * n2 + b] = 1.0 / (n1 * n2);
    starts.push_back(s);
  }
  {
    std::vector<double> s(dim, 0.0);
    std::size_t d = std::min(n1, n2);
    for (std::size_t a = 0; a < d; ++a) s[a * n2 + a] = 1.0 / d;
    starts.push_back(s);
  }
  std::vector<double> best = simplex_maximize(f, {(int)dim}, config, starts);
  Joint3PMF joint(nu, n1, n2, best);
  BoundReport rep = lower_region_value(joint, mac, pipes);
  for (std::size_t i = 0; i < best.size(); ++i)
    rep.witness.emplace_back("p[" + std::to_string(i) + "]", best[i]);
  return rep;
}

FmeResult pre_fme_feasible(Bits rate, const Joint3PMF& joint,
                           const MacChannel& mac, const BitPipes& pipes) {
  JointUXY j(joint, mac);
  InfoTerms t = region_terms(j);
  const double ic = t.i12u;
  // Variables x = (r12, r1, r2, r1p, r2p).
  LinSystem sys;
  sys.nvars = 5;
  for (int i = 0; i < 5; ++i) {
    std::vector<double> row(5, 0.0);
    row[i] = -1.0;
    sys.add(row, 0.0);
  }
  sys.add({1, 1, 1, 0, 0}, rate);
  sys.add({-1, -1, -1, 0, 0}, -rate);
  sys.add({0, 0, 0, -1, -1}, -ic);
  sys.add({1, 1, 0, 1, 0}, pipes.c1);
  sys.add({1, 0, 1, 0, 1}, pipes.c2);
  sys.add({1, 1, 1, 1, 1}, t.isum + ic);
  sys.add({0, 1, 1, 1, 1}, t.isumu + ic);
  sys.add({0, 0, 1, 0, 1}, t.i2y + ic);
  sys.add({0, 1, 0, 1, 0}, t.i1y + ic);
  FmeResult res;
  if (auto x = fme_solve(sys)) {
    res.feasible = true;
    res.tuple = {(*x)[0], (*x)[1], (*x)[2], (*x)[3], (*x)[4]};
  }
  return res;
}

namespace {

BoundReport cutset_at(const std::vector<double>& p_x1x2,
                      const MacChannel& mac, const BitPipes& pipes) {
  Joint3PMF joint(1, mac.nx1(), mac.nx2(), p_x1x2);
  JointUXY j(joint, mac);
  BoundReport rep;
  rep.set_constraints({
      {"c1+c2", pipes.c1 + pipes.c2},
      {"c1+i(x2;y|x1)", pipes.c1 + j.mi(X2, Y, X1)},
      {"c2+i(x1;y|x2)", pipes.c2 + j.mi(X1, Y, X2)},
      {"i(x1x2;y)", j.mi(X1 | X2, Y)},
  });
  rep.value = std::max(0.0, rep.min_constraint());
  return rep;
}

}  // namespace

BoundReport cutset_bound(const MacChannel& mac, const BitPipes& pipes,
                         const OptimConfig& config) {
  const std::size_t dim = mac.nx1() * mac.nx2();
  auto f = [&](const std::vector<double>& p) {
    return cutset_at(p, mac, pipes).value;
  };
  std::vector<double> best = simplex_maximize(f, {(int)dim}, config);
  BoundReport rep = cutset_at(best, mac, pipes);
  for (std::size_t i = 0; i < best.size(); ++i)
    rep.witness.emplace_back("p[" + std::to_string(i) + "]", best[i]);
  return rep;
}

Bits mi_identity_residual(const Joint3PMF& joint) {
  JointUXY j(joint);
  double lhs = j.mi(X1, X2);
  double rhs = j.mi(X1 | X2, U) - j.mi(X1, U, X2) - j.mi(X2, U, X1) +
               j.mi(X1, X2, U);
  return std::abs(lhs - rhs);
}

BoundReport thm2_value_at(const MacChannel& mac, const BitPipes& pipes,
                          const std::vector<double>& p_x1x2,
                          const AuxChannelU& aux) {
  JointUXY j(p_x1x2, mac, aux);
  BoundReport rep;
  rep.set_constraints({
      {"c1+c2", pipes.c1 + pipes.c2},
      {"c1+i(x2;y|x1)", pipes.c1 + j.mi(X2, Y, X1)},
      {"c2+i(x1;y|x2)", pipes.c2 + j.mi(X1, Y, X2)},
      {"i(x1x2;y)", j.mi(X1 | X2, Y)},
      {"half-aux", 0.5 * (pipes.c1 + pipes.c2 + j.mi(X1 | X2, Y, U) +
                          j.mi(X1, U, X2) + j.mi(X2, U, X1))},
  });
  rep.value = std::max(0.0, rep.min_constraint());
  return rep;
}

std::pair<Bits, AuxChannelU> thm2_inner_min(const MacChannel& mac,
                                            const BitPipes& pipes,
                                            const std::vector<double>& p_x1x2,
                                            std::size_t nu,
                                            const OptimConfig& config) {
  const std::size_t ny = mac.ny();
  auto f = [&](const std::vector<double>& rows) {
    AuxChannelU aux(ny, nu, rows);
    return -thm2_value_at(mac, pipes, p_x1x2, aux).value;
  };
  std::vector<int> blocks(ny, (int)nu);
  std::vector<std::vector<double>> starts;
  {
    std::vector<double> s(ny * nu, 1.0 / nu);  // erasing (constant) channel
    starts.push_back(s);
  }
  {
    std::vector<double> s(ny * nu, 0.0);  // identity-like
    for (std::size_t y = 0; y < ny; ++y) s[y * nu + std::min(y, nu - 1)] = 1.0;
    starts.push_back(s);
  }
  if (ny == 3 && nu == 2) {
    // symmetric 3->2 family over an alpha grid
    for (double alpha : {0.0, 0.05, 0.1, 0.127, 0.2, 0.3, 0.4, 0.5})
      starts.push_back(AuxChannelU::adder_symmetric(alpha).rows());
  }
  OptimConfig cfg = config;
  cfg.restarts = std::max(config.restarts, 32);
  std::vector<double> rows = simplex_maximize(f, blocks, cfg, starts);
  AuxChannelU best(ny, nu, rows);
  return {thm2_value_at(mac, pipes, p_x1x2, best).value, best};
}

BoundReport upper_bound_thm2(const MacChannel& mac, const BitPipes& pipes,
                             std::size_t nu, const OptimConfig& config) {
  const std::size_t dim = mac.nx1() * mac.nx2();
  std::vector<double> p(dim, 1.0 / dim);
  AuxChannelU aux = AuxChannelU::identity(mac.ny());
  if (nu != mac.ny()) aux = AuxChannelU(mac.ny(), nu,
      std::vector<double>(mac.ny() * nu, 1.0 / nu));
  double saddle = 0.0;
  for (int round = 0; round < 6; ++round) {
    auto [val, a] = thm2_inner_min(mac, pipes, p, nu, config);
    aux = a;
    saddle = val;
    auto g = [&](const std::vector<double>& q) {
      return thm2_value_at(mac, pipes, q, aux).value;
    };
    std::vector<double> pnext =
        simplex_maximize(g, {(int)dim}, config, {p});
    double move = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      move = std::max(move, std::abs(pnext[i] - p[i]));
    p = pnext;
    if (move < 1e-7) break;
  }
  // Certified value: the best aux found, maximized over all inputs.
  auto g = [&](const std::vector<double>& q) {
    return thm2_value_at(mac, pipes, q, aux).value;
  };
  std::vector<double> psafe = simplex_maximize(g, {(int)dim}, config, {p});
  double safe = thm2_value_at(mac, pipes, psafe, aux).value;
  auto [final_inner, final_aux] = thm2_inner_min(mac, pipes, psafe, nu, config);
  saddle = std::min(safe, std::max(saddle, final_inner));

  BoundReport rep = thm2_value_at(mac, pipes, psafe, final_aux);
  rep.constraints.emplace_back("safe", safe);
  rep.value = saddle;
  for (std::size_t i = 0; i < psafe.size(); ++i)
    rep.witness.emplace_back("p[" + std::to_string(i) + "]", psafe[i]);
  for (std::size_t i = 0; i < final_aux.rows().size(); ++i)
    rep.witness.emplace_back("aux[" + std::to_string(i) + "]",
                             final_aux.rows()[i]);
  return rep;
}

namespace {

// Five constraint values for a joint p(q, x1, x2) with the aux channel
// fixed; conditional terms decompose over q.
BoundReport thm3_value_at(const MacChannel& mac, const BitPipes& pipes,
                          const std::vector<double>& p_qx, std::size_t nq,
                          const AuxChannelU& aux) {
  const std::size_t n1 = mac.nx1(), n2 = mac.nx2();
  double i2y = 0.0, i1y = 0.0, isum = 0.0, diff = 0.0;
  for (std::size_t q = 0; q < nq; ++q) {
    double w = 0.0;
    std::vector<double> cond(n1 * n2, 0.0);
    for (std::size_t i = 0; i < n1 * n2; ++i) {
      cond[i] = p_qx[q * n1 * n2 + i];
      w += cond[i];
    }
    if (w < 1e-14) continue;
    for (double& c : cond) c /= w;
    JointUXY j(cond, mac, aux);
    i2y += w * j.mi(X2, Y, X1);
    i1y += w * j.mi(X1, Y, X2);
    isum += w * j.mi(X1 | X2, Y);
    diff += w * (j.mi(X1, X2, U) - j.mi(X1, X2));
  }
  BoundReport rep;
  rep.set_constraints({
      {"c1+c2", pipes.c1 + pipes.c2},
      {"c1+i(x2;y|x1q)", pipes.c1 + i2y},
      {"c2+i(x1;y|x2q)", pipes.c2 + i1y},
      {"i(x1x2;y|q)", isum},
      {"aux-balance", pipes.c1 + pipes.c2 + diff},
  });
  rep.value = std::max(0.0, rep.min_constraint());
  return rep;
}

}  // namespace

BoundReport upper_bound_thm3_loose(const MacChannel& mac,
                                   const BitPipes& pipes,
                                   const AuxChannelU& aux, std::size_t nq,
                                   const OptimConfig& config) {
  if (nq == 0 || nq > 4)
    throw std::invalid_argument("upper_bound_thm3_loose: |Q| must be 1..4");
  const std::size_t n1 = mac.nx1(), n2 = mac.nx2();
  const std::size_t dim = nq * n1 * n2;
  auto f = [&](const std::vector<double>& p) {
    return thm3_value_at(mac, pipes, p, nq, aux).value;
  };
  // Q-constant uniform input start.
  std::vector<std::vector<double>> starts;
  {
    std::vector<double> s(dim, 0.0);
    for (std::size_t i = 0; i < n1 * n2; ++i) s[i] = 1.0 / (n1 * n2);
    starts.push_back(s);
  }
  std::vector<double> best = simplex_maximize(f, {(int)dim}, config, starts);
  BoundReport rep = thm3_value_at(mac, pipes, best, nq, aux);
  for (std::size_t i = 0; i < best.size(); ++i)
    rep.witness.emplace_back("p[" + std::to_string(i) + "]", best[i]);
  return rep;
}

}  // namespace diamond
