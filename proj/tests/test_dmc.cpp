#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "diamond/dmc.hpp"
#include "diamond/fme.hpp"
#include "diamond/mac.hpp"
#include "diamond/opt.hpp"
#include "doctest.h"

using namespace diamond;

namespace {

Joint3PMF random_joint(SplitMix& rng, std::size_t nu, std::size_t n1,
                       std::size_t n2) {
  std::vector<double> mass(nu * n1 * n2);
  double sum = 0.0;
  for (double& m : mass) sum += (m = rng.unit() + 1e-4);
  for (double& m : mass) m /= sum;
  return Joint3PMF(nu, n1, n2, mass);
}

}  // namespace

TEST_CASE("channel json round trip") {
  MacChannel mac = MacChannel::binary_adder();
  MacChannel back = MacChannel::from_json(mac.to_json());
  CHECK(back.ny() == 3);
  CHECK(back.at(0, 1, 1) == doctest::Approx(1.0));
  CHECK(back.at(1, 1, 2) == doctest::Approx(1.0));
}

TEST_CASE("mutual information identity residual") {
  SplitMix rng(2024);
  for (int k = 0; k < 100; ++k) {
    Joint3PMF j = random_joint(rng, 1 + rng.next() % 3, 2 + rng.next() % 2,
                               2 + rng.next() % 2);
    CHECK(mi_identity_residual(j) <= 1e-10);
  }
}

TEST_CASE("achievable region on the adder") {
  MacChannel mac = MacChannel::binary_adder();
  CHECK(lower_bound_optimize(mac, {0.6, 0.6}, 2).value ==
        doctest::Approx(1.2).epsilon(1e-6));
  CHECK(lower_bound_optimize(mac, {2.0, 2.0}, 2).value ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-6));
}

TEST_CASE("cut-set bound") {
  MacChannel mac = MacChannel::binary_adder();
  CHECK(cutset_bound(mac, {2.0, 2.0}).value ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-7));
  CHECK(cutset_bound(mac, {0.7, 0.7}).value == doctest::Approx(1.4).epsilon(1e-9));
}

TEST_CASE("rate-split elimination matches the region value") {
  SplitMix rng(4242);
  MacChannel mac = MacChannel::binary_adder();
  for (int k = 0; k < 50; ++k) {
    Joint3PMF j = random_joint(rng, 1 + rng.next() % 2, 2, 2);
    BitPipes pipes{0.2 + rng.unit() * 1.3, 0.2 + rng.unit() * 1.3};
    double value = lower_region_value(j, mac, pipes).value;
    double lo = 0.0, hi = pipes.c1 + pipes.c2 + 2.0;
    for (int it = 0; it < 40; ++it) {
      double mid = 0.5 * (lo + hi);
      (pre_fme_feasible(mid, j, mac, pipes).feasible ? lo : hi) = mid;
    }
    CHECK(std::abs(lo - value) <= 1e-8);
    CHECK(pre_fme_feasible(value - 1e-6, j, mac, pipes).feasible);
    FmeResult above = pre_fme_feasible(value + 1e-6, j, mac, pipes);
    CHECK_FALSE(above.feasible);
    // witness tuple of the feasible point adds up and respects the pipes
    FmeResult w = pre_fme_feasible(value - 1e-6, j, mac, pipes);
    double total = w.tuple.r12 + w.tuple.r1 + w.tuple.r2;
    CHECK(total == doctest::Approx(value - 1e-6).epsilon(1e-9));
    CHECK(w.tuple.r12 + w.tuple.r1 + w.tuple.r1p <= pipes.c1 + 1e-9);
    CHECK(w.tuple.r12 + w.tuple.r2 + w.tuple.r2p <= pipes.c2 + 1e-9);
  }
}

TEST_CASE("fme solver basics") {
  // x + y <= 1, -x <= 0, -y <= 0 feasible; plus x >= 2 infeasible
  LinSystem sys(2);
  sys.add({1.0, 1.0}, 1.0);
  sys.add({-1.0, 0.0}, 0.0);
  sys.add({0.0, -1.0}, 0.0);
  auto w = fme_solve(sys);
  REQUIRE(w.has_value());
  CHECK((*w)[0] + (*w)[1] <= 1.0 + 1e-12);
  sys.add({-1.0, 0.0}, -2.0);
  CHECK_FALSE(fme_solve(sys).has_value());
}

TEST_CASE("saddle upper bound on the adder") {
  MacChannel mac = MacChannel::binary_adder();
  BoundReport rep = upper_bound_thm2(mac, {0.77, 0.77}, 2);
  double safe = rep.value;
  for (auto& [k, v] : rep.constraints)
    if (k == "safe") safe = v;
  CHECK(safe == doctest::Approx(1.540000).epsilon(1e-3));
  CHECK(rep.value <= safe + 1e-9);
}

TEST_CASE("saddle matches the symmetric closed form") {
  // general 2x2 optimization agrees with the symmetric-input reduction
  MacChannel mac = MacChannel::binary_adder();
  auto closed = [](double c) {
    auto val = [&](double p) {
      double h = h2(p);
      return std::max(0.0, std::min({2.0 * c, c + h, h + 1.0 - p,
                                     c + h - 0.5 * p}));
    };
    double p = golden_max(val, 0.0, 0.5, 1e-12);
    return std::max(val(p), val(0.5));
  };
  for (double c : {0.7, 0.77, 0.85}) {
    BoundReport rep = upper_bound_thm2(mac, {c, c}, 2);
    double safe = rep.value;
    for (auto& [k, v] : rep.constraints)
      if (k == "safe") safe = v;
    CHECK(std::abs(safe - closed(c)) <= 1e-3);
  }
}

TEST_CASE("balance term concavity in the input pmf") {
  // fifth constraint at a fixed reverse channel, as a function of p(x1,x2)
  MacChannel mac = MacChannel::binary_adder();
  AuxChannelU aux = AuxChannelU::adder_symmetric(0.2);
  BitPipes pipes{0.8, 0.8};
  auto term = [&](const std::vector<double>& p) {
    BoundReport rep = thm2_value_at(mac, pipes, p, aux);
    for (auto& [k, v] : rep.constraints)
      if (k == "half-aux") return v;
    return rep.value;
  };
  SplitMix rng(99);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> a(4), b(4);
    double sa = 0, sb = 0;
    for (int i = 0; i < 4; ++i) {
      sa += (a[i] = rng.unit() + 1e-3);
      sb += (b[i] = rng.unit() + 1e-3);
    }
    std::vector<double> mid(4);
    for (int i = 0; i < 4; ++i) {
      a[i] /= sa;
      b[i] /= sb;
      mid[i] = 0.5 * (a[i] + b[i]);
    }
    CHECK(term(mid) >= 0.5 * (term(a) + term(b)) - 1e-10);
  }
}

TEST_CASE("fixed-aux bound on the adder") {
  MacChannel mac = MacChannel::binary_adder();
  AuxChannelU aux = AuxChannelU::adder_symmetric(0.12732200375003502);
  BoundReport rep = upper_bound_thm3_loose(mac, {0.8, 0.8}, aux);
  CHECK(rep.value == doctest::Approx(1.570950594454669).epsilon(1e-4));
}

TEST_CASE("bound ordering at shared settings") {
  MacChannel mac = MacChannel::binary_adder();
  for (double c : {0.6, 0.8, 1.2}) {
    BitPipes pipes{c, c};
    double low = lower_bound_optimize(mac, pipes, 2).value;
    BoundReport t2 = upper_bound_thm2(mac, pipes, 2);
    double safe = t2.value;
    for (auto& [k, v] : t2.constraints)
      if (k == "safe") safe = v;
    double cut = cutset_bound(mac, pipes).value;
    CHECK(low <= safe + 1e-6);
    CHECK(safe <= cut + 1e-6);
  }
}
