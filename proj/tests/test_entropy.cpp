#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "diamond/entropy.hpp"
#include "diamond/opt.hpp"
#include "doctest.h"

using namespace diamond;

TEST_CASE("binary entropy spot values") {
  CHECK(h2(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(h2(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h2(1.0 / 3.0) == doctest::Approx(0.9182958340544896).epsilon(1e-12));
  CHECK(h2(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-12));
  CHECK(plog2p(0.0) == 0.0);
  CHECK_THROWS_AS(h2(-0.01), std::domain_error);
  CHECK_THROWS_AS(h2(1.01), std::domain_error);
}

TEST_CASE("h2 inverse round trip") {
  CHECK(h2_inv(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(h2_inv(1.0) == doctest::Approx(0.5).epsilon(1e-12));
  for (int i = 0; i <= 100; ++i) {
    double v = i / 100.0;
    CHECK(std::abs(h2(h2_inv(v)) - v) <= 1e-12);
  }
}

TEST_CASE("binary convolution algebra") {
  SplitMix rng(5);
  for (int k = 0; k < 50; ++k) {
    double a = rng.unit(), b = rng.unit(), c = rng.unit();
    CHECK(std::abs(star(a, b) - star(b, a)) <= 1e-15);
    CHECK(std::abs(star(star(a, b), c) - star(a, star(b, c))) <= 1e-14);
    CHECK(std::abs(star(a, 0.5) - 0.5) <= 1e-15);
    CHECK(std::abs(star(a, 0.0) - a) <= 1e-15);
  }
}

TEST_CASE("h2 midpoint concavity") {
  SplitMix rng(6);
  for (int k = 0; k < 200; ++k) {
    double a = rng.unit(), b = rng.unit();
    CHECK(h2(0.5 * (a + b)) >= 0.5 * (h2(a) + h2(b)) - 1e-14);
  }
}

TEST_CASE("pmf validation") {
  CHECK_THROWS(FinitePMF({0.5, 0.6}));
  CHECK_THROWS(FinitePMF({1.1, -0.1}));
  FinitePMF p({0.25, 0.25, 0.5});
  CHECK(p.entropy() == doctest::Approx(1.5).epsilon(1e-13));
}

TEST_CASE("mutual information") {
  // independent
  std::vector<double> ind = {0.06, 0.14, 0.24, 0.56};
  CHECK(mutual_info(ind, 2, 2) == doctest::Approx(0.0).epsilon(1e-13));
  // doubly symmetric with crossover p
  double p = 0.2;
  std::vector<double> dsbs = {(1 - p) / 2, p / 2, p / 2, (1 - p) / 2};
  CHECK(mutual_info(dsbs, 2, 2) == doctest::Approx(1.0 - h2(p)).epsilon(1e-12));
}

TEST_CASE("gaussian mixture differential entropy") {
  std::vector<double> w1 = {1.0}, m1 = {0.0}, v1 = {1.0};
  double half_log_2pie = 0.5 * std::log2(2.0 * M_PI * M_E);
  CHECK(std::abs(gm_diff_entropy(w1, m1, v1) - half_log_2pie) <= 1e-8);
  // well-separated symmetric pair adds exactly one bit
  std::vector<double> w2 = {0.5, 0.5}, m2 = {-10.0, 10.0}, v2 = {1.0, 1.0};
  CHECK(std::abs(gm_diff_entropy(w2, m2, v2) - (half_log_2pie + 1.0)) <= 1e-6);
  // scaling: variance 4 adds half a log
  std::vector<double> v4 = {4.0};
  CHECK(std::abs(gm_diff_entropy(w1, m1, v4) - (half_log_2pie + 1.0)) <= 1e-8);
}

TEST_CASE("joint pmf marginals") {
  Joint3PMF j(2, 2, 2, {0.1, 0.1, 0.2, 0.1, 0.05, 0.15, 0.2, 0.1});
  auto pu = j.marginal_u();
  CHECK(pu[0] == doctest::Approx(0.5).epsilon(1e-14));
  auto p12 = j.marginal_x1x2();
  double sum = 0;
  for (double v : p12) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p12[0] == doctest::Approx(0.15).epsilon(1e-14));
}

TEST_CASE("deterministic optimizer helpers") {
  double x = golden_max([](double t) { return -(t - 0.3) * (t - 0.3); }, 0.0,
                        1.0, 1e-12);
  CHECK(std::abs(x - 0.3) <= 1e-9);
  double z = bisect_increasing([](double t) { return t * t * t - 0.2; }, 0.0,
                               1.0);
  CHECK(std::abs(z * z * z - 0.2) <= 1e-12);
  // huge interval: must terminate even when the tolerance is below ulp
  double big = golden_max([](double t) { return -t; }, 0.0, 1e6, 1e-12);
  CHECK(big <= 1.0);
}
