#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "diamond/gaussian.hpp"
#include "doctest.h"

using namespace diamond;

namespace {

double edge(double p, double rho) {
  return 0.25 * std::log2((1.0 + 2.0 * p * (1.0 + rho)) / (1.0 - rho * rho));
}

}  // namespace

TEST_CASE("threshold constants at unit power") {
  GaussConstants k = gauss_constants({1.0, 1.0, 0.5, 0.5});
  CHECK(k.rho1 == doctest::Approx(0.26376261582597337).epsilon(1e-9));
  // golden-ratio conjugate at unit power
  CHECK(k.rho2 == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-12));
  CHECK(edge(1.0, 0.0) == doctest::Approx(0.25 * std::log2(3.0)).epsilon(1e-13));
  CHECK(edge(1.0, k.rho1) == doctest::Approx(0.4806719987462332).epsilon(1e-9));
  CHECK(edge(1.0, k.rho2) == doctest::Approx(0.6942419136306174).epsilon(1e-9));
  CHECK(0.5 * std::log2(5.0) ==
        doctest::Approx(1.160964047443681).epsilon(1e-12));
}

TEST_CASE("optimal correlation of the lower bound") {
  GaussConstants k = gauss_constants({1.0, 1.0, 0.45, 0.45});
  REQUIRE(k.lambda_defined);
  CHECK(k.lambda == doctest::Approx(0.18287379).epsilon(1e-6));
  // crossing condition holds at lambda
  CHECK(edge(1.0, k.lambda) == doctest::Approx(0.45).epsilon(1e-10));
}

TEST_CASE("jointly gaussian lower bound") {
  GaussianNet net{1.0, 1.0, 0.45, 0.45};
  BoundReport rep = gauss_lower_best(net, GaussLowerMode::kJointlyGaussian);
  CHECK(rep.value == doctest::Approx(0.87546349).epsilon(1e-6));
  CHECK(gauss_lower_jg(net, 1.0).value == 0.0);  // degenerate correlation
}

TEST_CASE("lower bound families are consistent") {
  for (double c : {0.3, 0.45, 0.9, 1.3}) {
    GaussianNet net{1.0, 1.0, c, c};
    double jg = gauss_lower_best(net, GaussLowerMode::kJointlyGaussian).value;
    double all = gauss_lower_best(net).value;
    CHECK(all >= jg - 1e-12);
    double fc = gauss_lower_best(net, GaussLowerMode::kFullCoop).value;
    CHECK(all >= fc - 1e-12);
  }
}

TEST_CASE("first converse bound") {
  CHECK(gauss_upper_cor1({1, 1, 0.3, 0.3}).value ==
        doctest::Approx(0.6).epsilon(1e-9));
  CHECK(gauss_upper_cor1({1, 1, 1.2, 1.2}).value ==
        doctest::Approx(1.160964047443681).epsilon(1e-6));
  CHECK(gauss_upper_cor1({1, 1, 0.55, 0.55}).value ==
        doctest::Approx(0.96694397).epsilon(1e-6));
}

TEST_CASE("aux noise envelope is smooth at the markov threshold") {
  GaussianNet net{1.0, 1.0, 0.55, 0.55};
  GaussConstants k = gauss_constants(net);
  // the markov-matched noise variance crosses zero exactly at rho2
  CHECK(std::abs(1.0 / k.rho2 - k.rho2 - 1.0) <= 1e-12);
  // envelope over the noise variance, by direct search
  auto envelope = [&](double rho) {
    auto val = [&](double n) { return gauss_thm3_fixed_point(net, rho, n); };
    double best = val(0.0);
    for (double n = 0.0; n <= 4.0; n += 0.001) best = std::min(best, val(n));
    double n = golden_max([&](double x) { return -val(x); }, 0.0, 4.0, 1e-12);
    return std::min(best, val(n));
  };
  double h = 1e-5;
  double vm = envelope(k.rho2 - h), v0 = envelope(k.rho2),
         vp = envelope(k.rho2 + h);
  CHECK(std::abs(vm - v0) <= 1e-4);
  CHECK(std::abs((v0 - vm) / h - (vp - v0) / h) <= 1e-4);
}

TEST_CASE("implicit constraint closed form equals bisection") {
  GaussianNet net{1.0, 1.0, 0.45, 0.45};
  for (double rho : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9})
    for (double n : {0.0, 0.2, 1.0, 3.0, 10.0})
      CHECK(std::abs(gauss_thm3_fixed_point(net, rho, n) -
                     gauss_thm3_fixed_point_bisect(net, rho, n)) <= 1e-9);
}

TEST_CASE("matched aux noise makes the inputs conditionally independent") {
  double p = 1.0;
  GaussConstants k = gauss_constants({p, p, 0.45, 0.45});
  REQUIRE(k.lambda_defined);
  double rho = k.lambda, n = k.n_lambda;
  // cov(x1,x2 | y + noise) for jointly gaussian inputs
  double cxy = p * (1.0 + rho);
  double vu = 1.0 + 2.0 * p * (1.0 + rho) + n;
  double cond = rho * p - cxy * cxy / vu;
  CHECK(std::abs(cond) <= 1e-9);
}

TEST_CASE("second converse bound") {
  CHECK(gauss_upper_thm3({1, 1, 0.45, 0.45}).value ==
        doctest::Approx(0.87546349).epsilon(1e-6));
  CHECK(gauss_upper_thm3({1, 1, 1.2, 1.2}).value ==
        doctest::Approx(1.160964047443681).epsilon(1e-6));
  // known tight asymmetric-power comparison point
  GaussianNet kl{0.25, 0.25, 0.15, 0.15};
  double up = gauss_upper_thm3(kl).value;
  CHECK(up == doctest::Approx(0.29939723).epsilon(1e-5));
  CHECK(std::abs(up - gauss_lower_best(kl).value) <= 1e-3);
}

TEST_CASE("regime classification") {
  CHECK(gauss_regime({1, 1, 0.3, 0.3}).label == "no-cooperation");
  CHECK(gauss_regime({1, 1, 0.42, 0.42}).label == "thm3-window");
  CHECK(gauss_regime({1, 1, 0.42, 0.42}).matching);
  CHECK(gauss_regime({1, 1, 0.55, 0.55}).label == "cor1-window");
  CHECK(gauss_regime({1, 1, 0.9, 0.9}).label == "open-gap");
  CHECK_FALSE(gauss_regime({1, 1, 0.9, 0.9}).matching);
  CHECK(gauss_regime({1, 1, 1.3, 1.3}).label == "full-cooperation");
}
