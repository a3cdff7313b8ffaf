#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "bodycenters/error.hpp"
#include "bodycenters/kernels.hpp"

using namespace bodycenters;

namespace {

KernelSpec identity_kernel() {
  return KernelSpec(CustomKernel{"identity", [](double r) { return r; }, [](double) { return 1.0; },
                                 {Smoothness::C1, 3.0}},
                    2);
}

std::vector<KernelSpec> shipped_families() {
  std::vector<KernelSpec> ks;
  for (int m : {2, 3}) {
    for (double a : {0.5, 1.5, 2.5, 3.5, 4.9}) {
      if (a != m) ks.push_back(KernelSpec::riesz(a, m));
    }
    ks.push_back(KernelSpec::log(m));
    for (double h : {0.1, 1.0, 10.0}) ks.push_back(KernelSpec::poisson(h, m));
  }
  return ks;
}

}  // namespace

TEST_CASE("kernel values") {
  CHECK(k_value(KernelSpec::log(2), 1.0) == 0.0);
  CHECK(k_value(KernelSpec::poisson(1.0, 2), 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(k_value(KernelSpec::riesz(1.5, 2), 4.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(k_value(KernelSpec::riesz(3.0, 2), 2.0) == doctest::Approx(-2.0).epsilon(1e-15));
  const double t = 0.7;
  CHECK(k_value(KernelSpec::gauss(t, 2), 0.3) ==
        doctest::Approx(std::exp(-0.09 / (4 * t)) / (4 * std::numbers::pi * t)).epsilon(1e-14));
}

TEST_CASE("kernel derivatives") {
  CHECK(k_derivative(KernelSpec::log(2), 2.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(k_derivative(KernelSpec::poisson(1.0, 2), 1.0) ==
        doctest::Approx(-3.0 * std::pow(2.0, -2.5)).epsilon(1e-14));
  // |k'(r)| = r / (8 pi t^2) near 0 for m = 2, below 1e-9 at r = 1e-8 once t >= 0.63.
  for (double t : {1.0, 10.0}) CHECK(std::abs(k_derivative(KernelSpec::gauss(t, 2), 1e-8)) <= 1e-9);
}

TEST_CASE("nonpositive radius is a domain error") {
  CHECK_THROWS_AS(k_value(KernelSpec::log(2), 0.0), DomainError);
  CHECK_THROWS_AS(k_derivative(KernelSpec::riesz(1.5, 2), -1.0), DomainError);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS(KernelSpec::riesz(0.0, 2));
  CHECK_THROWS_AS(KernelSpec(Riesz{2.0}, 2), ConstructionError);
  CHECK(std::holds_alternative<LogKernel>(KernelSpec::riesz(2.0, 2).family()));
  CHECK_THROWS(KernelSpec::poisson(0.0, 2));
  CHECK_THROWS(KernelSpec::gauss(-1.0, 2));
  CHECK_THROWS(KernelSpec::log(1));
}

TEST_CASE("strict decrease check") {
  CHECK(check_strictly_decreasing(KernelSpec::riesz(1.5, 2), {0.01, 10.0}, 1000));
  CHECK(check_strictly_decreasing(KernelSpec::poisson(1.0, 3), {0.01, 10.0}, 1000));
  CHECK_FALSE(check_strictly_decreasing(identity_kernel(), {0.01, 10.0}, 1000));
  CHECK_THROWS_AS(check_strictly_decreasing(KernelSpec::log(2), {1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(check_strictly_decreasing(KernelSpec::log(2), {0.0, 1.0}), DomainError);
}

TEST_CASE("ratio check") {
  CHECK(check_ratio_increasing(KernelSpec::riesz(1.5, 2), {0.1, 3.0}, 1000));
  CHECK(check_ratio_increasing(KernelSpec::poisson(1.0, 2), {0.1, 3.0}, 1000));
  CHECK_FALSE(check_ratio_increasing(KernelSpec::riesz(5.0, 2), {0.1, 3.0}, 1000));
  CHECK_THROWS_AS(check_ratio_increasing(KernelSpec::log(2), {0.1, 3.0}, 1), DomainError);
}

TEST_CASE("ratio check at the endpoint order") {
  // alpha = m + 2 makes k'(r)/r constant: nondecreasing but not strictly increasing.
  const KernelSpec k = KernelSpec::riesz(4.0, 2);
  CHECK(check_ratio_increasing(k, {0.1, 3.0}));
  CHECK_FALSE(ratio_strictly_increasing(k, {0.1, 3.0}));
  CHECK(ratio_strictly_increasing(KernelSpec::riesz(3.9, 2), {0.1, 3.0}));
}

TEST_CASE("condition classes") {
  auto c = condition_class(KernelSpec::riesz(0.5, 2));
  CHECK(c.smoothness == Smoothness::C0);
  CHECK(c.alpha == 0.5);
  c = condition_class(KernelSpec::log(2));
  CHECK(c.smoothness == Smoothness::C1);
  CHECK(c.alpha == 2.0);
  c = condition_class(KernelSpec::poisson(1.0, 3));
  CHECK(c.smoothness == Smoothness::C1);
  CHECK(c.alpha == 4.0);
  c = condition_class(KernelSpec::gauss(1.0, 2));
  CHECK(c.smoothness == Smoothness::C1);
  CHECK(c.alpha == 3.0);
  c = condition_class(KernelSpec::riesz(1.5, 3));
  CHECK(c.smoothness == Smoothness::C1);
  CHECK(c.alpha == 1.5);
}

TEST_CASE("every shipped family is strictly decreasing on log-spaced radii") {
  for (const auto& k : shipped_families()) {
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
      const double r = std::pow(10.0, -6.0 + 9.0 * (i + 0.5) / 1000.0);
      ok = ok && k_derivative(k, r) < 0.0;
    }
    CHECK_MESSAGE(ok, k.name());
  }
  // exp(-r^2/4t) underflows beyond r ~ 54 sqrt(t); the check stays where it is representable.
  for (double t : {0.1, 1.0, 1e4}) {
    const KernelSpec k = KernelSpec::gauss(t, 2);
    const double rmax = std::min(1e3, 50.0 * std::sqrt(t));
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
      const double r = std::exp(std::log(1e-6) + (std::log(rmax) - std::log(1e-6)) * (i + 0.5) / 1000.0);
      ok = ok && k_derivative(k, r) < 0.0;
    }
    CHECK_MESSAGE(ok, k.name());
  }
}

TEST_CASE("derivative matches central differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  auto ks = shipped_families();
  ks.push_back(KernelSpec::gauss(1.0, 2));
  ks.push_back(KernelSpec::gauss(0.1, 3));
  for (const auto& k : ks) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double r = u(rng);
      const double eps = 1e-6 * r;
      const double fd = (k_value(k, r + eps) - k_value(k, r - eps)) / (2 * eps);
      const double d = k_derivative(k, r);
      worst = std::max(worst, std::abs(fd - d) / std::max(1.0, std::abs(d)));
    }
    CHECK_MESSAGE(worst <= 1e-6, k.name());
  }
}

TEST_CASE("ratio check holds for moderate Riesz orders and bounded kernels") {
  for (int m : {2, 3}) {
    for (double a : {1.1, 1.5, double(m) + 0.5, double(m) + 1.0, double(m) + 1.9}) {
      const KernelSpec k = a == m ? KernelSpec::log(m) : KernelSpec::riesz(a, m);
      CHECK_MESSAGE(check_ratio_increasing(k, {0.01, 100.0}), k.name());
    }
    CHECK(check_ratio_increasing(KernelSpec::log(m), {0.01, 100.0}));
    for (double h : {0.1, 1.0, 10.0}) CHECK(check_ratio_increasing(KernelSpec::poisson(h, m), {0.01, 100.0}));
    for (double t : {0.1, 1.0}) CHECK(check_ratio_increasing(KernelSpec::gauss(t, m), {0.01, 100.0}));
  }
}

TEST_CASE("signed Riesz values are positive below the dimension") {
  for (double a : {0.5, 1.0, 1.5, 1.99}) {
    const KernelSpec k = KernelSpec::riesz(a, 2);
    for (double r : {1e-3, 0.5, 1.0, 7.0, 1e3}) CHECK(k_value(k, r) > 0.0);
  }
}

TEST_CASE("radial primitive is the integral of s^(m-1) k(s)") {
  for (const auto& k : shipped_families()) {
    const int m = k.dimension();
    for (double r : {0.3, 1.0, 2.5}) {
      // Phi(r) - Phi(a) by the midpoint rule on a fine grid.
      const double a = 0.1;
      const int n = 20000;
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const double x = a + (r - a) * (i + 0.5) / n;
        s += std::pow(x, m - 1) * k_value(k, x);
      }
      s *= (r - a) / n;
      const double diff = radial_primitive(k, r) - radial_primitive(k, a);
      CHECK_MESSAGE(diff == doctest::Approx(s).epsilon(1e-6), k.name());
    }
  }
}

TEST_CASE("sphere measure") {
  CHECK(sphere_measure(2) == doctest::Approx(2 * std::numbers::pi));
  CHECK(sphere_measure(3) == doctest::Approx(4 * std::numbers::pi));
}
