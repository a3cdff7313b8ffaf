#pragma once

// Test-side reference values computed independently of the library, with
// Boost.Math quadrature on the printed one-dimensional integrals.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

inline double slope() { return std::tan(kPi / 10.0); }

template <typename F>
double smooth(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-13);
}

template <typename F>
double singular(F f, double a, double b) {
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b, 1e-12);
}

/// Riesz potential of order alpha of the two unit discs centered at (+-1, 0), at (lambda, 0).
inline double two_disc_potential(double alpha, double lambda) {
  auto f = [&](double th) {
    const double c = std::cos(th), s = std::sin(th);
    auto term = [&](double shift, double dot) {
      const double r2 = (lambda - c + shift) * (lambda - c + shift) + s * s;
      // The dot factor vanishes faster than the power blows up where r -> 0.
      return r2 > 0.0 ? std::pow(r2, (alpha - 2) / 2) * dot : 0.0;
    };
    return term(1, (lambda + 1) * c - 1) + term(-1, (lambda - 1) * c - 1);
  };
  // The integrand is only Holder continuous where (lambda, 0) touches a circle.
  return -(singular(f, 0.0, kPi) + singular(f, kPi, 2 * kPi)) / alpha;
}

/// Riesz potential of order alpha of the annulus 1 <= |y| <= 2, at (lambda, 0).
inline double annulus_potential(double alpha, double lambda) {
  auto term = [](double r2, double dot, double alpha) {
    return r2 > 0.0 ? std::pow(r2, (alpha - 2) / 2) * dot : 0.0;
  };
  auto inner = [&](double th) {
    const double c = std::cos(th);
    return term(lambda * lambda - 2 * lambda * c + 1, lambda * c - 1, alpha);
  };
  auto outer = [&](double th) {
    const double c = std::cos(th);
    return term(lambda * lambda - 4 * lambda * c + 4, lambda * c - 2, alpha);
  };
  return (singular(inner, 0.0, 2 * kPi) - 2 * singular(outer, 0.0, 2 * kPi)) / alpha;
}

struct Split {
  double side, base;
  double total() const { return side + base; }
};

/// d^2/dx1^2 of the Riesz potential of the triangle 0 <= y1 <= 1, |y2| <= c y1 at (lambda, 0).
inline Split triangle_second_derivative(double alpha, double lambda) {
  const double c = slope();
  auto side = [&](double t) {
    return std::pow((lambda - t) * (lambda - t) + c * t * c * t, (alpha - 4) / 2) * (lambda - t);
  };
  auto base = [&](double t) { return std::pow((lambda - 1) * (lambda - 1) + t * t, (alpha - 4) / 2); };
  return {-2 * (2 - alpha) * c * smooth(side, 0.0, 1.0),
          2 * (2 - alpha) * (lambda - 1) * smooth(base, 0.0, c)};
}

/// Same for the cone 0 <= y1 <= 1, |ybar| <= c y1 in R^3.
inline Split cone_second_derivative(double alpha, double lambda) {
  const double c = slope();
  auto side = [&](double t) {
    return std::pow((lambda - t) * (lambda - t) + c * t * c * t, (alpha - 5) / 2) * (lambda - t) * t;
  };
  auto base = [&](double r) { return std::pow((lambda - 1) * (lambda - 1) + r * r, (alpha - 5) / 2) * r; };
  return {-2 * kPi * (3 - alpha) * c * c * smooth(side, 0.0, 1.0),
          2 * kPi * (3 - alpha) * (lambda - 1) * smooth(base, 0.0, c)};
}

/// Same for the paraboloid 0 <= y1 <= 1, |ybar|^2 <= c^2 y1 in R^3.
inline Split paraboloid_second_derivative(double alpha, double lambda) {
  const double c = slope();
  auto side = [&](double t) {
    return std::pow((lambda - t) * (lambda - t) + c * c * t, (alpha - 5) / 2) * (lambda - t);
  };
  auto base = [&](double r) { return std::pow((lambda - 1) * (lambda - 1) + r * r, (alpha - 5) / 2) * r; };
  return {-kPi * (3 - alpha) * c * c * smooth(side, 0.0, 1.0),
          2 * kPi * (3 - alpha) * (lambda - 1) * smooth(base, 0.0, c)};
}

/// Riesz potential of order alpha (alpha != 2) of the unit disc at its center.
inline double disc_center_riesz(double alpha) {
  return (alpha < 2 ? 1.0 : -1.0) * 2 * kPi / alpha;
}

/// -log potential of the unit disc at its center.
inline double disc_center_log() { return kPi / 2; }

/// Solid angle of the unit disc seen from height h above its center.
inline double disc_illuminating_on_axis(double h) { return 2 * kPi * (1 - h / std::sqrt(1 + h * h)); }

/// Area of a disc of radius R centered at (a, 0) seen by kernel k from the origin,
/// by polar quadrature about the origin; R > |a|.
template <typename K>
double disc_polar_potential(K k, double a, double R) {
  auto f = [&](double th) {
    const double c = std::cos(th);
    const double rho = a * c + std::sqrt(R * R - a * a * (1 - c * c));
    return singular([&](double r) { return k(r) * r; }, 0.0, rho);
  };
  return 2 * smooth(f, 0.0, kPi);
}

}  // namespace oracle
