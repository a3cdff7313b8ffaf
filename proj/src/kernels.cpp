#include "bodycenters/kernels.hpp"

#include <cmath>
#include <numbers>

#include "bodycenters/detail/overloaded.hpp"
#include "bodycenters/error.hpp"
#include "bodycenters/quadrature.hpp"

namespace bodycenters {

namespace {

using detail::overloaded;

void require_positive_radius(double r) {
  if (!(r > 0.0)) throw DomainError("kernel evaluated at nonpositive radius");
}

void require_interval(std::pair<double, double> interval, int n) {
  if (!(interval.first > 0.0) || !(interval.second > interval.first) || n < 2)
    throw DomainError("monotonicity check needs 0 < a < b and n >= 2");
}

// Lower incomplete gamma g(s, x) for s in {1/2, 1, 3/2, ...} by upward recurrence.
double lower_gamma_half_integer(int two_s, double x) {
  double g;
  double s;
  if (two_s % 2 == 0) {
    g = -std::expm1(-x);
    s = 1.0;
  } else {
    g = std::sqrt(std::numbers::pi) * std::erf(std::sqrt(x));
    s = 0.5;
  }
  while (2.0 * s < two_s - 0.5) {
    g = s * g - std::pow(x, s) * std::exp(-x);
    s += 1.0;
  }
  return g;
}

// integral_0^theta sin^n(u) du by the standard reduction formula.
double sine_power_integral(int n, double theta) {
  if (n == 0) return theta;
  if (n == 1) return 1.0 - std::cos(theta);
  return -std::pow(std::sin(theta), n - 1) * std::cos(theta) / n +
         (n - 1.0) / n * sine_power_integral(n - 2, theta);
}

}  // namespace

KernelSpec::KernelSpec(KernelFamily family, int dimension)
    : family_(std::move(family)), m_(dimension) {
  if (m_ < 2) throw ConstructionError("ambient dimension must be >= 2");
  std::visit(overloaded{
                 [&](const Riesz& k) {
                   if (!(k.alpha > 0.0)) throw ConstructionError("riesz alpha must be > 0");
                   if (k.alpha == static_cast<double>(m_))
                     throw ConstructionError("riesz alpha == m is the log kernel");
                 },
                 [](const LogKernel&) {},
                 [](const Poisson& k) {
                   if (!(k.h > 0.0)) throw ConstructionError("poisson h must be > 0");
                 },
                 [](const Gauss& k) {
                   if (!(k.t > 0.0)) throw ConstructionError("gauss t must be > 0");
                 },
                 [](const CustomKernel& k) {
                   if (!k.value || !k.derivative)
                     throw ConstructionError("custom kernel needs value and derivative");
                 },
             },
             family_);
}

KernelSpec KernelSpec::riesz(double alpha, int m) {
  if (alpha == static_cast<double>(m)) return KernelSpec(LogKernel{}, m);
  return KernelSpec(Riesz{alpha}, m);
}
KernelSpec KernelSpec::log(int m) { return KernelSpec(LogKernel{}, m); }
KernelSpec KernelSpec::poisson(double h, int m) { return KernelSpec(Poisson{h}, m); }
KernelSpec KernelSpec::gauss(double t, int m) { return KernelSpec(Gauss{t}, m); }

std::string KernelSpec::name() const {
  return std::visit(overloaded{
                        [](const Riesz& k) { return "riesz(alpha=" + std::to_string(k.alpha) + ")"; },
                        [](const LogKernel&) { return std::string("log"); },
                        [](const Poisson& k) { return "poisson(h=" + std::to_string(k.h) + ")"; },
                        [](const Gauss& k) { return "gauss(t=" + std::to_string(k.t) + ")"; },
                        [](const CustomKernel& k) { return k.name; },
                    },
                    family_);
}

bool KernelSpec::is_riesz_like() const {
  return std::holds_alternative<Riesz>(family_) || std::holds_alternative<LogKernel>(family_);
}

double KernelSpec::riesz_alpha() const {
  if (const auto* k = std::get_if<Riesz>(&family_)) return k->alpha;
  if (std::holds_alternative<LogKernel>(family_)) return m_;
  throw CapabilityError("kernel is not of Riesz type");
}

double k_value(const KernelSpec& spec, double r) {
  require_positive_radius(r);
  const int m = spec.dimension();
  return std::visit(overloaded{
                        [&](const Riesz& k) {
                          const double s = k.alpha < m ? 1.0 : -1.0;
                          return s * std::pow(r, k.alpha - m);
                        },
                        [&](const LogKernel&) { return -std::log(r); },
                        [&](const Poisson& k) {
                          return k.h * std::pow(r * r + k.h * k.h, -0.5 * (m + 1));
                        },
                        [&](const Gauss& k) {
                          return std::pow(4.0 * std::numbers::pi * k.t, -0.5 * m) *
                                 std::exp(-r * r / (4.0 * k.t));
                        },
                        [&](const CustomKernel& k) { return k.value(r); },
                    },
                    spec.family());
}

double k_derivative(const KernelSpec& spec, double r) {
  require_positive_radius(r);
  const int m = spec.dimension();
  return std::visit(overloaded{
                        [&](const Riesz& k) {
                          // sign(m - a) (a - m) = -|a - m|
                          return -std::abs(k.alpha - m) * std::pow(r, k.alpha - m - 1.0);
                        },
                        [&](const LogKernel&) { return -1.0 / r; },
                        [&](const Poisson& k) {
                          return -(m + 1.0) * k.h * r * std::pow(r * r + k.h * k.h, -0.5 * (m + 3));
                        },
                        [&](const Gauss& k) {
                          return -r / (2.0 * k.t) * std::pow(4.0 * std::numbers::pi * k.t, -0.5 * m) *
                                 std::exp(-r * r / (4.0 * k.t));
                        },
                        [&](const CustomKernel& k) { return k.derivative(r); },
                    },
                    spec.family());
}

double radial_primitive(const KernelSpec& spec, double r) {
  if (r <= 0.0) return 0.0;
  const int m = spec.dimension();
  return std::visit(
      overloaded{
          [&](const Riesz& k) {
            const double s = k.alpha < m ? 1.0 : -1.0;
            return s * std::pow(r, k.alpha) / k.alpha;
          },
          [&](const LogKernel&) {
            const double rm = std::pow(r, m);
            return -rm * std::log(r) / m + rm / (static_cast<double>(m) * m);
          },
          [&](const Poisson& k) { return sine_power_integral(m - 1, std::atan2(r, k.h)); },
          [&](const Gauss& k) {
            return 0.5 * std::pow(std::numbers::pi, -0.5 * m) *
                   lower_gamma_half_integer(m, r * r / (4.0 * k.t));
          },
          [&](const CustomKernel& k) {
            auto f = [&](double s) { return s > 0.0 ? std::pow(s, m - 1) * k.value(s) : 0.0; };
            return quad::integrate_adaptive(f, 0.0, r, 1e-13);
          },
      },
      spec.family());
}

ConditionClass condition_class(const KernelSpec& spec) {
  const int m = spec.dimension();
  return std::visit(overloaded{
                        [&](const Riesz& k) {
                          return ConditionClass{k.alpha > 1.0 ? Smoothness::C1 : Smoothness::C0,
                                                k.alpha};
                        },
                        [&](const LogKernel&) {
                          return ConditionClass{Smoothness::C1, static_cast<double>(m)};
                        },
                        [&](const Poisson&) {
                          return ConditionClass{Smoothness::C1, m + 1.0};
                        },
                        [&](const Gauss&) {
                          return ConditionClass{Smoothness::C1, m + 1.0};
                        },
                        [&](const CustomKernel& k) { return k.condition; },
                    },
                    spec.family());
}

bool check_strictly_decreasing(const KernelSpec& spec, std::pair<double, double> interval,
                               int n) {
  require_interval(interval, n);
  const auto [a, b] = interval;
  for (int i = 0; i < n; ++i) {
    const double r = a + (b - a) * i / (n - 1);
    if (!(k_derivative(spec, r) < 0.0)) return false;
  }
  return true;
}

namespace {

template <typename Accept>
bool scan_ratio(const KernelSpec& spec, std::pair<double, double> interval, int n,
                Accept accept) {
  require_interval(interval, n);
  const auto [a, b] = interval;
  double prev = k_derivative(spec, a) / a;
  for (int i = 1; i < n; ++i) {
    const double r = a + (b - a) * i / (n - 1);
    const double q = k_derivative(spec, r) / r;
    if (!accept(q - prev, std::max(1.0, std::max(std::abs(q), std::abs(prev))))) return false;
    prev = q;
  }
  return true;
}

}  // namespace

bool check_ratio_increasing(const KernelSpec& spec, std::pair<double, double> interval, int n) {
  return scan_ratio(spec, interval, n,
                    [](double diff, double scale) { return diff >= -1e-12 * scale; });
}

bool ratio_strictly_increasing(const KernelSpec& spec, std::pair<double, double> interval,
                               int n) {
  return scan_ratio(spec, interval, n,
                    [](double diff, double) { return diff > 0.0; });
}

double sphere_measure(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

}  // namespace bodycenters
