#pragma once

#include <functional>
#include <string>
#include <utility>
#include <variant>

namespace bodycenters {

/// sign(m - alpha) * r^(alpha - m); alpha == m is the log family.
struct Riesz {
  double alpha;
};
/// -log r
struct LogKernel {};
/// h (r^2 + h^2)^(-(m+1)/2)
struct Poisson {
  double h;
};
/// (4 pi t)^(-m/2) exp(-r^2 / (4t))
struct Gauss {
  double t;
};

enum class Smoothness { C0, C1 };

struct ConditionClass {
  Smoothness smoothness;
  double alpha;
};

/// Code-level extension point for kernels outside the shipped families.
struct CustomKernel {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  ConditionClass condition;
};

using KernelFamily = std::variant<Riesz, LogKernel, Poisson, Gauss, CustomKernel>;

/// A radial kernel instance bound to an ambient dimension. Immutable.
class KernelSpec {
 public:
  KernelSpec(KernelFamily family, int dimension);

  static KernelSpec riesz(double alpha, int m);
  static KernelSpec log(int m);
  static KernelSpec poisson(double h, int m);
  static KernelSpec gauss(double t, int m);

  const KernelFamily& family() const { return family_; }
  int dimension() const { return m_; }
  std::string name() const;

  /// Same family, different ambient dimension.
  KernelSpec with_dimension(int m) const { return KernelSpec(family_, m); }

  bool is_riesz_like() const;
  /// Riesz exponent alpha; m for the log kernel.
  double riesz_alpha() const;

 private:
  KernelFamily family_;
  int m_;
};

double k_value(const KernelSpec& spec, double r);
double k_derivative(const KernelSpec& spec, double r);

/// Phi(r) = integral_0^r s^(m-1) k(s) ds. Closed form where one exists.
double radial_primitive(const KernelSpec& spec, double r);

ConditionClass condition_class(const KernelSpec& spec);

/// k' < 0 at n uniformly spaced points of [a, b].
bool check_strictly_decreasing(const KernelSpec& spec, std::pair<double, double> interval,
                               int n = 1000);

/// r -> k'(r)/r is nondecreasing across n uniform samples of [a, b]
/// (successive differences >= -1e-12, scaled by the magnitude of the ratio).
bool check_ratio_increasing(const KernelSpec& spec, std::pair<double, double> interval,
                            int n = 1000);

/// Same sampling, but every successive difference must be strictly positive.
bool ratio_strictly_increasing(const KernelSpec& spec, std::pair<double, double> interval,
                               int n = 1000);

/// Surface measure of the unit sphere S^(n-1) in R^n.
double sphere_measure(int n);

}  // namespace bodycenters
