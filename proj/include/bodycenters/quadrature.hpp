#pragma once

// One-dimensional quadrature: Gauss-Legendre rules of arbitrary order and a
// globally-targeted adaptive Gauss-Kronrod (7/15) integrator. Integrands may
// return double or any fixed-size Eigen vector.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <type_traits>
#include <variant>
#include <vector>

namespace bodycenters::quad {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights by Newton iteration on P_n.
/// Cached per order; safe to call concurrently after first use of an order
/// only through gauss_legendre() below.
Rule make_gauss_legendre(int order);
const Rule& gauss_legendre(int order);

struct GaussLegendre {
  int order = 64;
};
struct Adaptive {
  double tol = 1e-12;
};
using Method = std::variant<GaussLegendre, Adaptive>;

inline double magnitude(double v) { return std::abs(v); }
template <typename Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) {
  return v.cwiseAbs().maxCoeff();
}

template <typename T>
T zero_like(const T& sample) {
  if constexpr (std::is_arithmetic_v<T>) {
    return T(0);
  } else {
    T z = sample;
    z.setZero();
    return z;
  }
}

namespace detail {

// Kronrod abscissae (descending), Kronrod weights, Gauss weights for odd nodes.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
auto gk15(const F& f, double a, double b, double& err, double& resabs) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  using T = std::decay_t<decltype(f(c))>;
  T fc = f(c);
  T rk = fc * kWgk[7];
  T rg = fc * kWg[3];
  resabs = kWgk[7] * magnitude(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    T f1 = f(c - dx);
    T f2 = f(c + dx);
    rk += (f1 + f2) * kWgk[j];
    resabs += kWgk[j] * (magnitude(f1) + magnitude(f2));
    if (j % 2 == 1) rg += (f1 + f2) * kWg[j / 2];
  }
  resabs *= std::abs(h);
  err = magnitude(T((rk - rg) * h));
  return T(rk * h);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod over [a,b] split first at the given interior
/// breakpoints. Intervals are bisected until each local error estimate is
/// below its length-share of tol * (integral of |f|), or the interval budget
/// is spent.
template <typename F>
auto integrate_adaptive(const F& f, double a, double b, double tol,
                        std::span<const double> breaks = {}, int max_intervals = 4000) {
  using T = std::decay_t<decltype(f(a))>;
  struct Piece {
    double a, b;
    T value;
    double err;
  };
  std::vector<double> cuts{a};
  for (double x : breaks)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  std::vector<Piece> pending;
  double total_abs = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    double e, ra;
    T v = detail::gk15(f, cuts[i], cuts[i + 1], e, ra);
    total_abs += ra;
    pending.push_back({cuts[i], cuts[i + 1], v, e});
  }
  if (pending.empty()) return zero_like(T(f(0.5 * (a + b))));

  const double length = b - a;
  const double target = std::max(tol * total_abs, 1e-300);
  T result = zero_like(pending.front().value);
  int used = static_cast<int>(pending.size());
  while (!pending.empty()) {
    Piece p = pending.back();
    pending.pop_back();
    const double share = target * (p.b - p.a) / length;
    const double mid = 0.5 * (p.a + p.b);
    if (p.err <= share || used >= max_intervals || mid <= p.a || mid >= p.b) {
      result += p.value;
      continue;
    }
    double e1, e2, r1, r2;
    T v1 = detail::gk15(f, p.a, mid, e1, r1);
    T v2 = detail::gk15(f, mid, p.b, e2, r2);
    ++used;
    pending.push_back({mid, p.b, v2, e2});
    pending.push_back({p.a, mid, v1, e1});
  }
  return result;
}

/// Composite Gauss-Legendre with one panel per breakpoint interval.
template <typename F>
auto integrate_fixed(const F& f, double a, double b, int order,
                     std::span<const double> breaks = {}) {
  const Rule& rule = gauss_legendre(order);
  std::vector<double> cuts{a};
  for (double x : breaks)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  using T = std::decay_t<decltype(f(a))>;
  T result = zero_like(T(f(0.5 * (a + b))));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double c = 0.5 * (cuts[i] + cuts[i + 1]);
    const double h = 0.5 * (cuts[i + 1] - cuts[i]);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
      result += f(c + h * rule.nodes[k]) * (h * rule.weights[k]);
  }
  return result;
}

template <typename F>
auto integrate(const F& f, double a, double b, const Method& method,
               std::span<const double> breaks = {}) {
  if (const auto* gl = std::get_if<GaussLegendre>(&method))
    return integrate_fixed(f, a, b, gl->order, breaks);
  return integrate_adaptive(f, a, b, std::get<Adaptive>(method).tol, breaks);
}

}  // namespace bodycenters::quad
