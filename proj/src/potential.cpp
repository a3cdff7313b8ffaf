#include "bodycenters/potential.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

#include "bodycenters/detail/overloaded.hpp"
#include "bodycenters/error.hpp"
#include "bodycenters/parallel.hpp"

namespace bodycenters {

using detail::overloaded;

namespace {

constexpr double kBoundaryExclusion = 1e-9;

KernelSpec bind(const KernelSpec& k, const Body& body) {
  return k.dimension() == body.dimension() ? k : k.with_dimension(body.dimension());
}

bool singular_at_zero(const KernelSpec& k) {
  const int m = k.dimension();
  return std::visit(overloaded{
                        [&](const Riesz& r) { return r.alpha < m; },
                        [](const LogKernel&) { return true; },
                        [](const Poisson&) { return false; },
                        [](const Gauss&) { return false; },
                        [&](const CustomKernel& c) { return c.condition.alpha < m; },
                    },
                    k.family());
}

void require_integrable(const KernelSpec& k) {
  if (!(condition_class(k).alpha > 0.0))
    throw DomainError("kernel is not locally integrable (alpha <= 0)");
}

void require_c1(const KernelSpec& k, const char* what) {
  const auto c = condition_class(k);
  if (c.smoothness != Smoothness::C1 || !(c.alpha > 1.0))
    throw CapabilityError(std::string(what) + " needs a C1 kernel with alpha > 1");
}

// Where the boundary integrals are taken: either the planar boundary curve
// (x anywhere in the plane) or the upper meridian of a revolution body swept
// about the axis (x on the axis).
struct Frame {
  std::vector<CurvePiece> pieces;
  const Profile* profile = nullptr;
  Vec2 x;
  bool axial = false;
  int m = 2;
  double sweep = 1.0;  // measure of S^(m-2) for axial frames
  double dist = 0.0;
  double length = 0.0;

  double weight(const Vec2& y) const {
    if (!axial) return 1.0;
    return m == 2 ? sweep : sweep * std::pow(y.y(), m - 2);
  }
};

Frame axial_frame(const Body& rev_body, double lambda) {
  Frame f;
  f.pieces = upper_meridian(rev_body);
  f.profile = rev_body.profile();
  f.x = Vec2(lambda, 0.0);
  f.axial = true;
  f.m = rev_body.dimension();
  f.sweep = sphere_measure(f.m - 1);
  f.dist = rev_body.boundary_distance(f.x);
  for (const auto& p : f.pieces) f.length += piece_length(p, f.profile);
  return f;
}

Frame make_frame(const Body& body, const VecX& x) {
  if (x.size() != body.dimension()) throw DomainError("point dimension does not match body");
  if (body.planar()) {
    Frame f;
    f.pieces = body.curve_pieces();
    f.profile = body.profile();
    f.x = Vec2(x(0), x(1));
    f.dist = body.boundary_distance(f.x);
    for (const auto& p : f.pieces) f.length += piece_length(p, f.profile);
    return f;
  }
  if (x.tail(x.size() - 1).norm() > 1e-12 * std::max(1.0, body.diameter()))
    throw CapabilityError("off-axis evaluation is not supported for m >= 3 revolution bodies");
  return axial_frame(body, x(0));
}

// Parameter of the point of a piece nearest to x (coarse search).
double nearest_parameter(const CurvePiece& pc, const Profile* prof, const Vec2& x) {
  if (const auto* s = std::get_if<CurvePiece::Segment>(&pc.geometry)) {
    const Vec2 d = s->b - s->a;
    return std::clamp((x - s->a).dot(d) / d.squaredNorm(), 0.0, 1.0);
  }
  double best = 0.0, best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 256; ++i) {
    const double s = i / 256.0;
    const double d = (pc.eval(s, prof).point - x).norm();
    if (d < best_d) {
      best_d = d;
      best = s;
    }
  }
  return best;
}

// Integral over one piece of f(y, n ds, weight), y the boundary point.
template <typename F>
auto integrate_piece(const Frame& fr, const CurvePiece& pc, const QuadratureConfig& cfg,
                     const F& f) {
  auto g = [&](double s) {
    const auto smp = pc.eval(s, fr.profile);
    return f(smp.point, smp.normal_speed, fr.weight(smp.point));
  };
  const bool near = fr.dist < 10.0 * fr.length / cfg.boundary_resolution;
  const auto* gl = std::get_if<quad::GaussLegendre>(&cfg.quad_1d);
  if (!gl || near) {
    const double tol = gl ? cfg.near_boundary_tol : std::get<quad::Adaptive>(cfg.quad_1d).tol;
    const double cut[1] = {nearest_parameter(pc, fr.profile, fr.x)};
    return quad::integrate_adaptive(g, 0.0, 1.0, tol, cut);
  }
  const double len = piece_length(pc, fr.profile);
  const int panels = std::max(
      1, static_cast<int>(std::ceil(cfg.boundary_resolution * len / fr.length / gl->order)));
  std::vector<double> cuts;
  for (int i = 1; i < panels; ++i) cuts.push_back(static_cast<double>(i) / panels);
  return quad::integrate_fixed(g, 0.0, 1.0, gl->order, cuts);
}

template <typename F>
auto integrate_frame(const Frame& fr, const QuadratureConfig& cfg, const F& f) {
  using T = std::decay_t<decltype(f(Vec2(), Vec2(), 1.0))>;
  T total = quad::zero_like(T(f(fr.x + Vec2(1.0, 1.0), Vec2(0.0, 0.0), 1.0)));
  for (const auto& pc : fr.pieces) total += integrate_piece(fr, pc, cfg, f);
  return total;
}

bool is_base_face(const CurvePiece& pc) {
  const auto* s = std::get_if<CurvePiece::Segment>(&pc.geometry);
  if (!s || s->a.x() != s->b.x()) return false;
  return s->a.x() == 0.0 || s->a.x() == 1.0;
}

double value_integrand(const KernelSpec& k, const Vec2& x, const Vec2& y, const Vec2& n, double w) {
  const Vec2 d = y - x;
  const double r = d.norm();
  if (!(r > 0.0)) return 0.0;
  return radial_primitive(k, r) / std::pow(r, k.dimension()) * d.dot(n) * w;
}

// Volume of the planar body (or of the m = 2 meridian) minus the ball of radius rho0 about x.
double volume_planar(const Body& body, const KernelSpec& k, const Vec2& x, double rho0,
                     const QuadratureConfig& cfg) {
  std::vector<double> br = body.slab_breaks();
  const double lo = br.front(), hi = br.back();
  br.push_back(x.x());
  if (rho0 > 0.0) {
    br.push_back(x.x() - rho0);
    br.push_back(x.x() + rho0);
  }
  const double tol = cfg.volume_tol;
  const int budget = cfg.volume_resolution;
  auto inner = [&](double y1) {
    const double dx = y1 - x.x();
    const double hb = std::abs(dx) < rho0 ? std::sqrt(rho0 * rho0 - dx * dx) : 0.0;
    auto seg = [&](double a, double b) {
      if (!(b > a)) return 0.0;
      const double cut[1] = {x.y()};
      auto f = [&](double y2) {
        const double r = std::hypot(dx, y2 - x.y());
        return r > 0.0 ? k_value(k, r) : 0.0;
      };
      return quad::integrate_adaptive(f, a, b, 0.1 * tol, cut, budget);
    };
    double sum = 0.0;
    for (const auto& [a, b] : body.cross_section(y1)) {
      if (hb > 0.0)
        sum += seg(a, std::min(b, x.y() - hb)) + seg(std::max(a, x.y() + hb), b);
      else
        sum += seg(a, b);
    }
    return sum;
  };
  return quad::integrate_adaptive(inner, lo, hi, tol, br, budget);
}

// Planar body with x on its boundary, in polar coordinates about x: each ray
// contributes Phi at the ends of its chords. Slabs through x would carry a
// non-integrable singularity in every inner integral once alpha <= 1.
double volume_polar(const Body& body, const KernelSpec& k, const Vec2& x, const QuadratureConfig& cfg) {
  auto phi = [&](double r) { return r > 0.0 ? radial_primitive(k, r) : 0.0; };
  std::vector<double> br;
  for (const auto& pc : body.curve_pieces())
    for (double s : {0.0, 1.0}) {
      const Vec2 d = pc.eval(s, body.profile()).point - x;
      if (d.norm() > 0.0) br.push_back(std::atan2(d.y(), d.x()));
    }
  auto ray = [&](double th) {
    double sum = 0.0;
    for (const auto& [a, b] : body.line_chords(x, Vec2(std::cos(th), std::sin(th))))
      if (b > 0.0) sum += phi(b) - phi(std::max(a, 0.0));
    return sum;
  };
  return quad::integrate_adaptive(ray, -std::numbers::pi, std::numbers::pi, cfg.volume_tol, br,
                                  cfg.volume_resolution);
}

// The same for an m >= 3 revolution body and x = (lambda, 0, ..., 0), in (t, rho) coordinates.
double volume_axial(const Body& body, const KernelSpec& k, double lambda, double rho0,
                    const QuadratureConfig& cfg) {
  const Profile& p = *body.profile();
  const int m = body.dimension();
  std::vector<double> br = p.breakpoints();
  br.push_back(lambda);
  if (rho0 > 0.0) {
    br.push_back(lambda - rho0);
    br.push_back(lambda + rho0);
  }
  const double tol = cfg.volume_tol;
  const int budget = cfg.volume_resolution;
  auto inner = [&](double t) {
    const double dt = t - lambda;
    const double hb = std::abs(dt) < rho0 ? std::sqrt(rho0 * rho0 - dt * dt) : 0.0;
    const double w = p.value(t);
    if (!(w > hb)) return 0.0;
    auto f = [&](double rho) {
      const double r = std::hypot(dt, rho);
      return r > 0.0 ? std::pow(rho, m - 2) * k_value(k, r) : 0.0;
    };
    return quad::integrate_adaptive(f, hb, w, 0.1 * tol, {}, budget);
  };
  return sphere_measure(m - 1) * quad::integrate_adaptive(inner, 0.0, 1.0, tol, br, budget);
}

}  // namespace

void validate(const QuadratureConfig& cfg) {
  if (cfg.boundary_resolution < 8 || cfg.volume_resolution < 8)
    throw DomainError("quadrature resolutions must be >= 8");
  if (const auto* a = std::get_if<quad::Adaptive>(&cfg.quad_1d); a && !(a->tol > 0.0))
    throw DomainError("adaptive tolerance must be > 0");
  if (const auto* g = std::get_if<quad::GaussLegendre>(&cfg.quad_1d); g && g->order < 1)
    throw DomainError("gauss-legendre order must be >= 1");
  if (!(cfg.volume_tol > 0.0) || !(cfg.near_boundary_tol > 0.0))
    throw DomainError("tolerances must be > 0");
  if (cfg.singularity_split_radius && !(*cfg.singularity_split_radius > 0.0))
    throw DomainError("singularity split radius must be > 0");
}

double eval_volume(const Body& body, const KernelSpec& kernel, const VecX& x,
                   const QuadratureConfig& cfg) {
  validate(cfg);
  const KernelSpec k = bind(kernel, body);
  require_integrable(k);
  const Frame fr = make_frame(body, x);
  double rho0 = 0.0;
  if (singular_at_zero(k) && body.contains(x)) {
    rho0 = 0.1 * fr.dist;
    if (cfg.singularity_split_radius) rho0 = std::min(*cfg.singularity_split_radius, fr.dist);
  }
  const double ball = rho0 > 0.0 ? sphere_measure(k.dimension()) * radial_primitive(k, rho0) : 0.0;
  if (body.planar() && singular_at_zero(k) && fr.dist <= kBoundaryExclusion)
    return volume_polar(body, k, fr.x, cfg);
  if (body.planar()) return ball + volume_planar(body, k, fr.x, rho0, cfg);
  return ball + volume_axial(body, k, fr.x.x(), rho0, cfg);
}

double eval_boundary(const Body& body, const KernelSpec& kernel, const VecX& x,
                     const QuadratureConfig& cfg) {
  validate(cfg);
  const KernelSpec k = bind(kernel, body);
  require_integrable(k);
  const Frame fr = make_frame(body, x);
  if (singular_at_zero(k) && fr.dist <= kBoundaryExclusion)
    throw PreconditionError("boundary expression is not defined on the boundary");
  return integrate_frame(fr, cfg, [&](const Vec2& y, const Vec2& n, double w) {
    return value_integrand(k, fr.x, y, n, w);
  });
}

double eval_boundary_riesz(const Body& body, double alpha, const VecX& x,
                           const QuadratureConfig& cfg) {
  return eval_boundary(body, KernelSpec::riesz(alpha, body.dimension()), x, cfg);
}

VecX gradient(const Body& body, const KernelSpec& kernel, const VecX& x,
              const QuadratureConfig& cfg) {
  validate(cfg);
  const KernelSpec k = bind(kernel, body);
  require_c1(k, "gradient");
  const Frame fr = make_frame(body, x);
  const Vec2 g = integrate_frame(fr, cfg, [&](const Vec2& y, const Vec2& n, double w) -> Vec2 {
    const double r = (y - fr.x).norm();
    if (!(r > 0.0)) return Vec2::Zero();
    return -k_value(k, r) * w * n;
  });
  VecX out = VecX::Zero(body.dimension());
  out(0) = g(0);
  if (!fr.axial) out(1) = g(1);
  return out;
}

Eigen::MatrixXd hessian(const Body& body, const KernelSpec& kernel, const VecX& x,
                        const QuadratureConfig& cfg) {
  validate(cfg);
  const KernelSpec k = bind(kernel, body);
  require_c1(k, "hessian");
  const Frame fr = make_frame(body, x);
  if (fr.dist <= kBoundaryExclusion) throw PreconditionError("hessian is not defined on the boundary");
  const int m = body.dimension();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  if (!fr.axial) {
    const Eigen::Vector4d e =
        integrate_frame(fr, cfg, [&](const Vec2& y, const Vec2& n, double w) -> Eigen::Vector4d {
          const Vec2 d = fr.x - y;
          const double r = d.norm();
          if (!(r > 0.0)) return Eigen::Vector4d::Zero();
          const double c = -k_derivative(k, r) / r * w;
          return Eigen::Vector4d(c * d(0) * n(0), c * d(0) * n(1), c * d(1) * n(0), c * d(1) * n(1));
        });
    h << e(0), e(1), e(2), e(3);
    return h;
  }
  // on the axis: H = diag(h11, h22, ..., h22) by rotational symmetry
  const Vec2 e = integrate_frame(fr, cfg, [&](const Vec2& y, const Vec2& n, double w) -> Vec2 {
    const Vec2 d = fr.x - y;
    const double r = d.norm();
    if (!(r > 0.0)) return Vec2::Zero();
    const double c = -k_derivative(k, r) / r * w;
    return Vec2(c * d(0) * n(0), c * d(1) * n(1) / (m - 1));
  });
  h(0, 0) = e(0);
  for (int i = 1; i < m; ++i) h(i, i) = e(1);
  return h;
}

double hessian_entry(const Body& body, const KernelSpec& kernel, const VecX& x, int i, int j,
                     const QuadratureConfig& cfg) {
  const int m = body.dimension();
  if (i < 0 || j < 0 || i >= m || j >= m) throw DomainError("hessian index out of range");
  return hessian(body, kernel, x, cfg)(i, j);
}

AxisSecondDerivative axis_second_derivative(const Body& body, const KernelSpec& kernel,
                                            double lambda, const QuadratureConfig& cfg) {
  validate(cfg);
  const auto rev = axial_form(body);
  if (!rev) throw PreconditionError("body is not axially symmetric about the x1 axis on [0, 1]");
  const Body axial = body.as_revolution() ? body : Body(*rev);
  const KernelSpec k = bind(kernel, axial);
  require_c1(k, "axis second derivative");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda outside the axial extent [0, 1]");
  const Frame fr = axial_frame(axial, lambda);
  if (fr.dist <= kBoundaryExclusion)
    throw PreconditionError("second derivative is not defined on the boundary");
  auto f = [&](const Vec2& y, const Vec2& n, double w) {
    const double r = (y - fr.x).norm();
    if (!(r > 0.0)) return 0.0;
    return -k_derivative(k, r) / r * (lambda - y.x()) * n.x() * w;
  };
  AxisSecondDerivative out;
  for (const auto& pc : fr.pieces) {
    const double v = integrate_piece(fr, pc, cfg, f);
    (is_base_face(pc) ? out.bases : out.side) += v;
  }
  out.total = out.side + out.bases;
  return out;
}

double illuminating(const Body& body, const VecX& x, double h, const QuadratureConfig& cfg) {
  if (!(h > 0.0)) throw DomainError("illuminating height h must be > 0");
  return eval_boundary(body, KernelSpec::poisson(h, body.dimension()), x, cfg);
}

std::vector<FieldSample> evaluate_batch(const Body& body, const KernelSpec& kernel,
                                        const std::vector<VecX>& points, bool with_gradient,
                                        bool with_hessian, const QuadratureConfig& cfg) {
  std::vector<FieldSample> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    FieldSample s;
    s.x = points[i];
    s.value = eval_boundary(body, kernel, points[i], cfg);
    if (with_gradient) s.gradient = gradient(body, kernel, points[i], cfg);
    if (with_hessian) s.hessian_11 = hessian_entry(body, kernel, points[i], 0, 0, cfg);
    out[i] = std::move(s);
  });
  return out;
}

void write_samples_csv(std::ostream& out, const std::vector<FieldSample>& samples) {
  if (samples.empty()) return;
  const auto m = samples.front().x.size();
  const bool g = samples.front().gradient.has_value();
  const bool h = samples.front().hessian_11.has_value();
  for (Eigen::Index i = 0; i < m; ++i) out << 'x' << i + 1 << ',';
  out << "value";
  if (g)
    for (Eigen::Index i = 0; i < m; ++i) out << ",g" << i + 1;
  if (h) out << ",h11";
  out << '\n' << std::setprecision(17);
  for (const auto& s : samples) {
    for (Eigen::Index i = 0; i < m; ++i) out << s.x(i) << ',';
    out << s.value;
    if (g)
      for (Eigen::Index i = 0; i < m; ++i) out << ',' << (*s.gradient)(i);
    if (h) out << ',' << *s.hessian_11;
    out << '\n';
  }
}

}  // namespace bodycenters
