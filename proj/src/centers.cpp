#include "bodycenters/centers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bodycenters/detail/overloaded.hpp"
#include "bodycenters/error.hpp"
#include "bodycenters/parallel.hpp"

namespace bodycenters {

using detail::overloaded;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOnBoundary = 1e-9;

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

// Meridian coordinates of a point of an m >= 3 revolution body.
Vec2 planar_point(const Body& body, const VecX& x) {
  if (body.planar()) return Vec2(x(0), x(1));
  return Vec2(x(0), x.tail(x.size() - 1).norm());
}

double distance_to_boundary(const Body& body, const VecX& x) {
  return body.boundary_distance(planar_point(body, x));
}

bool c1_kernel(const KernelSpec& k) {
  const ConditionClass c = condition_class(k);
  return c.smoothness == Smoothness::C1 && c.alpha > 1.0;
}

double angle_at(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 u = (a - p).normalized(), v = (b - p).normalized();
  return std::acos(std::clamp(u.dot(v), -1.0, 1.0));
}

double max_triangle_angle(const Body& body) {
  const auto& v = std::get<Polygon>(body.shape()).vertices;
  return std::max({angle_at(v[0], v[1], v[2]), angle_at(v[1], v[2], v[0]),
                   angle_at(v[2], v[0], v[1])});
}

bool is_triangle(const Body& body) {
  const auto* p = std::get_if<Polygon>(&body.shape());
  return p && p->vertices.size() == 3;
}

}  // namespace

std::string to_string(Multiplicity m) {
  switch (m) {
    case Multiplicity::unique: return "unique";
    case Multiplicity::finite: return "finite";
    case Multiplicity::continuum_circle: return "continuum_circle";
    case Multiplicity::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::revolution_concavity: return "revolution_concavity";
    case CertificateKind::nonobtuse_triangle: return "nonobtuse_triangle";
    case CertificateKind::riesz_small_alpha: return "riesz_small_alpha";
    case CertificateKind::riesz_large_alpha: return "riesz_large_alpha";
    case CertificateKind::parallel_body: return "parallel_body";
    case CertificateKind::illuminating_large_h: return "illuminating_large_h";
    case CertificateKind::illuminating_small_h: return "illuminating_small_h";
    case CertificateKind::none: return "none";
  }
  return "none";
}

std::string to_string(RieszVerdict v) {
  switch (v) {
    case RieszVerdict::unique_small_alpha: return "unique_small_alpha";
    case RieszVerdict::unique_large_alpha: return "unique_large_alpha";
    case RieszVerdict::unique_special_shape: return "unique_special_shape";
    case RieszVerdict::unknown: return "unknown";
  }
  return "unknown";
}

double potential_value(const Body& body, const KernelSpec& kernel, const VecX& x,
                       const QuadratureConfig& cfg) {
  if (distance_to_boundary(body, x) <= kOnBoundary) {
    // the boundary expression is excluded here; the volume integral is continuous across
    QuadratureConfig vc = cfg;
    vc.volume_tol = std::max(cfg.volume_tol, 1e-8);
    return eval_volume(body, kernel, x, vc);
  }
  return eval_boundary(body, kernel, x, cfg);
}

bool nonobtuse_triangle(const Body& body) {
  return is_triangle(body) && max_triangle_angle(body) <= std::numbers::pi / 2 + 1e-12;
}

BodyTraits body_traits(const Body& body) {
  BodyTraits t;
  t.convex = body.convex();
  if (const Revolution* r = body.as_revolution()) t.special_shape = r->profile.root_concave(r->m);
  else t.special_shape = nonobtuse_triangle(body);
  return t;
}

bool region_in_interior(const Body& body, const ConvexRegion& region) {
  const double margin = 1e-9 * body.diameter();
  for (const VecX& z : region.samples(512)) {
    VecX x = z;
    if (!body.contains(x) || distance_to_boundary(body, x) <= margin) return false;
  }
  // Samples can step over an isolated boundary contact; the extents are polished.
  return d_D_extents(body, region).first > margin;
}

RieszVerdict riesz_alpha_verdict(double alpha, int m, const BodyTraits& traits) {
  if (alpha > 0.0 && alpha <= 1.0 && traits.convex) return RieszVerdict::unique_small_alpha;
  if (alpha >= m + 1.0) return RieszVerdict::unique_large_alpha;
  if (alpha > 1.0 && alpha < m + 2.0 && traits.special_shape) return RieszVerdict::unique_special_shape;
  return RieszVerdict::unknown;
}

double parallel_body_threshold(double alpha, int m) {
  if (m == 2) throw DomainError("the threshold has the exponent 1/(m-2), undefined for m = 2");
  if (m < 2) throw DomainError("dimension must be at least 3");
  if (!(alpha > 1.0 && alpha < m + 1.0)) throw DomainError("alpha must lie in (1, m+1)");
  const double a = m + 1.0 - alpha, b = m + 2.0 - alpha;
  const double q = 4.0 * std::sqrt(b / a) + 0.5 * std::sqrt(a / b);
  const double inner = std::pow(4.0 * q * q + 1.0, -b / 2.0);
  const double root = std::pow(1.0 + inner, 1.0 / (m - 2)) - 1.0;
  return std::sqrt(a) / 2.0 * (2.0 + 3.0 / root) * q - 1.0;
}

Certificate illuminating_verdict(int m, double h, double d, double D, bool convex,
                                 bool uf_interior) {
  if (!(h > 0.0)) throw DomainError("height must be positive");
  Certificate c;
  const double large = std::sqrt(m + 2.0) * D;
  const double small = std::sqrt(2.0 / (m - 1.0)) * d;
  c.hypotheses.push_back({"h >= sqrt(m+2) D (margin h - sqrt(m+2) D)", h >= large, h - large,
                          "D stands in for the refined diameter quantity"});
  c.hypotheses.push_back({"h <= sqrt(2/(m-1)) d (margin sqrt(2/(m-1)) d - h)", h <= small, small - h, ""});
  c.hypotheses.push_back({"body convex", convex, std::nullopt, ""});
  c.hypotheses.push_back({"unfolded region in the interior", uf_interior, std::nullopt, ""});
  if (h >= large) c.kind = CertificateKind::illuminating_large_h;
  else if (h <= small && convex && uf_interior) c.kind = CertificateKind::illuminating_small_h;
  return c;
}

Certificate uniqueness_certificate(const Body& body, const KernelSpec& kernel,
                                   const ConvexRegion& region, std::pair<double, double> d_D) {
  const int m = body.dimension();
  const KernelSpec k = kernel.with_dimension(m);
  const auto [d, D] = d_D;
  const double diam = body.diameter();
  Certificate c;

  // shape class
  Hypothesis shape{"special shape", false, std::nullopt, ""};
  CertificateKind shape_kind = CertificateKind::none;
  if (const Revolution* r = body.as_revolution()) {
    shape.name = "omega^(m-1) concave";
    shape.holds = r->profile.root_concave(m);
    if (const auto* p = std::get_if<Profile::Power>(&r->profile.kind()))
      shape.margin = 1.0 / (m - 1) - p->p;
    shape_kind = CertificateKind::revolution_concavity;
  } else if (is_triangle(body)) {
    const double worst = max_triangle_angle(body);
    shape.name = "non-obtuse triangle (margin pi/2 - largest angle)";
    shape.margin = std::numbers::pi / 2 - worst;
    shape.holds = worst <= std::numbers::pi / 2 + 1e-12;
    shape_kind = CertificateKind::nonobtuse_triangle;
    if (!shape.holds)
      c.notes.push_back("obtuse triangle: the unfolded region need not lie in the medial triangle, "
                        "so the concavity argument does not apply");
  } else {
    shape.detail = "neither a revolution body nor a triangle";
  }
  c.hypotheses.push_back(shape);

  // kernel strictly decreasing on the distances that occur
  double worst_slope = -kInf;
  const double r0 = 1e-3 * diam;
  for (int i = 0; i < 1000; ++i) {
    const double r = r0 + (diam - r0) * i / 999.0;
    worst_slope = std::max(worst_slope, k_derivative(k, r));
  }
  const bool decreasing = worst_slope < 0.0;
  c.hypotheses.push_back({"kernel strictly decreasing (margin -max k')", decreasing, -worst_slope,
                          "sampled on [1e-3 diam, diam]"});

  const ConditionClass cls = condition_class(k);
  const bool c1 = cls.smoothness == Smoothness::C1 && cls.alpha > 1.0;
  c.hypotheses.push_back({"C1 class with alpha > 1 (margin alpha - 1)", c1, cls.alpha - 1.0, ""});

  const double lo = std::max(d, 1e-6 * D);
  const bool ratio = !(D > lo) || check_ratio_increasing(k, {lo, D});
  c.hypotheses.push_back({"k'(r)/r increasing on (d, D)", ratio, std::nullopt,
                          "sampled on [" + fmt(lo) + ", " + fmt(D) + "]"});

  if (shape.holds && decreasing && c1 && ratio) {
    c.kind = shape_kind;
    return c;
  }

  if (k.is_riesz_like()) {
    const double alpha = k.riesz_alpha();
    const bool convex = body.convex();
    const bool small = alpha > 0.0 && alpha <= 1.0;
    c.hypotheses.push_back({"Riesz order in (0, 1]", small, 1.0 - alpha, ""});
    c.hypotheses.push_back({"body convex", convex, std::nullopt, ""});
    if (small && convex) {
      c.kind = CertificateKind::riesz_small_alpha;
      return c;
    }
    const bool large = alpha >= m + 1.0;
    c.hypotheses.push_back({"Riesz order >= m + 1", large, alpha - (m + 1.0), ""});
    if (large) {
      c.kind = CertificateKind::riesz_large_alpha;
      return c;
    }
  }

  if (const auto* p = std::get_if<Poisson>(&k.family())) {
    Certificate ill = illuminating_verdict(m, p->h, d, D, body.convex(), region_in_interior(body, region));
    for (auto& h : ill.hypotheses) c.hypotheses.push_back(std::move(h));
    c.kind = ill.kind;
  }
  return c;
}

ConcavityScan concavity_scan(const Body& body, const KernelSpec& kernel, const ConvexRegion& region,
                             int n, const QuadratureConfig& cfg) {
  const int m = body.dimension();
  if (region.dimension() != m) throw DomainError("region dimension does not match body");
  if (n < 1) throw DomainError("scan needs n >= 1");
  const KernelSpec k = kernel.with_dimension(m);
  if (!c1_kernel(k)) throw CapabilityError("concavity scan needs a C1 kernel with alpha > 1");

  std::vector<VecX> pts;
  std::optional<VecX> dir;
  if (const auto* s = std::get_if<ConvexRegion::Segment>(&region.kind()); s && region.affine_dimension() == 1) {
    dir = (s->b - s->a).normalized();
    for (int i = 0; i < n; ++i) pts.push_back(s->a + (s->b - s->a) * (n == 1 ? 0.5 : i / (n - 1.0)));
  } else if (region.affine_dimension() == 0) {
    pts.push_back(region.vertices().front());
  } else {
    pts = region.samples(n);
  }

  std::vector<double> val(pts.size(), std::numeric_limits<double>::quiet_NaN());
  parallel_for(pts.size(), [&](std::size_t i) {
    if (distance_to_boundary(body, pts[i]) <= kOnBoundary) return;
    const Eigen::MatrixXd h = hessian(body, k, pts[i], cfg);
    if (dir) val[i] = dir->dot(h * *dir);
    else val[i] = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (h + h.transpose())).eigenvalues().maxCoeff();
  });

  ConcavityScan out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::isnan(val[i])) {
      std::ostringstream msg;
      msg << "sample " << i << " lies on the boundary; skipped";
      out.diagnostics.push_back(msg.str());
      continue;
    }
    ++out.evaluated;
    if (val[i] > out.worst) {
      out.worst = val[i];
      out.argworst = pts[i];
    }
    if (!(val[i] < 0.0)) out.all_negative = false;
  }
  if (out.evaluated == 0) out.all_negative = false;
  return out;
}

namespace {

struct Candidate {
  VecX x;
  double value;
};

template <class F>
double golden_argmax(const F& f, double a, double b, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 200 && b - a > tol; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? c : d;
}

// Maximizer of phi on [lo, hi] from the sign of its derivative dphi when
// smooth, by golden section otherwise. tol is in parameter units.
template <class F, class G>
double line_argmax(const F& phi, const G& dphi, bool smooth, double lo, double hi, double tol) {
  if (!(hi > lo)) return lo;
  if (smooth) {
    const double glo = dphi(lo), ghi = dphi(hi);
    if (glo <= 0.0 && ghi <= 0.0 && phi(lo) >= phi(hi)) return lo;
    if (glo >= 0.0 && ghi >= 0.0 && phi(hi) >= phi(lo)) return hi;
    if (glo > 0.0 && ghi < 0.0) {
      for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        (dphi(mid) > 0.0 ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
  }
  const double t = golden_argmax(phi, lo, hi, tol);
  const double ft = phi(t), fl = phi(lo), fh = phi(hi);
  if (ft >= fl && ft >= fh) return t;
  return fl >= fh ? lo : hi;
}

// Parameter interval {s : x + s e in polygon} of a convex counterclockwise polygon.
std::pair<double, double> polygon_chord(const std::vector<Vec2>& poly, const Vec2& x, const Vec2& e) {
  double lo = -kInf, hi = kInf;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2 edge = poly[(i + 1) % poly.size()] - a;
    // inside: cross(edge, x + s e - a) >= 0
    const double c0 = edge.x() * (x - a).y() - edge.y() * (x - a).x();
    const double c1 = edge.x() * e.y() - edge.y() * e.x();
    if (std::abs(c1) < 1e-300) continue;
    const double s = -c0 / c1;
    if (c1 > 0.0) lo = std::max(lo, s);
    else hi = std::min(hi, s);
  }
  return {std::min(lo, 0.0), std::max(hi, 0.0)};
}

}  // namespace

namespace {

std::vector<double> evaluate_values(const Body& body, const KernelSpec& k, const std::vector<VecX>& pts,
                                    const QuadratureConfig& cfg, std::vector<std::string>& diag) {
  std::vector<double> v(pts.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> err(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    try {
      v[i] = potential_value(body, k, pts[i], cfg);
    } catch (const std::exception& e) {
      err[i] = e.what();
    }
  });
  std::size_t failed = 0;
  std::string first;
  for (const auto& e : err)
    if (!e.empty() && failed++ == 0) first = e;
  if (failed > 0)
    diag.push_back(std::to_string(failed) + " grid evaluations failed and were skipped (" + first + ")");
  return v;
}

double finite_or_low(double v) { return std::isnan(v) ? -kInf : v; }

// Grid indices that are not beaten by a neighbor, best first.
std::vector<std::size_t> local_maxima(const std::vector<double>& v,
                                      const std::vector<std::vector<std::size_t>>& nbrs,
                                      int max_count) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::isnan(v[i])) continue;
    bool top = true;
    for (std::size_t j : nbrs[i]) top = top && finite_or_low(v[j]) <= v[i];
    if (top) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  if (idx.size() > static_cast<std::size_t>(max_count)) idx.resize(max_count);
  return idx;
}

struct Search {
  const Body& body;
  const KernelSpec& k;
  const CenterOptions& opts;
  bool smooth;
  std::vector<std::string>& diag;

  double value(const VecX& x) const {
    try {
      return potential_value(body, k, x, opts.quadrature);
    } catch (const std::exception&) {
      return -kInf;
    }
  }
  double slope(const VecX& x, const VecX& e) const {
    try {
      return gradient(body, k, x, opts.quadrature).dot(e);
    } catch (const std::exception&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  }

  std::vector<Candidate> segment(const VecX& a, const VecX& b) const {
    const VecX dv = b - a;
    const double len = dv.norm();
    const int g = opts.grid;
    std::vector<VecX> pts;
    std::vector<std::vector<std::size_t>> nbrs(g);
    for (int i = 0; i < g; ++i) {
      pts.push_back(a + dv * (i / (g - 1.0)));
      if (i > 0) nbrs[i].push_back(i - 1);
      if (i + 1 < g) nbrs[i].push_back(i + 1);
    }
    const auto v = evaluate_values(body, k, pts, opts.quadrature, diag);
    const auto idx = local_maxima(v, nbrs, opts.max_polish);
    std::vector<Candidate> out(idx.size());
    parallel_for(idx.size(), [&](std::size_t j) {
      const double i = static_cast<double>(idx[j]);
      auto at = [&](double t) { return VecX(a + dv * t); };
      const double t = line_argmax([&](double t) { return value(at(t)); },
                                   [&](double t) { return slope(at(t), dv); }, smooth,
                                   std::max(0.0, i - 1.0) / (g - 1.0), std::min(g - 1.0, i + 1.0) / (g - 1.0),
                                   opts.position_tol / len);
      out[j] = {at(t), value(at(t))};
    });
    return out;
  }

  std::vector<Candidate> polygon(const std::vector<Vec2>& poly) const {
    Vec2 lo = poly.front(), hi = poly.front();
    for (const auto& p : poly) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    const int g = opts.grid;
    const Vec2 step = (hi - lo) / (g - 1.0);
    const ConvexRegion region = ConvexRegion::polygon(poly);
    auto flat = [g](int i, int j) { return static_cast<std::size_t>(i) * g + j; };
    std::vector<char> inside(flat(g - 1, g - 1) + 1, 0);
    auto point = [&](int i, int j) {
      VecX z(2);
      z << lo.x() + step.x() * i, lo.y() + step.y() * j;
      return z;
    };
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) inside[flat(i, j)] = region.contains(point(i, j), 1e-12 * body.diameter());

    // coarse-to-fine: a sub-lattice first, then full resolution around its maxima
    const int stride = std::max(1, (g - 1) / 100);
    std::vector<double> v(inside.size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<char> done(inside.size(), 0);
    auto evaluate = [&](const std::vector<std::pair<int, int>>& cells) {
      std::vector<VecX> pts;
      for (const auto& [i, j] : cells) pts.push_back(point(i, j));
      const auto vals = evaluate_values(body, k, pts, opts.quadrature, diag);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        v[flat(cells[c].first, cells[c].second)] = vals[c];
        done[flat(cells[c].first, cells[c].second)] = 1;
      }
    };
    // local maxima on the lattice of spacing s among evaluated cells
    auto maxima = [&](int s, bool need_all) {
      std::vector<std::pair<int, int>> out;
      for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
          const std::size_t c = flat(i, j);
          if (!done[c] || std::isnan(v[c])) continue;
          bool top = true;
          for (int di = -s; di <= s && top; di += s)
            for (int dj = -s; dj <= s && top; dj += s) {
              const int ii = i + di, jj = j + dj;
              if ((di == 0 && dj == 0) || ii < 0 || jj < 0 || ii >= g || jj >= g || !inside[flat(ii, jj)]) continue;
              if (!done[flat(ii, jj)]) top = !need_all;
              else top = finite_or_low(v[flat(ii, jj)]) <= v[c];
            }
          if (top) out.emplace_back(i, j);
        }
      std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        return v[flat(a.first, a.second)] > v[flat(b.first, b.second)];
      });
      if (out.size() > static_cast<std::size_t>(opts.max_polish)) out.resize(opts.max_polish);
      return out;
    };
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        if (inside[flat(i, j)] && i % stride == 0 && j % stride == 0)
          cells.emplace_back(i, j);
    evaluate(cells);
    std::vector<std::pair<int, int>> seeds = maxima(stride, false);
    if (stride > 1) {
      cells.clear();
      for (const auto& [i0, j0] : seeds)
        for (int i = std::max(0, i0 - stride); i <= std::min(g - 1, i0 + stride); ++i)
          for (int j = std::max(0, j0 - stride); j <= std::min(g - 1, j0 + stride); ++j)
            if (inside[flat(i, j)] && !done[flat(i, j)]) {
              done[flat(i, j)] = 1;
              cells.emplace_back(i, j);
            }
      for (const auto& c : cells) done[flat(c.first, c.second)] = 0;
      evaluate(cells);
      seeds = maxima(1, true);
    }
    std::vector<VecX> pts;
    std::vector<std::size_t> idx;
    for (const auto& [i, j] : seeds) {
      idx.push_back(pts.size());
      pts.push_back(point(i, j));
    }
    std::vector<double> seed_values;
    for (const auto& [i, j] : seeds) seed_values.push_back(v[flat(i, j)]);
    std::vector<Candidate> out(idx.size());
    parallel_for(idx.size(), [&](std::size_t c) {
      Vec2 x = Vec2(pts[idx[c]](0), pts[idx[c]](1));
      Vec2 reach = step;
      double fx = seed_values[c];
      for (int sweep = 0; sweep < 40; ++sweep) {
        const Vec2 before = x;
        const double f_before = fx;
        for (int axis = 0; axis < 2; ++axis) {
          const Vec2 e = Vec2::Unit(axis);
          const auto [clo, chi] = polygon_chord(poly, x, e);
          auto at = [&](double s) { return VecX(x + s * e); };
          const double s = line_argmax([&](double s) { return value(at(s)); },
                                       [&](double s) { return slope(at(s), VecX(e)); }, smooth,
                                       std::max(clo, -reach(axis)), std::min(chi, reach(axis)),
                                       opts.position_tol);
          x += s * e;
        }
        fx = value(VecX(x));
        const double move = (x - before).norm();
        if (move <= opts.position_tol || (sweep >= 1 && fx <= f_before)) break;
        reach = Vec2::Constant(std::max(4.0 * move, 10.0 * opts.position_tol)).cwiseMin(step);
      }
      out[c] = {VecX(x), fx};
    });
    return out;
  }
};

// Least-squares circle through planar points: center and radius.
std::pair<Vec2, double> fit_circle(const std::vector<VecX>& pts) {
  Eigen::MatrixXd a(pts.size(), 3);
  Eigen::VectorXd rhs(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    a.row(i) << 2.0 * pts[i](0), 2.0 * pts[i](1), 1.0;
    rhs(i) = pts[i].head<2>().squaredNorm();
  }
  const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(rhs);
  const Vec2 c(sol(0), sol(1));
  return {c, std::sqrt(std::max(0.0, sol(2) + c.squaredNorm()))};
}

}  // namespace

CenterReport find_centers(const Body& body, const KernelSpec& kernel, const ConvexRegion& region,
                          const CenterOptions& opts) {
  const int m = body.dimension();
  if (region.dimension() != m) throw DomainError("region dimension does not match body");
  if (opts.grid < 3) throw DomainError("center grid needs at least 3 points per dimension");
  if (opts.max_polish < 1 || opts.continuum_min < 3) throw DomainError("invalid center options");
  validate(opts.quadrature);
  const KernelSpec k = kernel.with_dimension(m);
  const double diam = body.diameter();
  if (!check_strictly_decreasing(k, {1e-3 * diam, diam}))
    throw CapabilityError("kernel " + k.name() + " is not strictly decreasing");

  CenterReport rep;
  if (body.planar() && !body.contact_points().empty())
    rep.diagnostics.push_back(std::to_string(body.contact_points().size()) +
                              " tangential disc contacts: the boundary has cusps there");
  Search search{body, k, opts, c1_kernel(k), rep.diagnostics};
  std::vector<Candidate> cands;
  switch (region.affine_dimension()) {
    case 0: {
      const VecX x = region.vertices().front();
      cands.push_back({x, search.value(x)});
      break;
    }
    case 1: {
      const auto ends = region.vertices();
      cands = search.segment(ends[0], ends[1]);
      break;
    }
    default: {
      std::vector<Vec2> poly;
      for (const auto& v : region.vertices()) poly.emplace_back(v(0), v(1));
      cands = search.polygon(poly);
    }
  }
  std::erase_if(cands, [](const Candidate& c) { return !std::isfinite(c.value); });
  if (cands.empty()) throw ConsistencyError("no potential value could be evaluated on the region");

  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  const double best = cands.front().value;
  const double window = opts.cluster_value * std::max(std::abs(best), 1e-300);
  for (const auto& c : cands) {
    if (c.value < best - window) break;
    bool seen = false;
    for (const auto& x : rep.centers) seen = seen || (x - c.x).norm() <= opts.cluster_position * diam;
    if (seen) continue;
    rep.centers.push_back(c.x);
    rep.values.push_back(c.value);
  }
  rep.max_value = best;
  rep.diagnostics.push_back(std::to_string(cands.size()) + " local maxima polished");

  const std::size_t count = rep.centers.size();
  rep.multiplicity = count == 1 ? Multiplicity::unique : Multiplicity::finite;
  if (count >= 3 && m == 2) {
    const auto [c, r] = fit_circle(rep.centers);
    double spread = 0.0;
    for (const auto& x : rep.centers) spread = std::max(spread, std::abs((x.head<2>() - c).norm() - r));
    bool on_circle = spread <= opts.continuum_tol * diam && r > opts.cluster_position * diam;
    if (on_circle && count < static_cast<std::size_t>(opts.continuum_min)) {
      // too few grid maxima: probe the fitted circle itself
      const int n = 2 * opts.continuum_min;
      std::vector<VecX> probe;
      for (int i = 0; i < n; ++i) {
        const double th = 2.0 * std::numbers::pi * i / n;
        probe.emplace_back(VecX(c + r * Vec2(std::cos(th), std::sin(th))));
      }
      std::vector<std::string> ignore;
      const auto pv = evaluate_values(body, k, probe, opts.quadrature, ignore);
      for (std::size_t i = 0; i < probe.size(); ++i)
        on_circle = on_circle && region.contains(probe[i], opts.continuum_tol * diam) &&
                    pv[i] >= best - window;
      if (on_circle) rep.diagnostics.push_back("continuum confirmed by probing the fitted circle");
    } else if (!on_circle && count >= static_cast<std::size_t>(opts.continuum_min)) {
      rep.multiplicity = Multiplicity::inconclusive;
      rep.diagnostics.push_back("many equal maxima that do not lie on a common circle");
    }
    if (on_circle) {
      rep.multiplicity = Multiplicity::continuum_circle;
      rep.circle_center = c;
      rep.circle_radius = r;
    }
  }

  const auto [d, D] = d_D_extents(body, region);
  rep.d = d;
  rep.D = D;
  rep.certificate = uniqueness_certificate(body, k, region, {d, D});
  return rep;
}

}  // namespace bodycenters
