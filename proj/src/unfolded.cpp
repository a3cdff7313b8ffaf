#include "bodycenters/unfolded.hpp"

#include <algorithm>
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

constexpr double kInf = std::numeric_limits<double>::infinity();

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 as2(const VecX& z) { return Vec2(z(0), z(1)); }

double point_segment_distance(const VecX& z, const VecX& a, const VecX& b) {
  const VecX d = b - a;
  const double len2 = d.squaredNorm();
  const double s = len2 > 0.0 ? std::clamp((z - a).dot(d) / len2, 0.0, 1.0) : 0.0;
  return (a + s * d - z).norm();
}

std::vector<Vec2> clip(const std::vector<Vec2>& poly, const Halfplane& h) {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    const double dp = p.dot(h.v) - h.c, dq = q.dot(h.v) - h.c;
    if (dp <= 0.0) out.push_back(p);
    if ((dp <= 0.0) != (dq <= 0.0)) out.push_back(p + dp / (dp - dq) * (q - p));
  }
  return out;
}

std::vector<Vec2> box_polygon(const std::pair<Vec2, Vec2>& box) {
  const Vec2& lo = box.first;
  const Vec2& hi = box.second;
  return {lo, Vec2(hi.x(), lo.y()), hi, Vec2(lo.x(), hi.y())};
}

std::vector<Vec2> resolve(const std::vector<Halfplane>& planes, double eps) {
  std::vector<Vec2> poly = box_polygon({Vec2(-1e6, -1e6), Vec2(1e6, 1e6)});
  for (const auto& h : planes) poly = clip(poly, {h.v, h.c + eps});
  return poly;
}

}  // namespace

// ---------------------------------------------------------------- ConvexRegion

ConvexRegion ConvexRegion::point(VecX p) { return ConvexRegion(Point{std::move(p)}); }
ConvexRegion ConvexRegion::segment(VecX a, VecX b) {
  if (a.size() != b.size()) throw DomainError("segment ends differ in dimension");
  return ConvexRegion(Segment{std::move(a), std::move(b)});
}
ConvexRegion ConvexRegion::polygon(std::vector<Vec2> vertices) {
  if (vertices.size() < 3) throw DomainError("region polygon needs >= 3 vertices");
  return ConvexRegion(Polygon{std::move(vertices)});
}
ConvexRegion ConvexRegion::halfplanes(std::vector<Halfplane> planes) {
  if (resolve(planes, 0.0).empty()) throw ConsistencyError("empty half-plane intersection");
  return ConvexRegion(HalfplaneSet{std::move(planes)});
}

ConvexRegion ConvexRegion::intersect(const std::vector<Halfplane>& planes,
                                     std::pair<Vec2, Vec2> box, double collapse_tol) {
  std::vector<Vec2> poly = box_polygon(box);
  for (const auto& h : planes) {
    poly = clip(poly, {h.v, h.c + 0.25 * collapse_tol});
    if (poly.empty()) throw ConsistencyError("empty unfolded region");
  }
  // farthest pair and thickness across it decide the collapse
  Vec2 a = poly.front(), b = poly.front();
  double diam = 0.0;
  for (const auto& p : poly)
    for (const auto& q : poly)
      if ((p - q).norm() > diam) {
        diam = (p - q).norm();
        a = p;
        b = q;
      }
  if (diam <= collapse_tol) {
    Vec2 c = Vec2::Zero();
    for (const auto& p : poly) c += p;
    return point(VecX(c / static_cast<double>(poly.size())));
  }
  const Vec2 u = (b - a) / diam;
  double thick = 0.0;
  for (const auto& p : poly) thick = std::max(thick, std::abs(cross(u, p - a)));
  if (thick <= collapse_tol) {
    if (a.x() > b.x() || (a.x() == b.x() && a.y() > b.y())) std::swap(a, b);
    return segment(VecX(a), VecX(b));
  }
  std::vector<Vec2> clean;
  for (const auto& p : poly)
    if (clean.empty() || (p - clean.back()).norm() > 1e-14 * diam) clean.push_back(p);
  while (clean.size() > 1 && (clean.front() - clean.back()).norm() <= 1e-14 * diam) clean.pop_back();
  return polygon(std::move(clean));
}

int ConvexRegion::dimension() const {
  return std::visit(overloaded{
                        [](const Point& p) { return static_cast<int>(p.p.size()); },
                        [](const Segment& s) { return static_cast<int>(s.a.size()); },
                        [](const auto&) { return 2; },
                    },
                    kind_);
}

int ConvexRegion::affine_dimension() const {
  return std::visit(overloaded{
                        [](const Point&) { return 0; },
                        [](const Segment& s) { return (s.a - s.b).norm() > 0.0 ? 1 : 0; },
                        [](const auto&) { return 2; },
                    },
                    kind_);
}

bool ConvexRegion::contains(const VecX& z, double tol) const {
  if (z.size() != dimension()) throw DomainError("point dimension does not match region");
  return std::visit(overloaded{
                        [&](const Point& p) { return (z - p.p).norm() <= tol; },
                        [&](const Segment& s) { return point_segment_distance(z, s.a, s.b) <= tol; },
                        [&](const Polygon& p) {
                          const auto& v = p.vertices;
                          for (std::size_t i = 0; i < v.size(); ++i) {
                            const Vec2 e = v[(i + 1) % v.size()] - v[i];
                            if (cross(e, as2(z) - v[i]) < -tol * e.norm()) return false;
                          }
                          return true;
                        },
                        [&](const HalfplaneSet& h) {
                          for (const auto& pl : h.planes)
                            if (as2(z).dot(pl.v) - pl.c > tol) return false;
                          return true;
                        },
                    },
                    kind_);
}

std::vector<VecX> ConvexRegion::vertices() const {
  return std::visit(overloaded{
                        [](const Point& p) { return std::vector<VecX>{p.p}; },
                        [](const Segment& s) { return std::vector<VecX>{s.a, s.b}; },
                        [](const Polygon& p) {
                          std::vector<VecX> out;
                          for (const auto& v : p.vertices) out.emplace_back(v);
                          return out;
                        },
                        [](const HalfplaneSet& h) {
                          std::vector<VecX> out;
                          for (const auto& v : resolve(h.planes, 0.0)) out.emplace_back(v);
                          return out;
                        },
                    },
                    kind_);
}

double ConvexRegion::support(const VecX& v) const {
  double best = -kInf;
  for (const auto& z : vertices()) best = std::max(best, z.dot(v));
  return best;
}

double ConvexRegion::diameter() const {
  const auto vs = vertices();
  double d = 0.0;
  for (const auto& a : vs)
    for (const auto& b : vs) d = std::max(d, (a - b).norm());
  return d;
}

std::vector<VecX> ConvexRegion::samples(int n) const {
  n = std::max(n, 2);
  if (const auto* p = std::get_if<Point>(&kind_)) return {p->p};
  if (const auto* s = std::get_if<Segment>(&kind_)) {
    std::vector<VecX> out;
    for (int i = 0; i < n; ++i) out.push_back(s->a + (s->b - s->a) * (static_cast<double>(i) / (n - 1)));
    return out;
  }
  const auto vs = vertices();
  std::vector<VecX> out;
  double perim = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) perim += (vs[(i + 1) % vs.size()] - vs[i]).norm();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const VecX& a = vs[i];
    const VecX& b = vs[(i + 1) % vs.size()];
    const int k = std::max(1, static_cast<int>(std::ceil(0.5 * n * (b - a).norm() / perim)));
    for (int j = 0; j < k; ++j) out.push_back(a + (b - a) * (static_cast<double>(j) / k));
  }
  Vec2 lo(kInf, kInf), hi(-kInf, -kInf);
  for (const auto& v : vs) {
    lo = lo.cwiseMin(as2(v));
    hi = hi.cwiseMax(as2(v));
  }
  const int g = std::max(2, static_cast<int>(std::sqrt(0.5 * n)));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      VecX z(2);
      z << lo.x() + (hi.x() - lo.x()) * (i + 0.5) / g, lo.y() + (hi.y() - lo.y()) * (j + 0.5) / g;
      if (contains(z, 0.0)) out.push_back(z);
    }
  return out;
}

double hausdorff(const ConvexRegion& a, const ConvexRegion& b, int n_directions) {
  if (a.dimension() != b.dimension()) throw DomainError("regions differ in dimension");
  if (a.affine_dimension() < 2 && b.affine_dimension() < 2) {
    // distance to a convex set is convex, so the ends decide
    auto dist_to = [](const VecX& z, const ConvexRegion& r) {
      const auto v = r.vertices();
      return v.size() == 1 ? (z - v[0]).norm() : point_segment_distance(z, v[0], v[1]);
    };
    double h = 0.0;
    for (const auto& z : a.vertices()) h = std::max(h, dist_to(z, b));
    for (const auto& z : b.vertices()) h = std::max(h, dist_to(z, a));
    return h;
  }
  if (a.dimension() != 2) throw CapabilityError("hausdorff distance of polygons is planar only");
  double h = 0.0;
  for (int i = 0; i < n_directions; ++i) {
    const double th = 2.0 * std::numbers::pi * i / n_directions;
    VecX v(2);
    v << std::cos(th), std::sin(th);
    h = std::max(h, std::abs(a.support(v) - b.support(v)));
  }
  return h;
}

// ---------------------------------------------------------------- folding heights

namespace {

Vec2 perp(const Vec2& u) { return Vec2(-u.y(), u.x()); }

VecX unit_axis(int m, int i, double sign) {
  VecX e = VecX::Zero(m);
  e(i) = sign;
  return e;
}

template <typename F>
double golden_max(const F& f, double a, double b) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  double best = std::max(fc, fd);
  for (int i = 0; i < 100 && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
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
    best = std::max(best, std::max(fc, fd));
  }
  return best;
}

// Boundary points where the chord structure of a planar body changes.
std::vector<Vec2> critical_points(const Body& body) {
  std::vector<Vec2> out;
  std::visit(overloaded{
                 [&](const Polygon& p) { out = p.vertices; },
                 [&](const DiscUnion& u) {
                   out = body.contact_points();
                   for (const auto& pc : body.curve_pieces())
                     if (const auto* a = std::get_if<CurvePiece::Arc>(&pc.geometry)) {
                       out.push_back(a->center + a->radius * Vec2(std::cos(a->theta0), std::sin(a->theta0)));
                       out.push_back(a->center + a->radius * Vec2(std::cos(a->theta1), std::sin(a->theta1)));
                     }
                   (void)u;
                 },
                 [](const Annulus&) {},
                 [&](const Revolution& r) {
                   for (double t : r.profile.breakpoints())
                     for (double w : {r.profile.value_left(t), r.profile.value_right(t)}) {
                       out.emplace_back(t, w);
                       out.emplace_back(t, -w);
                     }
                 },
             },
             body.shape());
  return out;
}

// Supremum over lines parallel to u of the midpoint of the last chord.
double planar_fold(const Body& body, const Vec2& u, double tol) {
  const Vec2 w = perp(u);
  const auto [pmin, pmax] = bounding_extent(body, VecX(w));
  auto f = [&](double p) {
    const auto ch = body.line_chords(p * w, u);
    if (ch.empty()) return -kInf;
    return 0.5 * (ch.back().first + ch.back().second);
  };
  const double span = pmax - pmin;
  if (!(span > 0.0)) return f(pmin);
  const int n = std::clamp(static_cast<int>(std::ceil(4.0 * span / tol)), 512, 20000);
  std::vector<double> ps;
  for (int i = 0; i <= n; ++i) ps.push_back(pmin + span * i / n);
  const double eps = 1e-12 * span;
  for (const auto& z : critical_points(body)) {
    const double p = z.dot(w);
    for (double d : {-eps, 0.0, eps})
      if (p + d >= pmin && p + d <= pmax) ps.push_back(p + d);
  }
  std::sort(ps.begin(), ps.end());
  std::size_t k = 0;
  double best = -kInf;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double v = f(ps[i]);
    if (v > best) {
      best = v;
      k = i;
    }
  }
  const double lo = ps[k > 0 ? k - 1 : 0], hi = ps[std::min(k + 1, ps.size() - 1)];
  if (hi > lo) best = std::max(best, golden_max(f, lo, hi));
  return best;
}

double default_tol(const Body& body, double tol) { return tol > 0.0 ? tol : 1e-3 * body.diameter(); }

void require_unit(const VecX& v, int m) {
  if (v.size() != m) throw DomainError("direction dimension does not match body");
  if (std::abs(v.norm() - 1.0) > 1e-9) throw DomainError("direction must be a unit vector");
}

}  // namespace

double folding_height(const Body& body, const VecX& v, double tol) {
  require_unit(v, body.dimension());
  tol = default_tol(body, tol);
  if (body.planar()) return planar_fold(body, as2(v), tol);
  const double axial = v(0);
  const double transverse = v.tail(v.size() - 1).norm();
  // cross-sections are balls, hence symmetric and convex in transverse directions
  if (std::abs(axial) <= 1e-12) return 0.0;
  if (transverse > 1e-12)
    throw CapabilityError("oblique folding directions are not supported for m >= 3 bodies");
  return planar_fold(body.meridian(), Vec2(axial > 0 ? 1.0 : -1.0, 0.0), tol);
}

bool fold_fits_at(const Body& body, const Vec2& v, double b, int grid) {
  if (!body.planar()) throw CapabilityError("fold predicate is planar only");
  const auto ex = bounding_extent(body, unit_axis(2, 0, 1.0));
  const auto ey = bounding_extent(body, unit_axis(2, 1, 1.0));
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const Vec2 z(ex.first + (ex.second - ex.first) * (i + 0.5) / grid,
                   ey.first + (ey.second - ey.first) * (j + 0.5) / grid);
      if (z.dot(v) <= b || !body.contains2(z)) continue;
      const Vec2 r = z + 2.0 * (b - z.dot(v)) * v;
      if (!body.contains2(r)) return false;
    }
  return true;
}

bool fold_fits(const Body& body, const Vec2& v, double a, int n_heights, int grid) {
  const double top = bounding_extent(body, VecX(v)).second;
  if (a >= top) return true;
  for (int j = 0; j < n_heights; ++j) {
    const double b = a + (top - a) * j / std::max(1, n_heights - 1);
    if (!fold_fits_at(body, v, b, grid)) return false;
  }
  return true;
}

double folding_height_by_predicate(const Body& body, const Vec2& v, double tol, int grid) {
  tol = default_tol(body, tol);
  auto [lo, hi] = bounding_extent(body, VecX(v));
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (fold_fits(body, v, mid, 64, grid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::vector<Vec2> folding_directions(const Body& body, int n_directions) {
  std::vector<Vec2> dirs;
  for (int i = 0; i < n_directions; ++i) {
    const double th = 2.0 * std::numbers::pi * i / n_directions;
    dirs.emplace_back(std::cos(th), std::sin(th));
  }
  auto add = [&](Vec2 d) {
    if (!(d.norm() > 0.0)) return;
    d.normalize();
    for (const Vec2& e : {d, Vec2(-d), perp(d), Vec2(-perp(d))}) dirs.push_back(e);
  };
  std::visit(overloaded{
                 [&](const Polygon& p) {
                   const auto& v = p.vertices;
                   const std::size_t n = v.size();
                   for (std::size_t i = 0; i < n; ++i) {
                     add(v[(i + 1) % n] - v[i]);
                     const Vec2 in = (v[(i + n - 1) % n] - v[i]).normalized();
                     const Vec2 out = (v[(i + 1) % n] - v[i]).normalized();
                     add(in + out);
                   }
                 },
                 [&](const DiscUnion& u) {
                   for (const auto& a : u.discs)
                     for (const auto& b : u.discs) add(b.center - a.center);
                 },
                 [](const Annulus&) {},
                 [&](const Revolution&) { add(Vec2(1.0, 0.0)); },
             },
             body.shape());
  // l(v) is only upper semicontinuous, so rounding noise off an axis matters
  for (Vec2& d : dirs) {
    for (int k = 0; k < 2; ++k)
      if (std::abs(d[k]) < 1e-14) d[k] = 0.0;
    d.normalize();
  }
  std::sort(dirs.begin(), dirs.end(), [](const Vec2& a, const Vec2& b) {
    return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
  });
  dirs.erase(std::unique(dirs.begin(), dirs.end(),
                         [](const Vec2& a, const Vec2& b) { return (a - b).norm() < 1e-12; }),
             dirs.end());
  return dirs;
}

ConvexRegion unfolded_region(const Body& body, int n_directions, double tol) {
  tol = default_tol(body, tol);
  if (!body.planar()) {
    const int m = body.dimension();
    const double hi = folding_height(body, unit_axis(m, 0, 1.0), tol);
    const double lo = -folding_height(body, unit_axis(m, 0, -1.0), tol);
    if (hi < lo - 1e-9 * body.diameter()) throw ConsistencyError("empty unfolded region");
    if (hi - lo <= 1e-12 * body.diameter()) return ConvexRegion::point(unit_axis(m, 0, 0.5 * (lo + hi)));
    return ConvexRegion::segment(unit_axis(m, 0, lo), unit_axis(m, 0, hi));
  }
  if (n_directions < 16) throw DomainError("need >= 16 folding directions");
  const auto dirs = folding_directions(body, n_directions);
  std::vector<Halfplane> planes(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) {
    planes[i] = {dirs[i], planar_fold(body, dirs[i], tol)};
  });
  const auto ex = bounding_extent(body, unit_axis(2, 0, 1.0));
  const auto ey = bounding_extent(body, unit_axis(2, 1, 1.0));
  const double margin = 1e-6 * body.diameter();
  return ConvexRegion::intersect(planes,
                                 {Vec2(ex.first - margin, ey.first - margin),
                                  Vec2(ex.second + margin, ey.second + margin)},
                                 1e-9 * body.diameter());
}

namespace {

// Midpoint coordinate (along v) of the chord of a convex polygon through P.
double chord_midpoint(const std::vector<Vec2>& poly, const Vec2& P, const Vec2& v) {
  double lo = kInf, hi = -kInf;
  const double scale = 1e-12;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& A = poly[i];
    const Vec2 E = poly[(i + 1) % poly.size()] - A;
    const double den = cross(v, E);
    if (std::abs(den) <= scale * E.norm()) {
      if (std::abs(cross(v, A - P)) <= scale * (1.0 + (A - P).norm())) {
        for (const Vec2& q : {A, Vec2(A + E)}) {
          lo = std::min(lo, (q - P).dot(v));
          hi = std::max(hi, (q - P).dot(v));
        }
      }
      continue;
    }
    // P + s v = A + tau E
    const double tau = cross(P - A, v) / cross(E, v);
    if (tau < -scale || tau > 1.0 + scale) continue;
    const double s = cross(E, A - P) / cross(E, v);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return P.dot(v) + 0.5 * (lo + hi);
}

}  // namespace

ConvexRegion triangle_unfolded_exact(const Body& triangle) {
  const auto* poly = std::get_if<Polygon>(&triangle.shape());
  if (!poly || poly->vertices.size() != 3) throw DomainError("expected a triangle");
  const auto& v = poly->vertices;
  if (std::abs(cross(v[1] - v[0], v[2] - v[0])) <= 1e-14 * triangle.diameter() * triangle.diameter())
    throw DomainError("degenerate triangle");
  std::vector<Halfplane> planes;
  for (const auto& d : folding_directions(triangle, 0)) {
    // the midpoint is piecewise linear in the line offset, so vertices decide
    double l = -kInf;
    for (const auto& P : v) l = std::max(l, chord_midpoint(v, P, d));
    planes.push_back({d, l});
  }
  const auto ex = bounding_extent(triangle, unit_axis(2, 0, 1.0));
  const auto ey = bounding_extent(triangle, unit_axis(2, 1, 1.0));
  return ConvexRegion::intersect(planes, {Vec2(ex.first, ey.first), Vec2(ex.second, ey.second)},
                                 1e-12 * triangle.diameter());
}

std::pair<double, double> d_D_extents(const Body& body, const ConvexRegion& region, int resolution) {
  if (region.dimension() != body.dimension()) throw DomainError("region dimension does not match body");
  const auto pts = region.samples(resolution);
  std::vector<double> near(pts.size()), far(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const Vec2 z = body.planar() ? as2(pts[i]) : Vec2(pts[i](0), pts[i].tail(pts[i].size() - 1).norm());
    near[i] = body.boundary_distance(z);
    far[i] = body.farthest_boundary_distance(z);
  });
  double d = *std::min_element(near.begin(), near.end());
  double big = *std::max_element(far.begin(), far.end());
  if (const auto* s = std::get_if<ConvexRegion::Segment>(&region.kind())) {
    // polish both extremes along the segment around the best samples
    auto at = [&](double t) {
      const VecX z = s->a + t * (s->b - s->a);
      return body.planar() ? as2(z) : Vec2(z(0), z.tail(z.size() - 1).norm());
    };
    const double step = 1.0 / (static_cast<double>(pts.size()) - 1.0);
    const auto in = std::min_element(near.begin(), near.end()) - near.begin();
    const auto fa = std::max_element(far.begin(), far.end()) - far.begin();
    const double ti = static_cast<double>(in) * step, tf = static_cast<double>(fa) * step;
    d = std::min(d, -golden_max([&](double t) { return -body.boundary_distance(at(t)); },
                                std::max(0.0, ti - step), std::min(1.0, ti + step)));
    big = std::max(big, golden_max([&](double t) { return body.farthest_boundary_distance(at(t)); },
                                   std::max(0.0, tf - step), std::min(1.0, tf + step)));
  }
  return {d, big};
}

void write_folding_csv(std::ostream& out, const Body& body, int n, double tol) {
  if (!body.planar()) throw CapabilityError("folding height sweeps are planar only");
  std::vector<double> l(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double th = 2.0 * std::numbers::pi * i / n;
    l[i] = planar_fold(body, Vec2(std::cos(th), std::sin(th)), default_tol(body, tol));
  });
  out << "angle,l\n" << std::setprecision(17);
  for (int i = 0; i < n; ++i) out << 2.0 * std::numbers::pi * i / n << ',' << l[i] << '\n';
}

}  // namespace bodycenters
