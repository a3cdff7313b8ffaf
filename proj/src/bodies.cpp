#include "bodycenters/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bodycenters/detail/overloaded.hpp"
#include "bodycenters/error.hpp"
#include "bodycenters/kernels.hpp"
#include "bodycenters/quadrature.hpp"

namespace bodycenters {

using detail::overloaded;

namespace {

constexpr double kInsideTol = 1e-12;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double segment_distance(const Vec2& x, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  double s = len2 > 0.0 ? (x - a).dot(d) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (a + s * d - x).norm();
}

bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
         d4 != 0;
}

// Angle normalized into [base, base + 2 pi).
double wrap_from(double angle, double base) {
  double a = std::fmod(angle - base, kTwoPi);
  if (a < 0) a += kTwoPi;
  return base + a;
}

// Merge sorted closed intervals that overlap or touch.
std::vector<std::pair<double, double>> merge_intervals(std::vector<std::pair<double, double>> iv,
                                                       double gap = 0.0) {
  std::sort(iv.begin(), iv.end());
  std::vector<std::pair<double, double>> out;
  for (const auto& i : iv) {
    if (!out.empty() && i.first <= out.back().second + gap)
      out.back().second = std::max(out.back().second, i.second);
    else
      out.push_back(i);
  }
  return out;
}

template <typename F>
double golden_extremum(const F& f, double a, double b, bool maximize, int iters = 80) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-15 * (1.0 + std::abs(a)); ++i) {
    const bool keep_left = maximize ? fc > fd : fc < fd;
    if (keep_left) {
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
  return 0.5 * (a + b);
}

// Extremum of f over [0,1]: dense sample, then golden refinement of the best bracket.
template <typename F>
double sampled_extremum(const F& f, bool maximize, int n = 256) {
  int best = 0;
  double best_v = f(0.0);
  for (int i = 1; i <= n; ++i) {
    const double v = f(static_cast<double>(i) / n);
    if (maximize ? v > best_v : v < best_v) {
      best_v = v;
      best = i;
    }
  }
  const double lo = std::max(0.0, (best - 1.0) / n), hi = std::min(1.0, (best + 1.0) / n);
  const double s = golden_extremum(f, lo, hi, maximize);
  const double v = f(s);
  return maximize ? std::max(v, best_v) : std::min(v, best_v);
}

}  // namespace

// ---------------------------------------------------------------- Profile

Profile Profile::power(double p, double scale) {
  if (!(p >= 0.0) || !(scale >= 0.0)) throw ConstructionError("power profile needs p >= 0, scale >= 0");
  if (p == 0.0) return Profile(Constant{scale});
  return Profile(Power{p, scale});
}

Profile Profile::constant(double c) {
  if (!(c >= 0.0)) throw ConstructionError("constant profile must be >= 0");
  return Profile(Constant{c});
}

Profile Profile::sampled(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw ConstructionError("sampled profile needs >= 2 knots");
  if (knots.front().first != 0.0 || knots.back().first != 1.0)
    throw ConstructionError("sampled profile must span t in [0, 1]");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i].second >= 0.0)) throw ConstructionError("profile values must be >= 0");
    if (i > 0 && knots[i].first < knots[i - 1].first)
      throw ConstructionError("profile knots must be sorted by t");
  }
  return Profile(Sampled{std::move(knots)});
}

double Profile::Piece::t_of(double s) const {
  return t0 + (t1 - t0) * (exponent == 1.0 ? s : std::pow(s, exponent));
}

double Profile::Piece::dt_ds(double s) const {
  if (exponent == 1.0) return t1 - t0;
  return (t1 - t0) * exponent * std::pow(s, exponent - 1.0);
}

double Profile::value_left(double t) const {
  return std::visit(overloaded{
                        [&](const Power& p) { return p.scale * std::pow(std::max(t, 0.0), p.p); },
                        [&](const Constant& c) { return c.c; },
                        [&](const Sampled& s) {
                          const auto& k = s.knots;
                          if (t <= k.front().first) return k.front().second;
                          // first knot with knot.t >= t
                          auto it = std::lower_bound(k.begin(), k.end(), t,
                                                     [](const auto& kn, double v) { return kn.first < v; });
                          if (it == k.end()) return k.back().second;
                          auto prev = std::prev(it);
                          if (it->first == prev->first) return prev->second;
                          const double w = (t - prev->first) / (it->first - prev->first);
                          return prev->second + w * (it->second - prev->second);
                        },
                    },
                    kind_);
}

double Profile::value_right(double t) const {
  return std::visit(overloaded{
                        [&](const Power& p) { return p.scale * std::pow(std::max(t, 0.0), p.p); },
                        [&](const Constant& c) { return c.c; },
                        [&](const Sampled& s) {
                          const auto& k = s.knots;
                          if (t >= k.back().first) return k.back().second;
                          // first knot with knot.t > t
                          auto it = std::upper_bound(k.begin(), k.end(), t,
                                                     [](double v, const auto& kn) { return v < kn.first; });
                          if (it == k.begin()) return k.front().second;
                          auto prev = std::prev(it);
                          const double w = (t - prev->first) / (it->first - prev->first);
                          return prev->second + w * (it->second - prev->second);
                        },
                    },
                    kind_);
}

double Profile::value(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  return std::max(value_left(t), value_right(t));
}

double Profile::derivative(double t) const {
  return std::visit(overloaded{
                        [&](const Power& p) {
                          return t > 0.0 ? p.scale * p.p * std::pow(t, p.p - 1.0)
                                         : (p.p == 1.0 ? p.scale : 0.0);
                        },
                        [&](const Constant&) { return 0.0; },
                        [&](const Sampled& s) {
                          const auto& k = s.knots;
                          auto it = std::upper_bound(k.begin(), k.end(), t,
                                                     [](double v, const auto& kn) { return v < kn.first; });
                          if (it == k.end()) it = std::prev(k.end());
                          if (it == k.begin()) it = std::next(it);
                          auto prev = std::prev(it);
                          if (it->first == prev->first) return 0.0;
                          return (it->second - prev->second) / (it->first - prev->first);
                        },
                    },
                    kind_);
}

std::vector<Profile::Piece> Profile::pieces() const {
  return std::visit(overloaded{
                        [](const Power& p) {
                          const double e = p.p < 1.0 ? 1.0 / p.p : 1.0;
                          return std::vector<Piece>{{0.0, 1.0, e}};
                        },
                        [](const Constant&) { return std::vector<Piece>{{0.0, 1.0, 1.0}}; },
                        [](const Sampled& s) {
                          std::vector<Piece> out;
                          for (std::size_t i = 0; i + 1 < s.knots.size(); ++i)
                            if (s.knots[i + 1].first > s.knots[i].first)
                              out.push_back({s.knots[i].first, s.knots[i + 1].first, 1.0});
                          return out;
                        },
                    },
                    kind_);
}

std::vector<Profile::Jump> Profile::jumps() const {
  std::vector<Jump> out;
  if (const auto* s = std::get_if<Sampled>(&kind_)) {
    const auto& k = s->knots;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      if (k[i + 1].first != k[i].first) continue;
      const double t = k[i].first;
      if (t <= 0.0 || t >= 1.0) continue;
      const double l = value_left(t), r = value_right(t);
      if (l != r) out.push_back({t, l, r});
    }
  }
  return out;
}

std::vector<double> Profile::breakpoints() const {
  std::vector<double> out{0.0, 1.0};
  if (const auto* s = std::get_if<Sampled>(&kind_))
    for (const auto& kn : s->knots) out.push_back(kn.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double Profile::max_value() const {
  return std::visit(overloaded{
                        [](const Power& p) { return p.scale; },
                        [](const Constant& c) { return c.c; },
                        [](const Sampled& s) {
                          double mx = 0.0;
                          for (const auto& k : s.knots) mx = std::max(mx, k.second);
                          return mx;
                        },
                    },
                    kind_);
}

namespace {

// Discrete concavity of g over the knots: successive slopes must not increase.
template <typename G>
bool knots_concave(const std::vector<std::pair<double, double>>& knots, G g) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (i + 1 < knots.size() && knots[i + 1].first == knots[i].first) {
      const double t = knots[i].first;
      // a jump in the interior breaks concavity; at an end it is a base face
      if (t > 0.0 && t < 1.0 && knots[i + 1].second != knots[i].second) return false;
    }
    if (!pts.empty() && pts.back().first == knots[i].first) continue;
    pts.emplace_back(knots[i].first, g(knots[i].second));
  }
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double s0 = (pts[i].second - pts[i - 1].second) / (pts[i].first - pts[i - 1].first);
    const double s1 = (pts[i + 1].second - pts[i].second) / (pts[i + 1].first - pts[i].first);
    if (s1 > s0 + 1e-12) return false;
  }
  return true;
}

}  // namespace

bool Profile::concave() const { return root_concave(2); }

bool Profile::root_concave(int m) const {
  return std::visit(overloaded{
                        [&](const Power& p) { return p.p * (m - 1) <= 1.0 + 1e-12; },
                        [](const Constant&) { return true; },
                        [&](const Sampled& s) {
                          return knots_concave(s.knots,
                                               [&](double w) { return std::pow(w, m - 1); });
                        },
                    },
                    kind_);
}

// ---------------------------------------------------------------- CurvePiece

CurvePiece::Sample CurvePiece::eval(double s, const Profile* profile) const {
  return std::visit(
      overloaded{
          [&](const Segment& g) {
            const Vec2 d = g.b - g.a;
            return Sample{g.a + s * d, Vec2(d.y(), -d.x())};
          },
          [&](const Arc& g) {
            const double th = g.theta0 + s * (g.theta1 - g.theta0);
            const Vec2 u(std::cos(th), std::sin(th));
            return Sample{g.center + g.radius * u,
                          g.orientation * g.radius * (g.theta1 - g.theta0) * u};
          },
          [&](const Graph& g) {
            const double t = g.piece.t_of(s);
            const double dt = g.piece.dt_ds(s);
            double w, wp;
            if (std::holds_alternative<Profile::Sampled>(profile->kind())) {
              const double w0 = profile->value_right(g.piece.t0);
              const double w1 = profile->value_left(g.piece.t1);
              wp = (w1 - w0) / (g.piece.t1 - g.piece.t0);
              w = w0 + (t - g.piece.t0) * wp;
            } else {
              w = profile->value(t);
              wp = profile->derivative(t);
            }
            return Sample{Vec2(t, g.side * w), Vec2(-wp * dt, g.side * dt)};
          },
      },
      geometry);
}

// ---------------------------------------------------------------- Body

namespace {

double signed_area(const std::vector<Vec2>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * a;
}

void validate_polygon(std::vector<Vec2>& v) {
  if (v.size() < 3) throw ConstructionError("polygon needs >= 3 vertices");
  for (const auto& p : v)
    if (!p.allFinite()) throw ConstructionError("polygon vertex is not finite");
  double scale = 0.0;
  for (const auto& p : v) scale = std::max(scale, p.norm());
  const double area = signed_area(v);
  if (std::abs(area) <= 1e-14 * std::max(1.0, scale * scale))
    throw ConstructionError("degenerate polygon (zero area)");
  if (area < 0) std::reverse(v.begin(), v.end());
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((v[(i + 1) % n] - v[i]).norm() == 0.0) throw ConstructionError("repeated polygon vertex");
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        throw ConstructionError("polygon is self-intersecting");
    }
  }
}

// Profile samples used for revolution extents.
std::vector<std::pair<double, double>> profile_samples(const Profile& p, int n = 512) {
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    out.emplace_back(t, p.value(t));
  }
  for (double t : p.breakpoints()) {
    out.emplace_back(t, p.value_left(t));
    out.emplace_back(t, p.value_right(t));
  }
  return out;
}

double ball_volume(int n) { return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0); }

}  // namespace

Body::Body(Shape shape) : shape_(std::move(shape)) {
  std::visit(overloaded{
                 [&](Polygon& p) {
                   validate_polygon(p.vertices);
                   for (const auto& a : p.vertices)
                     for (const auto& b : p.vertices) diameter_ = std::max(diameter_, (a - b).norm());
                 },
                 [&](DiscUnion& u) {
                   if (u.discs.empty()) throw ConstructionError("disc union needs >= 1 disc");
                   for (const auto& d : u.discs) {
                     if (!(d.radius > 0.0) || !d.center.allFinite())
                       throw ConstructionError("disc radius must be > 0");
                   }
                   for (const auto& a : u.discs)
                     for (const auto& b : u.discs)
                       diameter_ = std::max(diameter_, (a.center - b.center).norm() + a.radius + b.radius);
                 },
                 [&](Annulus& a) {
                   if (!(a.r_in > 0.0) || !(a.r_out > a.r_in))
                     throw ConstructionError("annulus needs 0 < r_in < r_out");
                   diameter_ = 2.0 * a.r_out;
                 },
                 [&](Revolution& r) {
                   if (r.m < 2) throw ConstructionError("revolution dimension must be >= 2");
                   if (!(r.profile.max_value() > 0.0))
                     throw ConstructionError("revolution profile is identically zero");
                   const auto s = profile_samples(r.profile, 256);
                   for (const auto& a : s)
                     for (const auto& b : s)
                       diameter_ = std::max(diameter_, std::hypot(a.first - b.first, a.second + b.second));
                 },
             },
             shape_);
  build_pieces();
}

Body Body::polygon(std::vector<Vec2> vertices) { return Body(Polygon{std::move(vertices)}); }
Body Body::disc(Vec2 center, double radius) { return Body(DiscUnion{{Disc{center, radius}}}); }
Body Body::disc_union(std::vector<Disc> discs) { return Body(DiscUnion{std::move(discs)}); }
Body Body::annulus(double r_in, double r_out, Vec2 center) {
  return Body(Annulus{r_in, r_out, center});
}
Body Body::revolution(int m, Profile profile) { return Body(Revolution{m, std::move(profile)}); }

int Body::dimension() const {
  if (const auto* r = as_revolution()) return r->m;
  return 2;
}

const Profile* Body::profile() const {
  if (const auto* r = as_revolution()) return &r->profile;
  return nullptr;
}

void Body::build_pieces() {
  pieces_.clear();
  contacts_.clear();
  std::visit(
      overloaded{
          [&](const Polygon& p) {
            const auto& v = p.vertices;
            for (std::size_t i = 0; i < v.size(); ++i)
              pieces_.push_back({CurvePiece::Segment{v[i], v[(i + 1) % v.size()]}});
          },
          [&](const DiscUnion& u) {
            const auto& d = u.discs;
            for (std::size_t i = 0; i < d.size(); ++i) {
              std::vector<std::pair<double, double>> covered;
              bool hidden = false;
              for (std::size_t j = 0; j < d.size() && !hidden; ++j) {
                if (j == i) continue;
                const Vec2 off = d[j].center - d[i].center;
                const double dist = off.norm();
                const double ri = d[i].radius, rj = d[j].radius;
                const bool same = dist == 0.0 && ri == rj;
                if (same) {
                  hidden = j < i;
                  continue;
                }
                if (dist + ri <= rj) {
                  hidden = true;
                } else if (dist >= ri + rj || dist + rj <= ri) {
                  if (std::abs(dist - ri - rj) <= 1e-12 * (ri + rj))
                    contacts_.push_back(d[i].center + off * (ri / dist));
                } else {
                  const double phi = std::atan2(off.y(), off.x());
                  const double c = (ri * ri + dist * dist - rj * rj) / (2.0 * ri * dist);
                  const double beta = std::acos(std::clamp(c, -1.0, 1.0));
                  const double lo = wrap_from(phi - beta, 0.0);
                  const double hi = lo + 2.0 * beta;
                  if (hi > kTwoPi) {
                    covered.emplace_back(lo, kTwoPi);
                    covered.emplace_back(0.0, hi - kTwoPi);
                  } else {
                    covered.emplace_back(lo, hi);
                  }
                }
              }
              if (hidden) continue;
              covered = merge_intervals(covered);
              double start = 0.0;
              std::vector<std::pair<double, double>> free_arcs;
              for (const auto& c : covered) {
                if (c.first > start) free_arcs.emplace_back(start, c.first);
                start = std::max(start, c.second);
              }
              if (start < kTwoPi) free_arcs.emplace_back(start, kTwoPi);
              // join the arc wrapping through angle 0
              if (free_arcs.size() >= 2 && free_arcs.front().first == 0.0 &&
                  free_arcs.back().second == kTwoPi) {
                free_arcs.front().first = free_arcs.back().first - kTwoPi;
                free_arcs.pop_back();
              }
              for (const auto& a : free_arcs)
                if (a.second > a.first)
                  pieces_.push_back(
                      {CurvePiece::Arc{d[i].center, d[i].radius, a.first, a.second, 1.0}});
            }
            // tangent contacts are found from both sides
            std::vector<Vec2> unique_contacts;
            for (const auto& c : contacts_) {
              bool seen = false;
              for (const auto& u2 : unique_contacts) seen = seen || (u2 - c).norm() <= 1e-9;
              if (!seen) unique_contacts.push_back(c);
            }
            contacts_ = std::move(unique_contacts);
          },
          [&](const Annulus& a) {
            pieces_.push_back({CurvePiece::Arc{a.center, a.r_out, 0.0, kTwoPi, 1.0}});
            pieces_.push_back({CurvePiece::Arc{a.center, a.r_in, 0.0, kTwoPi, -1.0}});
          },
          [&](const Revolution& r) {
            const Profile& p = r.profile;
            for (const auto& pc : p.pieces()) {
              pieces_.push_back({CurvePiece::Graph{pc, 1.0}});
              pieces_.push_back({CurvePiece::Graph{pc, -1.0}});
            }
            const double w0 = p.value_right(0.0), w1 = p.value_left(1.0);
            if (w0 > 0.0) pieces_.push_back({CurvePiece::Segment{Vec2(0.0, w0), Vec2(0.0, -w0)}});
            if (w1 > 0.0) pieces_.push_back({CurvePiece::Segment{Vec2(1.0, -w1), Vec2(1.0, w1)}});
            for (const auto& j : p.jumps()) {
              pieces_.push_back({CurvePiece::Segment{Vec2(j.t, j.right), Vec2(j.t, j.left)}});
              pieces_.push_back({CurvePiece::Segment{Vec2(j.t, -j.left), Vec2(j.t, -j.right)}});
            }
          },
      },
      shape_);
}

bool Body::contains2(const Vec2& x) const {
  return std::visit(
      overloaded{
          [&](const Polygon& p) {
            const auto& v = p.vertices;
            bool inside = false;
            for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
              if (segment_distance(x, v[j], v[i]) <= kInsideTol) return true;
              if ((v[i].y() > x.y()) != (v[j].y() > x.y())) {
                const double xc =
                    v[j].x() + (x.y() - v[j].y()) * (v[i].x() - v[j].x()) / (v[i].y() - v[j].y());
                if (x.x() < xc) inside = !inside;
              }
            }
            return inside;
          },
          [&](const DiscUnion& u) {
            for (const auto& d : u.discs)
              if ((x - d.center).norm() <= d.radius + kInsideTol) return true;
            return false;
          },
          [&](const Annulus& a) {
            const double r = (x - a.center).norm();
            return r >= a.r_in - kInsideTol && r <= a.r_out + kInsideTol;
          },
          [&](const Revolution& r) {
            if (x.x() < -kInsideTol || x.x() > 1.0 + kInsideTol) return false;
            return std::abs(x.y()) <= r.profile.value(std::clamp(x.x(), 0.0, 1.0)) + kInsideTol;
          },
      },
      shape_);
}

bool Body::contains(const VecX& x) const {
  if (x.size() != dimension()) throw DomainError("point dimension does not match body");
  if (planar()) return contains2(Vec2(x(0), x(1)));
  return contains2(Vec2(x(0), x.tail(x.size() - 1).norm()));
}

double Body::volume() const {
  return std::visit(
      overloaded{
          [&](const Polygon& p) { return signed_area(p.vertices); },
          [&](const DiscUnion&) {
            const auto br = slab_breaks();
            auto len = [&](double y1) {
              double s = 0.0;
              for (const auto& iv : cross_section(y1)) s += iv.second - iv.first;
              return s;
            };
            return quad::integrate_adaptive(len, br.front(), br.back(), 1e-13, br);
          },
          [&](const Annulus& a) {
            return std::numbers::pi * (a.r_out * a.r_out - a.r_in * a.r_in);
          },
          [&](const Revolution& r) {
            const auto br = r.profile.breakpoints();
            auto f = [&](double t) { return std::pow(r.profile.value(t), r.m - 1); };
            return ball_volume(r.m - 1) * quad::integrate_adaptive(f, 0.0, 1.0, 1e-13, br);
          },
      },
      shape_);
}

double Body::diameter() const { return diameter_; }

bool Body::convex() const {
  return std::visit(
      overloaded{
          [&](const Polygon& p) {
            const auto& v = p.vertices;
            const std::size_t n = v.size();
            for (std::size_t i = 0; i < n; ++i) {
              const Vec2 e0 = v[(i + 1) % n] - v[i], e1 = v[(i + 2) % n] - v[(i + 1) % n];
              if (cross(e0, e1) < -1e-12 * e0.norm() * e1.norm()) return false;
            }
            return true;
          },
          [&](const DiscUnion& u) {
            for (const auto& a : u.discs) {
              bool all = true;
              for (const auto& b : u.discs)
                all = all && (a.center - b.center).norm() + b.radius <= a.radius + 1e-12;
              if (all) return true;
            }
            return false;
          },
          [](const Annulus&) { return false; },
          [](const Revolution& r) { return r.profile.concave(); },
      },
      shape_);
}

std::vector<double> Body::slab_breaks() const {
  std::vector<double> out = std::visit(
      overloaded{
          [](const Polygon& p) {
            std::vector<double> b;
            for (const auto& v : p.vertices) b.push_back(v.x());
            return b;
          },
          [](const DiscUnion& u) {
            std::vector<double> b;
            for (const auto& d : u.discs) {
              b.push_back(d.center.x() - d.radius);
              b.push_back(d.center.x() + d.radius);
            }
            for (std::size_t i = 0; i < u.discs.size(); ++i)
              for (std::size_t j = i + 1; j < u.discs.size(); ++j) {
                const auto& a = u.discs[i];
                const auto& c = u.discs[j];
                const Vec2 off = c.center - a.center;
                const double dist = off.norm();
                if (dist == 0.0 || dist > a.radius + c.radius ||
                    dist < std::abs(a.radius - c.radius))
                  continue;
                const double x = (a.radius * a.radius - c.radius * c.radius + dist * dist) / (2 * dist);
                const double h = std::sqrt(std::max(0.0, a.radius * a.radius - x * x));
                const Vec2 base = a.center + off * (x / dist);
                const Vec2 perp(-off.y() / dist, off.x() / dist);
                b.push_back((base + h * perp).x());
                b.push_back((base - h * perp).x());
              }
            return b;
          },
          [](const Annulus& a) {
            return std::vector<double>{a.center.x() - a.r_out, a.center.x() - a.r_in,
                                       a.center.x() + a.r_in, a.center.x() + a.r_out};
          },
          [](const Revolution& r) { return r.profile.breakpoints(); },
      },
      shape_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<double, double>> Body::cross_section(double y1) const {
  return std::visit(
      overloaded{
          [&](const Polygon&) { return line_chords(Vec2(y1, 0.0), Vec2(0.0, 1.0)); },
          [&](const DiscUnion& u) {
            std::vector<std::pair<double, double>> iv;
            for (const auto& d : u.discs) {
              const double dx = y1 - d.center.x();
              if (std::abs(dx) > d.radius) continue;
              const double h = std::sqrt(d.radius * d.radius - dx * dx);
              iv.emplace_back(d.center.y() - h, d.center.y() + h);
            }
            return merge_intervals(iv);
          },
          [&](const Annulus& a) {
            std::vector<std::pair<double, double>> iv;
            const double dx = y1 - a.center.x();
            if (std::abs(dx) > a.r_out) return iv;
            const double ho = std::sqrt(a.r_out * a.r_out - dx * dx);
            const double cy = a.center.y();
            if (std::abs(dx) < a.r_in) {
              const double hi = std::sqrt(a.r_in * a.r_in - dx * dx);
              iv.emplace_back(cy - ho, cy - hi);
              iv.emplace_back(cy + hi, cy + ho);
            } else {
              iv.emplace_back(cy - ho, cy + ho);
            }
            return iv;
          },
          [&](const Revolution& r) {
            std::vector<std::pair<double, double>> iv;
            if (y1 < 0.0 || y1 > 1.0) return iv;
            const double w = r.profile.value(y1);
            iv.emplace_back(-w, w);
            return iv;
          },
      },
      shape_);
}

std::vector<std::pair<double, double>> Body::line_chords(const Vec2& p, const Vec2& u) const {
  const double uu = u.squaredNorm();
  if (!(uu > 0.0)) throw DomainError("line direction must be nonzero");
  auto disc_chord = [&](const Vec2& c, double r) -> std::optional<std::pair<double, double>> {
    const Vec2 q = p - c;
    const double b = q.dot(u) / uu;
    const double disc = b * b - (q.squaredNorm() - r * r) / uu;
    if (disc < 0.0) return std::nullopt;
    const double s = std::sqrt(disc);
    return std::make_pair(-b - s, -b + s);
  };
  return std::visit(
      overloaded{
          [&](const Polygon& poly) {
            const auto& v = poly.vertices;
            // vertices within rounding of the line count as on it, edges along it are added whole
            auto side = [&](const Vec2& a) {
              const double d = cross(u, a - p);
              return std::abs(d) <= 1e-13 * std::sqrt(uu) * (1.0 + (a - p).norm()) ? 0.0 : d;
            };
            std::vector<double> hits;
            std::vector<std::pair<double, double>> out;
            for (std::size_t i = 0; i < v.size(); ++i) {
              const Vec2& a = v[i];
              const Vec2& b = v[(i + 1) % v.size()];
              const double da = side(a), db = side(b);
              const double sa = (a - p).dot(u) / uu, sb = (b - p).dot(u) / uu;
              if (da == 0.0 && db == 0.0) out.emplace_back(std::min(sa, sb), std::max(sa, sb));
              if ((da > 0) == (db > 0)) continue;
              const double w = da / (da - db);
              hits.push_back(w == 0.0 ? sa : w == 1.0 ? sb : (a + w * (b - a) - p).dot(u) / uu);
            }
            std::sort(hits.begin(), hits.end());
            for (std::size_t i = 0; i + 1 < hits.size(); i += 2) out.emplace_back(hits[i], hits[i + 1]);
            return merge_intervals(out);
          },
          [&](const DiscUnion& un) {
            std::vector<std::pair<double, double>> out;
            for (const auto& d : un.discs)
              if (auto c = disc_chord(d.center, d.radius)) out.push_back(*c);
            return merge_intervals(out);
          },
          [&](const Annulus& a) {
            std::vector<std::pair<double, double>> out;
            auto outer = disc_chord(a.center, a.r_out);
            if (!outer) return out;
            auto inner = disc_chord(a.center, a.r_in);
            if (!inner || inner->second <= inner->first) {
              out.push_back(*outer);
            } else {
              out.emplace_back(outer->first, inner->first);
              out.emplace_back(inner->second, outer->second);
            }
            return out;
          },
          [&](const Revolution& r) {
            // crossings of the line with the meridian boundary, paired up
            const Profile* prof = &r.profile;
            auto side = [&](const Vec2& q) { return cross(u, q - p); };
            std::vector<double> hits;
            auto hit = [&](const Vec2& q) { hits.push_back((q - p).dot(u) / uu); };
            for (const auto& pc : pieces_) {
              const int n = std::holds_alternative<CurvePiece::Segment>(pc.geometry) ? 1 : 64;
              Vec2 prev = pc.eval(0.0, prof).point;
              for (int i = 1; i <= n; ++i) {
                double a = static_cast<double>(i - 1) / n, b = static_cast<double>(i) / n;
                const Vec2 cur = pc.eval(b, prof).point;
                const double da = side(prev), db = side(cur);
                if ((da > 0) != (db > 0)) {
                  if (n == 1) {
                    hit(prev + da / (da - db) * (cur - prev));
                  } else {
                    const bool a_pos = da > 0;
                    for (int it = 0; it < 60; ++it) {
                      const double mid = 0.5 * (a + b);
                      if ((side(pc.eval(mid, prof).point) > 0) == a_pos) a = mid; else b = mid;
                    }
                    hit(pc.eval(0.5 * (a + b), prof).point);
                  }
                }
                prev = cur;
              }
            }
            std::sort(hits.begin(), hits.end());
            std::vector<std::pair<double, double>> out;
            for (std::size_t i = 0; i + 1 < hits.size(); i += 2) out.emplace_back(hits[i], hits[i + 1]);
            return merge_intervals(out);
          },
      },
      shape_);
}

namespace {

double arc_angle_inside(double angle, const CurvePiece::Arc& a) {
  return wrap_from(angle, a.theta0) <= a.theta1;
}

}  // namespace

double Body::boundary_distance(const Vec2& x) const {
  double best = std::numeric_limits<double>::infinity();
  const Profile* prof = profile();
  for (const auto& pc : pieces_) {
    const double d = std::visit(
        overloaded{
            [&](const CurvePiece::Segment& s) { return segment_distance(x, s.a, s.b); },
            [&](const CurvePiece::Arc& a) {
              const Vec2 q = x - a.center;
              const double ang = std::atan2(q.y(), q.x());
              if (q.norm() > 0.0 && arc_angle_inside(ang, a)) return std::abs(q.norm() - a.radius);
              const Vec2 p0 = a.center + a.radius * Vec2(std::cos(a.theta0), std::sin(a.theta0));
              const Vec2 p1 = a.center + a.radius * Vec2(std::cos(a.theta1), std::sin(a.theta1));
              return std::min((x - p0).norm(), (x - p1).norm());
            },
            [&](const CurvePiece::Graph&) {
              return sampled_extremum([&](double s) { return (pc.eval(s, prof).point - x).norm(); },
                                      false, 128);
            },
        },
        pc.geometry);
    best = std::min(best, d);
  }
  return best;
}

double Body::farthest_boundary_distance(const Vec2& x) const {
  double best = 0.0;
  const Profile* prof = profile();
  for (const auto& pc : pieces_) {
    const double d = std::visit(
        overloaded{
            [&](const CurvePiece::Segment& s) { return std::max((x - s.a).norm(), (x - s.b).norm()); },
            [&](const CurvePiece::Arc& a) {
              const Vec2 q = x - a.center;
              const double ang = std::atan2(-q.y(), -q.x());
              if (q.norm() == 0.0 || arc_angle_inside(ang, a)) return q.norm() + a.radius;
              const Vec2 p0 = a.center + a.radius * Vec2(std::cos(a.theta0), std::sin(a.theta0));
              const Vec2 p1 = a.center + a.radius * Vec2(std::cos(a.theta1), std::sin(a.theta1));
              return std::max((x - p0).norm(), (x - p1).norm());
            },
            [&](const CurvePiece::Graph&) {
              return sampled_extremum([&](double s) { return (pc.eval(s, prof).point - x).norm(); },
                                      true, 128);
            },
        },
        pc.geometry);
    best = std::max(best, d);
  }
  return best;
}

Body Body::meridian() const {
  if (const auto* r = as_revolution()) return Body(Revolution{2, r->profile});
  return *this;
}

// ---------------------------------------------------------------- free functions

bool contains(const Body& body, const VecX& x) { return body.contains(x); }

double piece_length(const CurvePiece& pc, const Profile* prof) {
  return std::visit(overloaded{
                        [](const CurvePiece::Segment& s) { return (s.b - s.a).norm(); },
                        [](const CurvePiece::Arc& a) { return a.radius * (a.theta1 - a.theta0); },
                        [&](const CurvePiece::Graph&) {
                          double len = 0.0;
                          Vec2 prev = pc.eval(0.0, prof).point;
                          for (int i = 1; i <= 64; ++i) {
                            const Vec2 q = pc.eval(i / 64.0, prof).point;
                            len += (q - prev).norm();
                            prev = q;
                          }
                          return len;
                        },
                    },
                    pc.geometry);
}

std::vector<CurvePiece> upper_meridian(const Body& body) {
  std::vector<CurvePiece> upper;
  for (const auto& pc : body.curve_pieces()) {
    if (const auto* g = std::get_if<CurvePiece::Graph>(&pc.geometry)) {
      if (g->side > 0) upper.push_back(pc);
    } else if (const auto* s = std::get_if<CurvePiece::Segment>(&pc.geometry)) {
      const Vec2 a = s->a.y() < 0 ? Vec2(s->a.x(), 0.0) : s->a;
      const Vec2 b = s->b.y() < 0 ? Vec2(s->b.x(), 0.0) : s->b;
      if ((b - a).norm() > 0.0) upper.push_back({CurvePiece::Segment{a, b}});
    }
  }
  return upper;
}

namespace {

struct MeridianNode {
  Vec2 point;
  Vec2 normal;
  double weight;
};

// Gauss-Legendre panels along the given pieces, about `count` nodes in total.
std::vector<MeridianNode> curve_nodes(const std::vector<CurvePiece>& pieces, const Profile* prof,
                                      int count) {
  constexpr int kOrder = 8;
  const auto& rule = quad::gauss_legendre(kOrder);
  std::vector<double> lengths;
  double total = 0.0;
  for (const auto& pc : pieces) {
    lengths.push_back(piece_length(pc, prof));
    total += lengths.back();
  }
  std::vector<MeridianNode> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (lengths[i] <= 0.0) continue;
    const int panels = std::max(1, static_cast<int>(std::ceil(count * lengths[i] / total / kOrder)));
    for (int k = 0; k < panels; ++k) {
      for (int q = 0; q < kOrder; ++q) {
        const double s = (k + 0.5 * (1.0 + rule.nodes[q])) / panels;
        const auto smp = pieces[i].eval(s, prof);
        const double speed = smp.normal_speed.norm();
        if (!(speed > 0.0)) continue;
        out.push_back({smp.point, smp.normal_speed / speed, speed * 0.5 * rule.weights[q] / panels});
      }
    }
  }
  return out;
}

}  // namespace

std::vector<BoundaryElement> boundary_elements(const Body& body, int resolution) {
  if (resolution < 8) throw DomainError("boundary resolution must be >= 8");
  const Profile* prof = body.profile();
  std::vector<BoundaryElement> out;
  if (body.planar()) {
    for (const auto& n : curve_nodes(body.curve_pieces(), prof, resolution)) {
      out.push_back({VecX(n.point), VecX(n.normal), n.weight});
    }
    return out;
  }
  if (body.dimension() != 3)
    throw CapabilityError("boundary elements are built only for m <= 3 bodies");
  const auto upper = upper_meridian(body);
  const int n_theta = std::max(8, static_cast<int>(std::ceil(std::sqrt(resolution))));
  const auto nodes = curve_nodes(upper, prof, std::max(8, resolution / n_theta));
  for (int k = 0; k < n_theta; ++k) {
    const double th = kTwoPi * (k + 0.5) / n_theta;
    const double c = std::cos(th), s = std::sin(th);
    for (const auto& n : nodes) {
      if (!(n.point.y() > 0.0)) continue;
      VecX p(3), nv(3);
      p << n.point.x(), n.point.y() * c, n.point.y() * s;
      nv << n.normal.x(), n.normal.y() * c, n.normal.y() * s;
      out.push_back({p, nv, n.weight * n.point.y() * kTwoPi / n_theta});
    }
  }
  return out;
}

VecX centroid(const Body& body) {
  return std::visit(
      overloaded{
          [](const Polygon& p) {
            const auto& v = p.vertices;
            Vec2 c = Vec2::Zero();
            double a = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
              const Vec2& p0 = v[i];
              const Vec2& p1 = v[(i + 1) % v.size()];
              const double w = cross(p0, p1);
              a += w;
              c += w * (p0 + p1);
            }
            return VecX(c / (3.0 * a));
          },
          [&](const DiscUnion&) {
            const auto br = body.slab_breaks();
            auto moments = [&](double y1) {
              Eigen::Vector3d m = Eigen::Vector3d::Zero();
              for (const auto& iv : body.cross_section(y1)) {
                const double len = iv.second - iv.first;
                m += Eigen::Vector3d(len, y1 * len, 0.5 * (iv.second * iv.second - iv.first * iv.first));
              }
              return m;
            };
            const Eigen::Vector3d m = quad::integrate_adaptive(moments, br.front(), br.back(), 1e-13, br);
            return VecX(Vec2(m(1) / m(0), m(2) / m(0)));
          },
          [](const Annulus& a) { return VecX(a.center); },
          [](const Revolution& r) {
            const auto br = r.profile.breakpoints();
            auto f = [&](double t) {
              const double w = std::pow(r.profile.value(t), r.m - 1);
              return Vec2(w, t * w);
            };
            const Vec2 m = quad::integrate_adaptive(f, 0.0, 1.0, 1e-13, br);
            VecX c = VecX::Zero(r.m);
            c(0) = m(1) / m(0);
            return c;
          },
      },
      body.shape());
}

VecX reflect(const VecX& x, const VecX& v, double b) {
  if (x.size() != v.size()) throw DomainError("reflect: dimension mismatch");
  if (std::abs(v.norm() - 1.0) > 1e-9) throw DomainError("reflect: direction must be a unit vector");
  return x + 2.0 * (b - x.dot(v)) * v;
}

std::pair<double, double> bounding_extent(const Body& body, const VecX& v) {
  if (v.size() != body.dimension()) throw DomainError("direction dimension does not match body");
  if (std::abs(v.norm() - 1.0) > 1e-9) throw DomainError("direction must be a unit vector");
  return std::visit(
      overloaded{
          [&](const Polygon& p) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (const auto& q : p.vertices) {
              const double h = q.dot(Vec2(v(0), v(1)));
              lo = std::min(lo, h);
              hi = std::max(hi, h);
            }
            return std::make_pair(lo, hi);
          },
          [&](const DiscUnion& u) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (const auto& d : u.discs) {
              const double h = d.center.dot(Vec2(v(0), v(1)));
              lo = std::min(lo, h - d.radius);
              hi = std::max(hi, h + d.radius);
            }
            return std::make_pair(lo, hi);
          },
          [&](const Annulus& a) {
            const double h = a.center.dot(Vec2(v(0), v(1)));
            return std::make_pair(h - a.r_out, h + a.r_out);
          },
          [&](const Revolution& r) {
            const double v1 = v(0);
            const double vb = v.tail(v.size() - 1).norm();
            auto upper = [&](double t) { return t * v1 + r.profile.value(t) * vb; };
            auto lower = [&](double t) { return t * v1 - r.profile.value(t) * vb; };
            double hi = sampled_extremum(upper, true, 512);
            double lo = sampled_extremum(lower, false, 512);
            for (double t : r.profile.breakpoints()) {
              hi = std::max(hi, upper(t));
              lo = std::min(lo, lower(t));
            }
            return std::make_pair(lo, hi);
          },
      },
      body.shape());
}

std::optional<Revolution> axial_form(const Body& body) {
  if (const auto* r = body.as_revolution()) return *r;
  const auto* poly = std::get_if<Polygon>(&body.shape());
  if (!poly) return std::nullopt;
  const auto& v = poly->vertices;
  const double tol = 1e-9 * std::max(1.0, body.diameter());
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  for (const auto& p : v) {
    bool mirrored = false;
    for (const auto& q : v) mirrored = mirrored || (q - Vec2(p.x(), -p.y())).norm() <= tol;
    if (!mirrored) return std::nullopt;
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
  }
  if (std::abs(xmin) > tol || std::abs(xmax - 1.0) > tol) return std::nullopt;

  std::vector<double> xs;
  for (const auto& p : v) xs.push_back(std::clamp(p.x(), 0.0, 1.0));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(), [&](double a, double b) { return b - a <= tol; }),
           xs.end());
  xs.front() = 0.0;
  xs.back() = 1.0;

  // each slab is a trapezoid; recover its top edge from two interior sections
  auto top = [&](double x) -> std::optional<double> {
    const auto cs = body.cross_section(x);
    if (cs.size() != 1 || std::abs(cs[0].first + cs[0].second) > tol) return std::nullopt;
    return cs[0].second;
  };
  std::vector<std::pair<double, double>> knots;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = xs[i], b = xs[i + 1];
    const auto ya = top(a + 0.25 * (b - a)), yb = top(a + 0.75 * (b - a));
    if (!ya || !yb) return std::nullopt;
    const double slope = (*yb - *ya) / (0.5 * (b - a));
    const double left = std::max(0.0, *ya - 0.25 * (b - a) * slope);
    const double right = std::max(0.0, *yb + 0.25 * (b - a) * slope);
    if (knots.empty() || std::abs(knots.back().second - left) > tol) knots.emplace_back(a, left);
    knots.emplace_back(b, right);
  }
  Revolution rev{2, Profile::sampled(knots)};
  const Body check(rev);
  if (std::abs(check.volume() - body.volume()) > 1e-9 * body.volume()) return std::nullopt;
  return rev;
}

}  // namespace bodycenters
