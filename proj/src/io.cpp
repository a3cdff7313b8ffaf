#include "bodycenters/io.hpp"

#include <fstream>
#include <limits>

#include "bodycenters/detail/overloaded.hpp"
#include "bodycenters/error.hpp"

namespace bodycenters {

using detail::overloaded;

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ConstructionError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw ConstructionError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

std::string text(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw ConstructionError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

Vec2 vec2(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConstructionError("expected a point [x, y]");
  return Vec2(j[0].get<double>(), j[1].get<double>());
}

VecX vecx(const Json& j) {
  if (!j.is_array() || j.empty()) throw ConstructionError("expected a nonempty coordinate array");
  VecX v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConstructionError("coordinates must be numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Json array(const VecX& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json array(const Vec2& v) { return Json::array({v.x(), v.y()}); }

// Non-finite numbers have no JSON form.
Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Profile profile_from_json(const Json& j) {
  const std::string type = text(j, "type");
  if (type == "power") return Profile::power(number(j, "p"), number(j, "scale"));
  if (type == "constant") return Profile::constant(number(j, "c"));
  if (type == "sampled") {
    const Json& k = field(j, "knots");
    if (!k.is_array()) throw ConstructionError("knots must be an array of [t, omega]");
    std::vector<std::pair<double, double>> knots;
    for (const auto& p : k) {
      const Vec2 q = vec2(p);
      knots.emplace_back(q.x(), q.y());
    }
    return Profile::sampled(std::move(knots));
  }
  throw ConstructionError("unknown profile type \"" + type + "\"");
}

Json to_json(const Profile& profile) {
  return std::visit(overloaded{
                        [](const Profile::Power& p) {
                          return Json{{"type", "power"}, {"p", p.p}, {"scale", p.scale}};
                        },
                        [](const Profile::Constant& c) { return Json{{"type", "constant"}, {"c", c.c}}; },
                        [](const Profile::Sampled& s) {
                          Json k = Json::array();
                          for (const auto& [t, w] : s.knots) k.push_back({t, w});
                          return Json{{"type", "sampled"}, {"knots", k}};
                        },
                    },
                    profile.kind());
}

Body body_from_json(const Json& j) {
  const std::string type = text(j, "type");
  if (type == "polygon") {
    const Json& vs = field(j, "vertices");
    if (!vs.is_array()) throw ConstructionError("vertices must be an array");
    std::vector<Vec2> v;
    for (const auto& p : vs) v.push_back(vec2(p));
    return Body::polygon(std::move(v));
  }
  if (type == "disc_union" || type == "disc") {
    std::vector<Disc> discs;
    if (type == "disc") {
      discs.push_back({vec2(field(j, "c")), number(j, "r")});
    } else {
      const Json& ds = field(j, "discs");
      if (!ds.is_array()) throw ConstructionError("discs must be an array");
      for (const auto& d : ds) discs.push_back({vec2(field(d, "c")), number(d, "r")});
    }
    return Body::disc_union(std::move(discs));
  }
  if (type == "annulus") {
    const Vec2 c = j.contains("center") ? vec2(j.at("center")) : Vec2::Zero();
    return Body::annulus(number(j, "r_in"), number(j, "r_out"), c);
  }
  if (type == "revolution") {
    const double m = number(j, "m");
    if (m != std::floor(m)) throw ConstructionError("m must be an integer");
    return Body::revolution(static_cast<int>(m), profile_from_json(field(j, "profile")));
  }
  throw ConstructionError("unknown body type \"" + type + "\"");
}

Json to_json(const Body& body) {
  return std::visit(overloaded{
                        [](const Polygon& p) {
                          Json v = Json::array();
                          for (const auto& q : p.vertices) v.push_back(array(q));
                          return Json{{"type", "polygon"}, {"vertices", v}};
                        },
                        [](const DiscUnion& u) {
                          Json ds = Json::array();
                          for (const auto& d : u.discs) ds.push_back({{"c", array(d.center)}, {"r", d.radius}});
                          return Json{{"type", "disc_union"}, {"discs", ds}};
                        },
                        [](const Annulus& a) {
                          Json out{{"type", "annulus"}, {"r_in", a.r_in}, {"r_out", a.r_out}};
                          if (a.center != Vec2::Zero()) out["center"] = array(a.center);
                          return out;
                        },
                        [](const Revolution& r) {
                          return Json{{"type", "revolution"}, {"m", r.m}, {"profile", to_json(r.profile)}};
                        },
                    },
                    body.shape());
}

KernelSpec kernel_from_json(const Json& j, int m) {
  const std::string family = text(j, "family");
  if (family == "riesz") {
    const double alpha = number(j, "alpha");
    if (alpha == static_cast<double>(m)) return KernelSpec::log(m);
    return KernelSpec::riesz(alpha, m);
  }
  if (family == "log") return KernelSpec::log(m);
  if (family == "poisson") return KernelSpec::poisson(number(j, "h"), m);
  if (family == "gauss") return KernelSpec::gauss(number(j, "t"), m);
  throw ConstructionError("unknown kernel family \"" + family + "\"");
}

Json to_json(const KernelSpec& kernel) {
  return std::visit(overloaded{
                        [](const Riesz& k) { return Json{{"family", "riesz"}, {"alpha", k.alpha}}; },
                        [](const LogKernel&) { return Json{{"family", "log"}}; },
                        [](const Poisson& k) { return Json{{"family", "poisson"}, {"h", k.h}}; },
                        [](const Gauss& k) { return Json{{"family", "gauss"}, {"t", k.t}}; },
                        [](const CustomKernel& k) { return Json{{"family", "custom"}, {"name", k.name}}; },
                    },
                    kernel.family());
}

ConvexRegion region_from_json(const Json& j) {
  const std::string type = text(j, "type");
  if (type == "point") return ConvexRegion::point(vecx(field(j, "p")));
  if (type == "segment") return ConvexRegion::segment(vecx(field(j, "a")), vecx(field(j, "b")));
  if (type == "polygon") {
    const Json& vs = field(j, "vertices");
    if (!vs.is_array()) throw ConstructionError("vertices must be an array");
    std::vector<Vec2> v;
    for (const auto& p : vs) v.push_back(vec2(p));
    return ConvexRegion::polygon(std::move(v));
  }
  throw ConstructionError("unknown region type \"" + type + "\"");
}

Json to_json(const ConvexRegion& region) {
  return std::visit(overloaded{
                        [](const ConvexRegion::Point& p) { return Json{{"type", "point"}, {"p", array(p.p)}}; },
                        [](const ConvexRegion::Segment& s) {
                          return Json{{"type", "segment"}, {"a", array(s.a)}, {"b", array(s.b)}};
                        },
                        [&](const auto&) {
                          Json v = Json::array();
                          for (const auto& q : region.vertices()) v.push_back(array(q));
                          return Json{{"type", "polygon"}, {"vertices", v}};
                        },
                    },
                    region.kind());
}

Json to_json(const QuadratureConfig& cfg) {
  Json q = std::visit(overloaded{
                          [](const quad::GaussLegendre& g) { return Json{{"type", "gauss_legendre"}, {"order", g.order}}; },
                          [](const quad::Adaptive& a) { return Json{{"type", "adaptive"}, {"tol", a.tol}}; },
                      },
                      cfg.quad_1d);
  Json out{{"boundary_resolution", cfg.boundary_resolution},
           {"volume_resolution", cfg.volume_resolution},
           {"quad_1d", q},
           {"volume_tol", cfg.volume_tol},
           {"near_boundary_tol", cfg.near_boundary_tol}};
  out["singularity_split_radius"] =
      cfg.singularity_split_radius ? Json(*cfg.singularity_split_radius) : Json(nullptr);
  return out;
}

Json to_json(const Certificate& c) {
  Json hs = Json::array();
  for (const auto& h : c.hypotheses) {
    Json e{{"name", h.name}, {"holds", h.holds}};
    e["margin"] = h.margin ? number_or_null(*h.margin) : Json(nullptr);
    if (!h.detail.empty()) e["detail"] = h.detail;
    hs.push_back(e);
  }
  return Json{{"kind", to_string(c.kind)}, {"hypotheses", hs}, {"notes", c.notes}};
}

Json to_json(const CenterReport& r) {
  Json centers = Json::array();
  for (std::size_t i = 0; i < r.centers.size(); ++i)
    centers.push_back({{"x", array(r.centers[i])}, {"value", r.values[i]}});
  Json mult{{"kind", to_string(r.multiplicity)}};
  if (r.multiplicity == Multiplicity::finite) mult["count"] = r.centers.size();
  if (r.multiplicity == Multiplicity::continuum_circle) {
    mult["center"] = array(r.circle_center);
    mult["radius"] = r.circle_radius;
  }
  Json out{{"centers", centers}, {"multiplicity", mult}, {"max_value", r.max_value}, {"d", r.d}, {"D", r.D}};
  out["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  out["diagnostics"] = r.diagnostics;
  return out;
}

Json to_json(const ConcavityScan& s) {
  Json out{{"all_negative", s.all_negative}, {"worst", number_or_null(s.worst)}, {"evaluated", s.evaluated}};
  out["argworst"] = s.argworst.size() > 0 ? array(s.argworst) : Json(nullptr);
  out["diagnostics"] = s.diagnostics;
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConstructionError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConstructionError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConstructionError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace bodycenters
