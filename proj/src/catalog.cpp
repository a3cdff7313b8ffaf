#include "bodycenters/catalog.hpp"

#include <cmath>
#include <numbers>

#include "bodycenters/error.hpp"

namespace bodycenters {

namespace {

VecX point(double x, double y) {
  VecX v(2);
  v << x, y;
  return v;
}

}  // namespace

double example_slope() { return std::tan(std::numbers::pi / 10.0); }

std::vector<std::string> example_ids() { return {"discs", "annulus", "triangle", "cone", "paraboloid"}; }

Example example(const std::string& id) {
  const double c = example_slope();
  if (id == "discs")
    return {id, Body::disc_union({{Vec2(-1.0, 0.0), 1.0}, {Vec2(1.0, 0.0), 1.0}}), KernelSpec::riesz(1.5, 2),
            "two centers", Multiplicity::finite, false, point(-1.0, 0.0), point(1.0, 0.0)};
  if (id == "annulus")
    return {id, Body::annulus(1.0, 2.0), KernelSpec::riesz(1.5, 2), "circle", Multiplicity::continuum_circle,
            false, point(-1.5, 0.0), point(1.5, 0.0)};
  if (id == "triangle")
    return {id, Body::polygon({Vec2(0.0, 0.0), Vec2(1.0, -c), Vec2(1.0, c)}), KernelSpec::riesz(1.5, 2),
            "unique center", Multiplicity::unique, true, point(0.0, 0.0), point(1.0, 0.0)};
  if (id == "cone")
    return {id, Body::revolution(3, Profile::power(1.0, c)), KernelSpec::riesz(2.5, 3), "unique center",
            Multiplicity::unique, true, VecX::Unit(3, 0) * 0.0, VecX::Unit(3, 0)};
  if (id == "paraboloid")
    return {id, Body::revolution(3, Profile::power(0.5, c)), KernelSpec::riesz(2.5, 3), "unique center",
            Multiplicity::unique, true, VecX::Unit(3, 0) * 0.0, VecX::Unit(3, 0)};
  std::string ids;
  for (const auto& e : example_ids()) ids += (ids.empty() ? "" : ", ") + e;
  throw DomainError("unknown example \"" + id + "\"; valid ids: " + ids);
}

}  // namespace bodycenters
