#pragma once

#include <string>
#include <vector>

#include "bodycenters/bodies.hpp"
#include "bodycenters/centers.hpp"
#include "bodycenters/kernels.hpp"

namespace bodycenters {

/// One of the five worked example bodies with its kernel and the qualitative claim made for it.
struct Example {
  std::string id;
  Body body;
  KernelSpec kernel;
  /// "two centers", "circle" or "unique center".
  std::string claim;
  Multiplicity expected;
  /// Potential profiles run along [line_a, line_b]; axial examples plot the
  /// axis second derivative over [0, 1] instead.
  bool axial;
  VecX line_a, line_b;
};

std::vector<std::string> example_ids();
/// Throws DomainError for an unknown id.
Example example(const std::string& id);

/// tan(pi/10), the slope of the triangle, cone and paraboloid examples.
double example_slope();

}  // namespace bodycenters
