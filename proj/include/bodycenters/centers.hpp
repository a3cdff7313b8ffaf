#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bodycenters/bodies.hpp"
#include "bodycenters/kernels.hpp"
#include "bodycenters/potential.hpp"
#include "bodycenters/unfolded.hpp"

namespace bodycenters {

enum class Multiplicity { unique, finite, continuum_circle, inconclusive };

enum class CertificateKind {
  revolution_concavity,
  nonobtuse_triangle,
  riesz_small_alpha,
  riesz_large_alpha,
  parallel_body,
  illuminating_large_h,
  illuminating_small_h,
  none,
};

std::string to_string(Multiplicity m);
std::string to_string(CertificateKind k);

/// One checked hypothesis. margin > 0 means it holds with that much room
/// (its meaning is given per hypothesis in the name).
struct Hypothesis {
  std::string name;
  bool holds = false;
  std::optional<double> margin;
  std::string detail;
};

struct Certificate {
  CertificateKind kind = CertificateKind::none;
  std::vector<Hypothesis> hypotheses;
  std::vector<std::string> notes;
};

struct CenterOptions {
  /// Grid points per dimension of the region's affine hull.
  int grid = 401;
  double position_tol = 1e-10;
  /// Maxima closer than cluster_position * diam are merged.
  double cluster_position = 1e-6;
  /// Relative value window around the best value.
  double cluster_value = 1e-9;
  int continuum_min = 24;
  double continuum_tol = 1e-4;
  /// Grid maxima polished, best first.
  int max_polish = 64;
  QuadratureConfig quadrature;
};

struct CenterReport {
  std::vector<VecX> centers;
  std::vector<double> values;
  Multiplicity multiplicity = Multiplicity::inconclusive;
  /// Circle of a continuum_circle classification.
  Vec2 circle_center = Vec2::Zero();
  double circle_radius = 0.0;
  double max_value = 0.0;
  double d = 0.0;
  double D = 0.0;
  std::optional<Certificate> certificate;
  std::vector<std::string> diagnostics;
};

/// K(x) by the boundary expression, or by volume quadrature on the boundary itself.
double potential_value(const Body& body, const KernelSpec& kernel, const VecX& x,
                       const QuadratureConfig& cfg = {});

/// Maximizers of K restricted to the region: grid search, local polish,
/// clustering and multiplicity classification.
CenterReport find_centers(const Body& body, const KernelSpec& kernel, const ConvexRegion& region,
                          const CenterOptions& opts = {});

struct ConcavityScan {
  bool all_negative = true;
  double worst = -std::numeric_limits<double>::infinity();
  VecX argworst;
  int evaluated = 0;
  std::vector<std::string> diagnostics;
};

/// Segment regions: second derivative along the segment at n points including
/// the ends. Point and polygon regions: largest Hessian eigenvalue. Samples
/// on the boundary are skipped.
ConcavityScan concavity_scan(const Body& body, const KernelSpec& kernel, const ConvexRegion& region,
                             int n, const QuadratureConfig& cfg = {});

/// First matching sufficient condition for a unique center, in the order:
/// special shape with a kernel passing the decrease, smoothness and ratio
/// hypotheses on (d, D); small or large Riesz order; illuminating heights.
Certificate uniqueness_certificate(const Body& body, const KernelSpec& kernel,
                                   const ConvexRegion& region, std::pair<double, double> d_D);

struct BodyTraits {
  bool convex = false;
  /// A revolution body with omega^(m-1) concave or a non-obtuse triangle.
  bool special_shape = false;
};

enum class RieszVerdict { unique_small_alpha, unique_large_alpha, unique_special_shape, unknown };
std::string to_string(RieszVerdict v);

RieszVerdict riesz_alpha_verdict(double alpha, int m, const BodyTraits& traits);

/// The printed threshold f(alpha) for parallel bodies; needs m >= 3 and 1 < alpha < m + 1.
double parallel_body_threshold(double alpha, int m);

/// Large-h and small-h sufficient conditions for a unique illuminating center,
/// with D standing in for the refined diameter quantity.
Certificate illuminating_verdict(int m, double h, double d, double D, bool convex,
                                 bool uf_interior);

BodyTraits body_traits(const Body& body);
bool nonobtuse_triangle(const Body& body);
/// Whether the region lies in the interior of the body (sampled, strict margin).
bool region_in_interior(const Body& body, const ConvexRegion& region);

}  // namespace bodycenters
