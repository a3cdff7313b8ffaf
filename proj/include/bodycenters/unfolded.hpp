#pragma once

#include <iosfwd>
#include <utility>
#include <variant>
#include <vector>

#include "bodycenters/bodies.hpp"

namespace bodycenters {

struct Halfplane {
  Vec2 v;    // unit normal
  double c;  // {z : z.v <= c}
};

/// A nonempty compact convex set: a point, a segment (any dimension), or a
/// planar polygon. Half-plane sets are kept for inputs and converted on demand.
class ConvexRegion {
 public:
  struct Point {
    VecX p;
  };
  struct Segment {
    VecX a, b;
  };
  struct Polygon {
    std::vector<Vec2> vertices;  // counterclockwise
  };
  struct HalfplaneSet {
    std::vector<Halfplane> planes;
  };
  using Kind = std::variant<Point, Segment, Polygon, HalfplaneSet>;

  static ConvexRegion point(VecX p);
  static ConvexRegion segment(VecX a, VecX b);
  static ConvexRegion polygon(std::vector<Vec2> vertices);
  static ConvexRegion halfplanes(std::vector<Halfplane> planes);

  /// Intersection of half-planes inside a bounding box, collapsed to a segment
  /// or point when thinner than collapse_tol. Throws ConsistencyError if empty.
  static ConvexRegion intersect(const std::vector<Halfplane>& planes,
                                std::pair<Vec2, Vec2> box, double collapse_tol);

  const Kind& kind() const { return kind_; }
  int dimension() const;
  /// 0 point, 1 segment, 2 polygon.
  int affine_dimension() const;

  bool contains(const VecX& z, double tol = 1e-12) const;
  double support(const VecX& v) const;
  /// Extreme points (vertices or segment ends).
  std::vector<VecX> vertices() const;
  /// About n points covering the region: its boundary and, for polygons, an interior grid.
  std::vector<VecX> samples(int n) const;
  double diameter() const;

 private:
  explicit ConvexRegion(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

double hausdorff(const ConvexRegion& a, const ConvexRegion& b, int n_directions = 4096);

/// l(v): the least height a such that for every b >= a the cap {z in body :
/// z.v >= b} reflected in {z.v = b} lies in the body. Computed as the supremum,
/// over lines parallel to v, of the midpoint of the last chord on the line.
/// For m >= 3 revolution bodies v must be parallel or orthogonal to the axis.
double folding_height(const Body& body, const VecX& v, double tol);

/// Sampled fold test at one height: cap points on a grid x grid lattice,
/// reflected and tested for membership. Planar bodies only.
bool fold_fits_at(const Body& body, const Vec2& v, double b, int grid = 200);
/// The discretized "for all b >= a" predicate over n_heights heights in [a, max height].
bool fold_fits(const Body& body, const Vec2& v, double a, int n_heights = 64, int grid = 200);
/// Bisection on fold_fits; the literal grid-predicate construction of l(v).
double folding_height_by_predicate(const Body& body, const Vec2& v, double tol, int grid = 200);

/// Directions used for a planar body: n uniform angles plus the body's own
/// critical directions (edges, edge normals, angle bisector normals, center lines).
std::vector<Vec2> folding_directions(const Body& body, int n_directions);

ConvexRegion unfolded_region(const Body& body, int n_directions = 256, double tol = 0.0);

/// The triangle's region bounded by its edges, edge mid-perpendiculars and
/// angle bisectors, from the exact folding heights in those directions.
ConvexRegion triangle_unfolded_exact(const Body& triangle);

/// Min and max distance between sampled region points and the boundary.
std::pair<double, double> d_D_extents(const Body& body, const ConvexRegion& region,
                                      int resolution = 4096);

/// CSV "angle,l" of folding heights at n uniform angles.
void write_folding_csv(std::ostream& out, const Body& body, int n, double tol);

}  // namespace bodycenters
