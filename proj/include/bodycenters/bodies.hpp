#pragma once

#include <Eigen/Core>

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace bodycenters {

using Vec2 = Eigen::Vector2d;
using VecX = Eigen::VectorXd;

/// Radial profile omega: [0,1] -> [0, inf) of a body of revolution.
class Profile {
 public:
  struct Power {
    double p;
    double scale;
  };
  struct Constant {
    double c;
  };
  /// Piecewise linear through the knots; a repeated t encodes a jump.
  struct Sampled {
    std::vector<std::pair<double, double>> knots;
  };

  static Profile power(double p, double scale);
  static Profile constant(double c);
  static Profile sampled(std::vector<std::pair<double, double>> knots);

  const std::variant<Power, Constant, Sampled>& kind() const { return kind_; }

  /// omega(t); at a jump the larger one-sided value (the body is closed).
  double value(double t) const;
  /// omega'(t) on the interior of a smooth piece.
  double derivative(double t) const;
  double value_left(double t) const;
  double value_right(double t) const;

  struct Piece {
    double t0, t1;
    /// t = t0 + (t1 - t0) s^exponent maps s in [0,1]; > 1 grades nodes toward t0
    /// so that omega' dt stays bounded for power profiles with p < 1.
    double exponent = 1.0;
    double t_of(double s) const;
    double dt_ds(double s) const;
  };
  std::vector<Piece> pieces() const;

  struct Jump {
    double t, left, right;
  };
  std::vector<Jump> jumps() const;

  /// Knot locations (piece boundaries), including 0 and 1.
  std::vector<double> breakpoints() const;
  double max_value() const;

  bool concave() const;
  /// omega^(m-1) concave on [0,1]; for power profiles exactly p <= 1/(m-1).
  bool root_concave(int m) const;

 private:
  explicit Profile(std::variant<Power, Constant, Sampled> k) : kind_(std::move(k)) {}
  std::variant<Power, Constant, Sampled> kind_;
};

struct Polygon {
  std::vector<Vec2> vertices;  // counterclockwise
};
struct Disc {
  Vec2 center;
  double radius;
};
struct DiscUnion {
  std::vector<Disc> discs;
};
struct Annulus {
  double r_in;
  double r_out;
  Vec2 center = Vec2::Zero();
};
/// {(y1, ybar) : 0 <= y1 <= 1, |ybar| <= omega(y1)} in R^m.
struct Revolution {
  int m;
  Profile profile;
};

using Shape = std::variant<Polygon, DiscUnion, Annulus, Revolution>;

/// A parameterized piece of a planar boundary curve. eval(s) for s in [0,1]
/// returns the point and the outward normal scaled by the arc-length speed.
struct CurvePiece {
  struct Segment {
    Vec2 a, b;
  };
  struct Arc {
    Vec2 center;
    double radius, theta0, theta1;
    double orientation;  // +1 normal points away from center
  };
  struct Graph {
    Profile::Piece piece;
    double side;  // +1 upper curve y = omega(t), -1 lower curve
  };
  std::variant<Segment, Arc, Graph> geometry;

  struct Sample {
    Vec2 point;
    Vec2 normal_speed;
  };
  Sample eval(double s, const Profile* profile) const;
};

struct BoundaryElement {
  VecX point;
  VecX outward_normal;
  double weight;
};

/// A closed body of one of the supported kinds. Immutable after construction.
class Body {
 public:
  explicit Body(Shape shape);

  static Body polygon(std::vector<Vec2> vertices);
  static Body disc(Vec2 center, double radius);
  static Body disc_union(std::vector<Disc> discs);
  static Body annulus(double r_in, double r_out, Vec2 center = Vec2::Zero());
  static Body revolution(int m, Profile profile);

  const Shape& shape() const { return shape_; }
  int dimension() const;
  /// Planar bodies get the full two-dimensional treatment (m == 2 revolutions included).
  bool planar() const { return dimension() == 2; }
  const Revolution* as_revolution() const { return std::get_if<Revolution>(&shape_); }
  const Profile* profile() const;

  bool contains(const VecX& x) const;
  bool contains2(const Vec2& x) const;

  double volume() const;
  double diameter() const;
  bool convex() const;

  /// Boundary pieces of a planar body (for a revolution: its meridian section).
  const std::vector<CurvePiece>& curve_pieces() const { return pieces_; }
  /// Points where two discs of a union touch tangentially (cusps of the boundary).
  const std::vector<Vec2>& contact_points() const { return contacts_; }

  /// Vertical slab structure: y1 breakpoints and the cross-section intervals at y1.
  std::vector<double> slab_breaks() const;
  std::vector<std::pair<double, double>> cross_section(double y1) const;

  /// Connected components {s : p + s u in body} of a line, sorted.
  std::vector<std::pair<double, double>> line_chords(const Vec2& p, const Vec2& u) const;

  /// Distance from a planar point (or meridian point) to the boundary curve.
  double boundary_distance(const Vec2& x) const;
  double farthest_boundary_distance(const Vec2& x) const;

  /// The planar meridian section {(t, y): |y| <= omega(t)} of a revolution body.
  Body meridian() const;

 private:
  void build_pieces();

  Shape shape_;
  double diameter_ = 0.0;
  std::vector<CurvePiece> pieces_;
  std::vector<Vec2> contacts_;
};

bool contains(const Body& body, const VecX& x);
/// Arc length of one boundary piece.
double piece_length(const CurvePiece& piece, const Profile* profile);
/// The y >= 0 half of a revolution body's meridian boundary; rotating it about
/// the axis sweeps the whole boundary.
std::vector<CurvePiece> upper_meridian(const Body& body);
std::vector<BoundaryElement> boundary_elements(const Body& body, int resolution);
VecX centroid(const Body& body);
VecX reflect(const VecX& x, const VecX& v, double b);
std::pair<double, double> bounding_extent(const Body& body, const VecX& v);

/// A planar polygon symmetric about the x1 axis spanning 0 <= x1 <= 1, or a
/// revolution body, viewed as a revolution body.
std::optional<Revolution> axial_form(const Body& body);

}  // namespace bodycenters
