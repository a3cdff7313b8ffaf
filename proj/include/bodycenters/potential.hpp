#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <optional>
#include <vector>

#include "bodycenters/bodies.hpp"
#include "bodycenters/kernels.hpp"
#include "bodycenters/quadrature.hpp"

namespace bodycenters {

struct QuadratureConfig {
  /// Boundary quadrature nodes (composite rule) per body.
  int boundary_resolution = 4096;
  /// Interval budget of each level of the nested adaptive volume quadrature.
  int volume_resolution = 4000;
  quad::Method quad_1d = quad::GaussLegendre{64};
  /// Radius of the polar ball around a singular interior point; unset means
  /// 0.1 * dist(x, boundary).
  std::optional<double> singularity_split_radius;
  double volume_tol = 1e-11;
  /// Tolerance of the adaptive fallback used close to the boundary.
  double near_boundary_tol = 1e-12;
};

void validate(const QuadratureConfig& cfg);

struct FieldSample {
  VecX x;
  double value = 0.0;
  std::optional<VecX> gradient;
  std::optional<double> hessian_11;
};

/// K(x) = integral over the body of k(|x - y|) dy by nested volume quadrature.
/// For m >= 3 revolution bodies x must lie on the axis.
double eval_volume(const Body& body, const KernelSpec& kernel, const VecX& x,
                   const QuadratureConfig& cfg = {});

/// K(x) as the boundary integral of Phi(r) r^-m (y - x).n with Phi the radial primitive.
double eval_boundary(const Body& body, const KernelSpec& kernel, const VecX& x,
                     const QuadratureConfig& cfg = {});

/// The Riesz potential of order alpha (log kernel at alpha == m) by the boundary expression.
double eval_boundary_riesz(const Body& body, double alpha, const VecX& x,
                           const QuadratureConfig& cfg = {});

/// grad K(x) = -integral over the boundary of k(r) n dsigma.
VecX gradient(const Body& body, const KernelSpec& kernel, const VecX& x,
              const QuadratureConfig& cfg = {});

/// d^2 K / dx_i dx_j = -integral over the boundary of k'(r) (x_i - y_i)/r n_j dsigma. Indices are 0-based.
double hessian_entry(const Body& body, const KernelSpec& kernel, const VecX& x, int i, int j,
                     const QuadratureConfig& cfg = {});
Eigen::MatrixXd hessian(const Body& body, const KernelSpec& kernel, const VecX& x,
                        const QuadratureConfig& cfg = {});

struct AxisSecondDerivative {
  double total = 0.0;
  /// Lateral surface, including faces at interior profile jumps.
  double side = 0.0;
  /// Faces at t = 0 and t = 1.
  double bases = 0.0;
};

/// d^2 K / dx_1^2 at (lambda, 0, ..., 0) for a revolution body or an axially
/// symmetric polygon, split by boundary part.
AxisSecondDerivative axis_second_derivative(const Body& body, const KernelSpec& kernel,
                                            double lambda, const QuadratureConfig& cfg = {});

/// A(x, h): the Poisson-kernel potential, i.e. the solid angle of the body seen from (x, h).
double illuminating(const Body& body, const VecX& x, double h, const QuadratureConfig& cfg = {});

/// Evaluates many points in parallel (BODYCENTERS_THREADS caps the workers).
std::vector<FieldSample> evaluate_batch(const Body& body, const KernelSpec& kernel,
                                        const std::vector<VecX>& points, bool with_gradient,
                                        bool with_hessian, const QuadratureConfig& cfg = {});

/// Header x1..xm,value[,g1..gm][,h11]; 17 significant digits.
void write_samples_csv(std::ostream& out, const std::vector<FieldSample>& samples);

}  // namespace bodycenters
