#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bodycenters/catalog.hpp"
#include "bodycenters/centers.hpp"
#include "bodycenters/error.hpp"
#include "oracles.hpp"

using namespace bodycenters;

namespace {

const double kPi = std::numbers::pi;

VecX v2(double x, double y) { return Vec2(x, y); }
VecX v3(double x, double y, double z) { return Eigen::Vector3d(x, y, z); }

Body unit_disc() { return Body::disc(Vec2(0, 0), 1); }
Body two_discs() { return Body::disc_union({{Vec2(-1, 0), 1.0}, {Vec2(1, 0), 1.0}}); }
Body triangle() {
  const double c = oracle::slope();
  return Body::polygon({Vec2(0, 0), Vec2(1, -c), Vec2(1, c)});
}
Body cone() { return Body::revolution(3, Profile::power(1.0, oracle::slope())); }
Body paraboloid() { return Body::revolution(3, Profile::power(0.5, oracle::slope())); }

// Independent transcription of the printed parallel-body threshold.
double threshold_reference(double alpha, int m) {
  const double A = m + 1 - alpha;
  const double B = m + 2 - alpha;
  const double inner = 4 * std::sqrt(B / A) + 0.5 * std::sqrt(A / B);
  const double pole = std::pow(1 + std::pow(4 * inner * inner + 1, -B / 2), 1.0 / (m - 2)) - 1;
  return std::sqrt(A) / 2 * (2 + 3 / pole) * inner - 1;
}

}  // namespace

TEST_CASE("unique center of the disc") {
  const CenterReport r = find_centers(unit_disc(), KernelSpec::riesz(1.5, 2), ConvexRegion::point(v2(0, 0)));
  CHECK(r.multiplicity == Multiplicity::unique);
  REQUIRE(r.centers.size() == 1);
  CHECK(r.centers[0].norm() <= 1e-12);
  CHECK(r.max_value == doctest::Approx(oracle::disc_center_riesz(1.5)).epsilon(1e-8));
}

TEST_CASE("two centers of the two discs") {
  const Body b = two_discs();
  const KernelSpec k = KernelSpec::riesz(1.5, 2);
  const CenterReport r = find_centers(b, k, ConvexRegion::segment(v2(-1, 0), v2(1, 0)));
  CHECK(r.multiplicity == Multiplicity::finite);
  REQUIRE(r.centers.size() == 2);
  const VecX& a = r.centers[0];
  const VecX& c = r.centers[1];
  CHECK((a + c).norm() <= 1e-8);
  CHECK(std::abs(a(0)) > 0.0);
  CHECK(std::abs(a(0)) < 1.0);
  // The location agrees with a dense scan of the angular integral.
  double best = -1e300, arg = 0;
  for (int i = 0; i <= 1000; ++i) {
    const double lam = 0.1 + 0.4 * i / 1000.0;
    const double v = oracle::two_disc_potential(1.5, lam);
    if (v > best) best = v, arg = lam;
  }
  CHECK(std::abs(std::abs(a(0)) - arg) <= 1e-3);
  CHECK(r.max_value == doctest::Approx(best).epsilon(1e-8));
  CHECK(r.d <= 1e-6);
  CHECK(r.D == doctest::Approx(3.0).epsilon(1e-6));
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->kind == CertificateKind::none);
  CHECK(std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                    [](const std::string& s) { return s.find("contact") != std::string::npos; }));
}

TEST_CASE("continuum of centers of the annulus") {
  const Body ann = Body::annulus(1, 2);
  CenterOptions opts;
  opts.grid = 101;
  const CenterReport r = find_centers(ann, KernelSpec::riesz(1.5, 2), unfolded_region(ann, 256), opts);
  CHECK(r.multiplicity == Multiplicity::continuum_circle);
  CHECK(r.circle_center.norm() <= 1e-3);
  CHECK(r.circle_radius > 1.0);
  CHECK(r.circle_radius <= 1.5);
  // The radius agrees with a dense radial scan of the angular integral.
  double best = -1e300, arg = 0;
  for (int i = 0; i <= 500; ++i) {
    const double lam = 1.0 + 0.5 * i / 500.0;
    const double v = oracle::annulus_potential(1.5, lam);
    if (v > best) best = v, arg = lam;
  }
  CHECK(std::abs(r.circle_radius - arg) <= 2e-3);
}

TEST_CASE("reported centers are maximal and inside the region") {
  const Body t = triangle();
  const KernelSpec k = KernelSpec::riesz(1.5, 2);
  const ConvexRegion uf = unfolded_region(t);
  const CenterReport r = find_centers(t, k, uf);
  CHECK(r.multiplicity == Multiplicity::unique);
  for (const VecX& c : r.centers) CHECK(uf.contains(c, 1e-6 * t.diameter()));
  CHECK(r.max_value >= potential_value(t, k, centroid(t)));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  const double c = oracle::slope();
  for (int i = 0; i < 100; ++i) {
    const double x = std::sqrt(u(rng));
    const Vec2 p(x, (2 * u(rng) - 1) * c * x);
    CHECK(r.max_value >= potential_value(t, k, p) - 1e-12);
  }
}

TEST_CASE("maximality on the convex hull of a union") {
  const Body b = two_discs();
  const KernelSpec k = KernelSpec::riesz(1.5, 2);
  const CenterReport r = find_centers(b, k, unfolded_region(b));
  CHECK(r.multiplicity == Multiplicity::finite);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ux(-2, 2), uy(-1, 1);
  int checked = 0;
  while (checked < 100) {
    const Vec2 p(ux(rng), uy(rng));
    const bool in_hull = std::abs(p.x()) <= 1 || (std::abs(p.x()) - 1) * (std::abs(p.x()) - 1) + p.y() * p.y() <= 1;
    if (!in_hull) continue;
    ++checked;
    CHECK(r.max_value >= potential_value(b, k, p) - 1e-12);
  }
}

TEST_CASE("kernels that do not decrease are rejected") {
  const KernelSpec up(CustomKernel{"identity", [](double r) { return r; }, [](double) { return 1.0; },
                                   {Smoothness::C1, 3.0}},
                      2);
  CHECK_THROWS_AS(find_centers(unit_disc(), up, ConvexRegion::point(v2(0, 0))), CapabilityError);
}

TEST_CASE("concavity scans") {
  auto s = concavity_scan(triangle(), KernelSpec::riesz(1.5, 2), ConvexRegion::segment(v2(0.5, 0), v2(1, 0)), 50);
  CHECK(s.all_negative);
  CHECK(!s.diagnostics.empty());  // the endpoint (1, 0) lies on the boundary
  s = concavity_scan(cone(), KernelSpec::riesz(2.5, 3), ConvexRegion::segment(v3(0.5, 0, 0), v3(1, 0, 0)), 50);
  CHECK(s.all_negative);
  const Body cyl = Body::revolution(3, Profile::constant(0.4));
  s = concavity_scan(cyl, KernelSpec::poisson(1.0, 3), ConvexRegion::segment(v3(0.05, 0, 0), v3(0.95, 0, 0)), 50);
  CHECK(s.all_negative);
  CHECK(s.evaluated == 50);
  s = concavity_scan(unit_disc(), KernelSpec::riesz(1.5, 2), ConvexRegion::point(v2(0.2, 0.1)), 1);
  CHECK(s.all_negative);
  // The two-disc potential dips at the origin between its two maxima.
  s = concavity_scan(two_discs(), KernelSpec::riesz(1.5, 2), ConvexRegion::segment(v2(-0.9, 0), v2(0.9, 0)), 19);
  CHECK_FALSE(s.all_negative);
}

TEST_CASE("certificates") {
  auto cert = [](const Body& b, const KernelSpec& k) {
    const ConvexRegion uf = unfolded_region(b);
    return uniqueness_certificate(b, k, uf, d_D_extents(b, uf)).kind;
  };
  CHECK(cert(paraboloid(), KernelSpec::riesz(2.5, 3)) == CertificateKind::revolution_concavity);
  CHECK(cert(cone(), KernelSpec::riesz(2.5, 3)) == CertificateKind::none);
  CHECK(cert(triangle(), KernelSpec::riesz(1.5, 2)) == CertificateKind::nonobtuse_triangle);
  CHECK(cert(triangle(), KernelSpec::poisson(1.0, 2)) == CertificateKind::nonobtuse_triangle);
  const Body obtuse = Body::polygon({Vec2(0, 0), Vec2(1, 0), Vec2(0.2, 0.25)});
  CHECK(cert(obtuse, KernelSpec::riesz(1.5, 2)) == CertificateKind::none);
  CHECK(cert(obtuse, KernelSpec::riesz(0.5, 2)) == CertificateKind::riesz_small_alpha);
  CHECK(cert(two_discs(), KernelSpec::riesz(3.5, 2)) == CertificateKind::riesz_large_alpha);
  CHECK(cert(two_discs(), KernelSpec::riesz(1.5, 2)) == CertificateKind::none);
  CHECK(cert(unit_disc(), KernelSpec::poisson(3.0, 2)) == CertificateKind::illuminating_large_h);
}

TEST_CASE("the cone is unique without a certificate") {
  const Body b = cone();
  const KernelSpec k = KernelSpec::riesz(2.5, 3);
  const CenterReport r = find_centers(b, k, unfolded_region(b));
  CHECK(r.multiplicity == Multiplicity::unique);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->kind == CertificateKind::none);
  CHECK(concavity_scan(b, k, unfolded_region(b), 50).all_negative);
}

TEST_CASE("Riesz order verdicts") {
  CHECK(riesz_alpha_verdict(0.5, 2, {true, false}) == RieszVerdict::unique_small_alpha);
  CHECK(riesz_alpha_verdict(3.5, 2, {false, false}) == RieszVerdict::unique_large_alpha);
  CHECK(riesz_alpha_verdict(2.0, 3, {false, false}) == RieszVerdict::unknown);
  CHECK(riesz_alpha_verdict(2.0, 3, {true, true}) == RieszVerdict::unique_special_shape);
  CHECK(riesz_alpha_verdict(0.5, 2, {false, false}) == RieszVerdict::unknown);
}

TEST_CASE("parallel body threshold") {
  CHECK_THROWS_AS(parallel_body_threshold(2.0, 2), DomainError);
  CHECK_THROWS_AS(parallel_body_threshold(1.0, 3), DomainError);
  CHECK_THROWS_AS(parallel_body_threshold(4.0, 3), DomainError);
  const double f = parallel_body_threshold(2.0, 3);
  CHECK(f > 0.0);
  CHECK(f == doctest::Approx(threshold_reference(2.0, 3)).epsilon(1e-14));
  for (double a : {1.2, 2.7, 3.9, 3.999999}) {
    const double v = parallel_body_threshold(a, 3);
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx(threshold_reference(a, 3)).epsilon(1e-12));
  }
  CHECK(parallel_body_threshold(2.5, 4) == doctest::Approx(threshold_reference(2.5, 4)).epsilon(1e-14));
}

TEST_CASE("illuminating verdicts") {
  CHECK(illuminating_verdict(2, 3.0, 1.0, 1.0, true, true).kind == CertificateKind::illuminating_large_h);
  CHECK(illuminating_verdict(2, 0.5, 1.0, 1.0, true, true).kind == CertificateKind::illuminating_small_h);
  CHECK(illuminating_verdict(2, 0.5, 0.0, 3.0, false, false).kind == CertificateKind::none);
  CHECK(illuminating_verdict(2, 1.5, 1.0, 1.0, true, true).kind == CertificateKind::none);
}

TEST_CASE("body traits") {
  CHECK(nonobtuse_triangle(triangle()));
  CHECK_FALSE(nonobtuse_triangle(Body::polygon({Vec2(0, 0), Vec2(1, 0), Vec2(0.2, 0.25)})));
  CHECK(body_traits(paraboloid()).special_shape);
  CHECK_FALSE(body_traits(cone()).special_shape);
  CHECK(body_traits(cone()).convex);
  CHECK_FALSE(body_traits(two_discs()).convex);
  CHECK(region_in_interior(unit_disc(), ConvexRegion::point(v2(0, 0))));
  CHECK_FALSE(region_in_interior(two_discs(), ConvexRegion::segment(v2(-1, 0), v2(1, 0))));
}

TEST_CASE("catalog") {
  CHECK(example_ids().size() == 5);
  CHECK_THROWS_AS(example("nope"), DomainError);
  CHECK(example("discs").expected == Multiplicity::finite);
  CHECK(example("annulus").expected == Multiplicity::continuum_circle);
  CHECK(example_slope() == doctest::Approx(std::tan(kPi / 10)));
}
