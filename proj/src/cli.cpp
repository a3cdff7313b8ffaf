#include "bodycenters/cli.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "bodycenters/catalog.hpp"
#include "bodycenters/centers.hpp"
#include "bodycenters/error.hpp"
#include "bodycenters/parallel.hpp"
#include "bodycenters/unfolded.hpp"

namespace bodycenters::cli {

namespace {

// Maps the library's exceptions onto exit codes.
int guarded(const std::function<void()>& body) {
  try {
    body();
    return kOk;
  } catch (const ConstructionError& e) {
    std::cerr << "input error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << '\n';
  } catch (const CapabilityError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
  } catch (const PreconditionError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericError;
  }
  return kInputError;
}

struct Inputs {
  Json body_spec, kernel_spec;
  Body body;
  KernelSpec kernel;
};

Inputs load(const fs::path& body_file, const fs::path& kernel_file) {
  Json bj = read_json_file(body_file);
  Body body = body_from_json(bj);
  Json kj = read_json_file(kernel_file);
  KernelSpec kernel = kernel_from_json(kj, body.dimension());
  return {std::move(bj), std::move(kj), std::move(body), std::move(kernel)};
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConstructionError("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

fs::path manifest_for(const fs::path& output) { return fs::path(output.string() + ".manifest.json"); }

ConvexRegion region_of(const Body& body, const Settings& s) {
  return unfolded_region(body, s.directions, s.tol);
}

void write_potential_profile(const Body& body, const KernelSpec& kernel, const VecX& from, const VecX& to,
                             int n, const fs::path& out_csv, const QuadratureConfig& cfg) {
  if (n < 2) throw DomainError("profile needs n >= 2");
  if (from.size() != body.dimension() || to.size() != body.dimension())
    throw DomainError("line end points must have the body's dimension");
  std::vector<double> v(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double t = static_cast<double>(i) / (n - 1);
    v[i] = potential_value(body, kernel, VecX(from + t * (to - from)), cfg);
  });
  ensure_parent(out_csv);
  auto out = open_csv(out_csv);
  out << "lambda,value\n";
  for (int i = 0; i < n; ++i) out << static_cast<double>(i) / (n - 1) << ',' << v[i] << '\n';
}

// Axis samples at cell midpoints of [0, 1]: the ends lie on the boundary.
void write_second_derivative_profile(const Body& body, const KernelSpec& kernel, int n, bool split,
                                     const fs::path& out_csv, const QuadratureConfig& cfg) {
  if (n < 1) throw DomainError("profile needs n >= 1");
  if (!axial_form(body)) throw CapabilityError("second-derivative profiles need an axially symmetric body");
  std::vector<AxisSecondDerivative> v(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    v[i] = axis_second_derivative(body, kernel, (i + 0.5) / n, cfg);
  });
  ensure_parent(out_csv);
  auto out = open_csv(out_csv);
  out << (split ? "lambda,total,side,bases\n" : "lambda,total\n");
  for (int i = 0; i < n; ++i) {
    out << (i + 0.5) / n << ',' << v[i].total;
    if (split) out << ',' << v[i].side << ',' << v[i].bases;
    out << '\n';
  }
}

Json centers_json(const Body& body, const KernelSpec& kernel, const ConvexRegion& uf, const CenterReport& r) {
  Json j{{"body", to_json(body)}, {"kernel", to_json(kernel)}, {"unfolded_region", to_json(uf)}};
  const Json report = to_json(r);
  for (const auto& [k, v] : report.items()) j[k] = v;
  return j;
}

bool reproduced(const Example& ex, const CenterReport& r) {
  switch (ex.expected) {
    case Multiplicity::finite: return r.multiplicity == Multiplicity::finite && r.centers.size() == 2;
    default: return r.multiplicity == ex.expected;
  }
}

std::string describe(const CenterReport& r) {
  std::ostringstream s;
  s << to_string(r.multiplicity);
  if (r.multiplicity == Multiplicity::finite) s << '(' << r.centers.size() << ')';
  if (r.multiplicity == Multiplicity::continuum_circle) s << " radius " << std::setprecision(10) << r.circle_radius;
  return s.str();
}

VecX parse_point(const std::vector<double>& v) {
  VecX p(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) p(static_cast<Eigen::Index>(i)) = v[i];
  return p;
}

}  // namespace

void write_manifest(const fs::path& path, const RunManifest& m) {
  Json outs = Json::array();
  for (const auto& p : m.outputs) outs.push_back(p.generic_string());
  write_json_file(path, Json{{"command", m.command},
                             {"body_spec", m.body_spec},
                             {"kernel_spec", m.kernel_spec},
                             {"config", to_json(m.config)},
                             {"outputs", outs}});
}

int potential_profile(const fs::path& body_file, const fs::path& kernel_file, const VecX& from,
                      const VecX& to, int n, const fs::path& out_csv, const Settings& s) {
  return guarded([&] {
    const Inputs in = load(body_file, kernel_file);
    write_potential_profile(in.body, in.kernel, from, to, n, out_csv, s.quadrature);
    write_manifest(manifest_for(out_csv), {"potential-profile", in.body_spec, in.kernel_spec, s.quadrature, {out_csv}});
  });
}

int second_derivative_profile(const fs::path& body_file, const fs::path& kernel_file, int n, bool split,
                              const fs::path& out_csv, const Settings& s) {
  return guarded([&] {
    const Inputs in = load(body_file, kernel_file);
    write_second_derivative_profile(in.body, in.kernel, n, split, out_csv, s.quadrature);
    write_manifest(manifest_for(out_csv),
                   {"second-derivative-profile", in.body_spec, in.kernel_spec, s.quadrature, {out_csv}});
  });
}

int centers(const fs::path& body_file, const fs::path& kernel_file, const fs::path& out_json,
            const Settings& s) {
  return guarded([&] {
    const Inputs in = load(body_file, kernel_file);
    const ConvexRegion uf = region_of(in.body, s);
    CenterOptions opts;
    opts.quadrature = s.quadrature;
    const CenterReport r = find_centers(in.body, in.kernel, uf, opts);
    ensure_parent(out_json);
    write_json_file(out_json, centers_json(in.body, in.kernel, uf, r));
    write_manifest(manifest_for(out_json), {"centers", in.body_spec, in.kernel_spec, s.quadrature, {out_json}});
    std::cout << describe(r) << '\n';
  });
}

int check_uniqueness(const fs::path& body_file, const fs::path& kernel_file, const fs::path& out_json,
                     const Settings& s) {
  return guarded([&] {
    const Inputs in = load(body_file, kernel_file);
    const ConvexRegion uf = region_of(in.body, s);
    const auto [d, D] = d_D_extents(in.body, uf);
    const Certificate c = uniqueness_certificate(in.body, in.kernel, uf, {d, D});
    const BodyTraits traits = body_traits(in.body);
    Json j{{"body", to_json(in.body)},
           {"kernel", to_json(in.kernel)},
           {"unfolded_region", to_json(uf)},
           {"d", d},
           {"D", D},
           {"convex", traits.convex},
           {"special_shape", traits.special_shape}};
    if (in.kernel.is_riesz_like()) {
      const double alpha = in.kernel.riesz_alpha();
      const int m = in.body.dimension();
      j["riesz_verdict"] = to_string(riesz_alpha_verdict(alpha, m, traits));
      if (m >= 3 && alpha > 1.0 && alpha < m + 1.0)
        j["parallel_body_threshold"] = parallel_body_threshold(alpha, m);
    }
    j["certificate"] = to_json(c);
    ensure_parent(out_json);
    write_json_file(out_json, j);
    write_manifest(manifest_for(out_json), {"check-uniqueness", in.body_spec, in.kernel_spec, s.quadrature, {out_json}});
    std::cout << to_string(c.kind) << '\n';
  });
}

int unfolded(const fs::path& body_file, const fs::path& out_json, const fs::path& folding_csv,
             const Settings& s) {
  return guarded([&] {
    const Json bj = read_json_file(body_file);
    const Body body = body_from_json(bj);
    const ConvexRegion uf = region_of(body, s);
    const auto [d, D] = d_D_extents(body, uf);
    ensure_parent(out_json);
    write_json_file(out_json, Json{{"region", to_json(uf)}, {"d", d}, {"D", D}});
    std::vector<fs::path> outs{out_json};
    if (!folding_csv.empty()) {
      ensure_parent(folding_csv);
      std::ofstream out(folding_csv, std::ios::binary);
      if (!out) throw ConstructionError("cannot write " + folding_csv.string());
      write_folding_csv(out, body, s.directions, s.tol);
      outs.push_back(folding_csv);
    }
    write_manifest(manifest_for(out_json), {"unfolded", bj, Json(nullptr), s.quadrature, outs});
  });
}

int reproduce(const std::string& example_id, const fs::path& out_dir, const Settings& s) {
  return guarded([&] {
    const Example ex = example(example_id);
    fs::create_directories(out_dir);
    const Json bj = to_json(ex.body), kj = to_json(ex.kernel);
    std::vector<fs::path> outs{out_dir / "body.json", out_dir / "kernel.json"};
    write_json_file(outs[0], bj);
    write_json_file(outs[1], kj);

    if (ex.axial) {
      outs.push_back(out_dir / "second_derivative.csv");
      write_second_derivative_profile(ex.body, ex.kernel, 101, true, outs.back(), s.quadrature);
    } else {
      outs.push_back(out_dir / "potential_profile.csv");
      write_potential_profile(ex.body, ex.kernel, ex.line_a, ex.line_b, 401, outs.back(), s.quadrature);
    }

    const ConvexRegion uf = region_of(ex.body, s);
    CenterOptions opts;
    opts.quadrature = s.quadrature;
    const CenterReport r = find_centers(ex.body, ex.kernel, uf, opts);
    outs.push_back(out_dir / "centers.json");
    write_json_file(outs.back(), centers_json(ex.body, ex.kernel, uf, r));

    const bool ok = reproduced(ex, r);
    std::ostringstream summary;
    summary << "example: " << ex.id << '\n'
            << "claim: " << ex.claim << '\n'
            << "found: " << describe(r) << '\n'
            << ex.claim << ": " << (ok ? "REPRODUCED" : "NOT REPRODUCED") << '\n';
    outs.push_back(out_dir / "summary.txt");
    std::ofstream(outs.back(), std::ios::binary) << summary.str();
    write_manifest(out_dir / "manifest.json", {"reproduce " + ex.id, bj, kj, s.quadrature, outs});
    std::cout << summary.str();
  });
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Potentials of bodies under radial kernels and their maximizers"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--resolution", s.quadrature.boundary_resolution, "boundary quadrature nodes")
      ->check(CLI::Range(8, 1 << 24));
  app.add_option("--tol", s.tol, "folding-height tolerance (0: 1e-3 * diameter)")->check(CLI::NonNegativeNumber);
  app.add_option("--directions", s.directions, "folding directions of the unfolded region")
      ->check(CLI::Range(8, 1 << 20));

  std::string body_file, kernel_file, out, csv, id;
  std::vector<double> from, to;
  int n = 401;
  bool split = false;

  auto* pp = app.add_subcommand("potential-profile", "potential along a segment, CSV (lambda,value)");
  pp->add_option("--body", body_file)->required();
  pp->add_option("--kernel", kernel_file)->required();
  pp->add_option("--from", from)->required()->delimiter(',');
  pp->add_option("--to", to)->required()->delimiter(',');
  pp->add_option("-n,--n", n);
  pp->add_option("--out", out)->required();

  auto* sd = app.add_subcommand("second-derivative-profile", "axis second derivative over [0, 1], CSV");
  sd->add_option("--body", body_file)->required();
  sd->add_option("--kernel", kernel_file)->required();
  sd->add_option("-n,--n", n);
  sd->add_flag("--split", split, "also the side and base contributions");
  sd->add_option("--out", out)->required();

  auto* ce = app.add_subcommand("centers", "unfolded region and maximizers, JSON");
  ce->add_option("--body", body_file)->required();
  ce->add_option("--kernel", kernel_file)->required();
  ce->add_option("--out", out)->required();

  auto* re = app.add_subcommand("reproduce", "one of the worked examples into a directory");
  re->add_option("id", id, "discs, annulus, triangle, cone or paraboloid")->required();
  re->add_option("--out", out)->required();

  auto* cu = app.add_subcommand("check-uniqueness", "sufficient conditions for a unique center, JSON");
  cu->add_option("--body", body_file)->required();
  cu->add_option("--kernel", kernel_file)->required();
  cu->add_option("--out", out)->required();

  auto* uf = app.add_subcommand("unfolded", "minimal unfolded region, JSON");
  uf->add_option("--body", body_file)->required();
  uf->add_option("--out", out)->required();
  uf->add_option("--folding-csv", csv, "folding heights at the sampled directions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (*pp) return potential_profile(body_file, kernel_file, parse_point(from), parse_point(to), n, out, s);
  if (*sd) return second_derivative_profile(body_file, kernel_file, sd->count("--n") ? n : 101, split, out, s);
  if (*ce) return centers(body_file, kernel_file, out, s);
  if (*re) return reproduce(id, out, s);
  if (*cu) return check_uniqueness(body_file, kernel_file, out, s);
  return unfolded(body_file, out, csv, s);
}

}  // namespace bodycenters::cli
