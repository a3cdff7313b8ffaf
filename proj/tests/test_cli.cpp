#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bodycenters/cli.hpp"
#include "bodycenters/io.hpp"

using namespace bodycenters;
namespace fs = std::filesystem;

namespace {

const fs::path kData = BODYCENTERS_DATA_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "bodycenters_test_cli" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header = nullptr) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

int interior_maxima(const std::vector<std::vector<double>>& rows) {
  int n = 0;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i)
    if (rows[i][1] > rows[i - 1][1] && rows[i][1] > rows[i + 1][1]) ++n;
  return n;
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "bodycenters");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

void check_manifest(const fs::path& manifest) {
  REQUIRE(fs::exists(manifest));
  const Json m = read_json_file(manifest);
  CHECK(m.contains("command"));
  CHECK(m.contains("config"));
  REQUIRE(m.contains("outputs"));
  CHECK(!m["outputs"].empty());
  for (const auto& o : m["outputs"]) CHECK(fs::exists(o.get<std::string>()));
}

}  // namespace

TEST_CASE("potential profile of the two discs") {
  const fs::path dir = scratch("profile_discs");
  const fs::path csv = dir / "v.csv";
  REQUIRE(cli::potential_profile(kData / "discs.body.json", kData / "discs.kernel.json", Vec2(-1, 0), Vec2(1, 0), 401,
                                 csv) == cli::kOk);
  std::string header;
  const auto rows = read_csv(csv, &header);
  CHECK(header == "lambda,value");
  CHECK(rows.size() == 401);
  CHECK(interior_maxima(rows) == 2);
  check_manifest(fs::path(csv.string() + ".manifest.json"));
}

TEST_CASE("potential profile of the annulus") {
  const fs::path csv = scratch("profile_annulus") / "v.csv";
  REQUIRE(cli::potential_profile(kData / "annulus.body.json", kData / "annulus.kernel.json", Vec2(-1.5, 0),
                                 Vec2(1.5, 0), 201, csv) == cli::kOk);
  const auto rows = read_csv(csv);
  CHECK(interior_maxima(rows) == 2);
  const auto& mid = rows[100];
  CHECK(mid[0] == doctest::Approx(0.5));
  CHECK(mid[1] < rows[99][1]);
  CHECK(mid[1] < rows[101][1]);
}

TEST_CASE("two-point profile has only the endpoints") {
  const fs::path csv = scratch("profile_two") / "v.csv";
  REQUIRE(cli::potential_profile(kData / "triangle.body.json", kData / "triangle.kernel.json", Vec2(0.2, 0),
                                 Vec2(0.8, 0), 2, csv) == cli::kOk);
  const auto rows = read_csv(csv);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == 0.0);
  CHECK(rows[1][0] == 1.0);
}

TEST_CASE("second derivative profiles") {
  const fs::path dir = scratch("second");
  for (const std::string id : {"triangle", "cone", "paraboloid"}) {
    const fs::path csv = dir / (id + ".csv");
    REQUIRE(cli::second_derivative_profile(kData / (id + ".body.json"), kData / (id + ".kernel.json"), 101, true,
                                           csv) == cli::kOk);
    std::string header;
    const auto rows = read_csv(csv, &header);
    CHECK(header == "lambda,total,side,bases");
    CHECK(rows.size() == 101);
    for (const auto& r : rows) {
      CHECK(std::abs(r[1] - r[2] - r[3]) <= 1e-8 * (1 + std::abs(r[1])));
      if (r[0] >= 0.5) CHECK_MESSAGE(r[1] < 0.0, id << " at " << r[0]);
    }
  }
  CHECK(cli::second_derivative_profile(kData / "discs.body.json", kData / "discs.kernel.json", 11, false,
                                       dir / "bad.csv") == cli::kInputError);
}

TEST_CASE("centers command") {
  const fs::path dir = scratch("centers");
  REQUIRE(cli::centers(kData / "discs.body.json", kData / "discs.kernel.json", dir / "a.json") == cli::kOk);
  REQUIRE(cli::centers(kData / "discs.body.json", kData / "discs.kernel.json", dir / "b.json") == cli::kOk);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  const Json r = read_json_file(dir / "a.json");
  CHECK(r["multiplicity"]["kind"] == "finite");
  CHECK(r["multiplicity"]["count"] == 2);
  CHECK(r.contains("unfolded_region"));
  check_manifest(dir / "a.json.manifest.json");

  REQUIRE(cli::centers(kData / "disc.body.json", kData / "poisson.kernel.json", dir / "p.json") == cli::kOk);
  const Json p = read_json_file(dir / "p.json");
  CHECK(p["multiplicity"]["kind"] == "unique");
  CHECK(std::abs(p["centers"][0]["x"][0].get<double>()) <= 1e-9);
  CHECK(std::abs(p["centers"][0]["x"][1].get<double>()) <= 1e-9);
}

TEST_CASE("check-uniqueness command") {
  const fs::path dir = scratch("unique");
  REQUIRE(cli::check_uniqueness(kData / "paraboloid.body.json", kData / "paraboloid.kernel.json", dir / "p.json") ==
          cli::kOk);
  CHECK(read_json_file(dir / "p.json")["certificate"]["kind"] == "revolution_concavity");
  REQUIRE(cli::check_uniqueness(kData / "triangle.body.json", kData / "riesz_2.5.kernel.json", dir / "t.json") ==
          cli::kOk);
  CHECK(read_json_file(dir / "t.json")["certificate"]["kind"] == "nonobtuse_triangle");
  REQUIRE(cli::check_uniqueness(kData / "obtuse_triangle.body.json", kData / "triangle.kernel.json",
                                dir / "o.json") == cli::kOk);
  const Json o = read_json_file(dir / "o.json");
  CHECK(o["certificate"]["kind"] == "none");
  CHECK(!o["certificate"]["notes"].empty());
  for (const auto& h : read_json_file(dir / "p.json")["certificate"]["hypotheses"]) CHECK(h.contains("holds"));
}

TEST_CASE("reproduce") {
  const fs::path dir = scratch("reproduce");
  for (const std::string id : {"discs", "triangle", "paraboloid"}) {
    REQUIRE(cli::reproduce(id, dir / id) == cli::kOk);
    const std::string summary = slurp(dir / id / "summary.txt");
    const std::string claim = id == "discs" ? "two centers" : "unique center";
    CHECK_MESSAGE(summary.find(claim + ": REPRODUCED") != std::string::npos, summary);
    CHECK(fs::exists(dir / id / "body.json"));
    CHECK(fs::exists(dir / id / "centers.json"));
    check_manifest(dir / id / "manifest.json");
  }
  CHECK(fs::exists(dir / "discs" / "potential_profile.csv"));
  CHECK(fs::exists(dir / "triangle" / "second_derivative.csv"));
  CHECK(cli::reproduce("nope", dir / "nope") == cli::kInputError);
}

TEST_CASE("unfolded command") {
  const fs::path dir = scratch("unfolded");
  REQUIRE(cli::unfolded(kData / "discs.body.json", dir / "uf.json", dir / "l.csv") == cli::kOk);
  const Json r = read_json_file(dir / "uf.json");
  CHECK(r["region"]["type"] == "segment");
  std::string header;
  read_csv(dir / "l.csv", &header);
  CHECK(header == "angle,l");
}

TEST_CASE("argument parsing and exit codes") {
  const fs::path dir = scratch("args");
  CHECK(run({"centers", "--body", (kData / "disc.body.json").string(), "--kernel",
             (kData / "poisson.kernel.json").string(), "--out", (dir / "c.json").string(), "--resolution", "2048"}) ==
        cli::kOk);
  CHECK(run({"centers", "--body", (dir / "missing.json").string(), "--kernel",
             (kData / "poisson.kernel.json").string(), "--out", (dir / "x.json").string()}) == cli::kInputError);
  CHECK(run({"frobnicate"}) == cli::kInputError);
  CHECK(run({"potential-profile", "--body", (kData / "disc.body.json").string()}) == cli::kInputError);
  CHECK(run({"reproduce", "nope", "--out", (dir / "r").string()}) == cli::kInputError);

  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK(cli::centers(dir / "bad.json", kData / "poisson.kernel.json", dir / "y.json") == cli::kInputError);
  std::ofstream(dir / "neg.json") << R"({"type": "annulus", "r_in": 2, "r_out": 1})";
  CHECK(cli::centers(dir / "neg.json", kData / "poisson.kernel.json", dir / "z.json") == cli::kInputError);
}

TEST_CASE("the executable reports exit codes") {
  const std::string exe = BODYCENTERS_CLI;
  const int rc = std::system((exe + " reproduce nope --out " + scratch("exe").string() + " 2>/dev/null").c_str());
  REQUIRE(WIFEXITED(rc));
  CHECK(WEXITSTATUS(rc) == 2);
}

TEST_CASE("JSON round trips") {
  for (const std::string id : {"discs", "annulus", "triangle", "cone", "paraboloid"}) {
    const Json j = read_json_file(kData / (id + ".body.json"));
    CHECK(to_json(body_from_json(j)) == j);
    const Json k = read_json_file(kData / (id + ".kernel.json"));
    const int m = body_from_json(j).dimension();
    CHECK(to_json(kernel_from_json(k, m)) == k);
  }
  const Json seg = to_json(ConvexRegion::segment(Vec2(0, 0), Vec2(1, 0)));
  CHECK(to_json(region_from_json(seg)) == seg);
  CHECK_THROWS(body_from_json(Json{{"type", "blob"}}));
  CHECK_THROWS(kernel_from_json(Json{{"family", "riesz"}}, 2));
}
