#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bodycenters/io.hpp"
#include "bodycenters/potential.hpp"

namespace bodycenters::cli {

namespace fs = std::filesystem;

/// Exit codes: success, bad input (unreadable or invalid specs, unsupported
/// body for the command), numeric failure.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kNumericError = 3;

struct Settings {
  QuadratureConfig quadrature;
  /// Uniform folding directions of the unfolded region.
  int directions = 256;
  /// Folding-height tolerance; 0 means 1e-3 * diam.
  double tol = 0.0;
};

struct RunManifest {
  std::string command;
  Json body_spec;
  Json kernel_spec;
  QuadratureConfig config;
  std::vector<fs::path> outputs;
};

void write_manifest(const fs::path& path, const RunManifest& m);

/// Each command returns an exit code and reports failures on stderr.
int potential_profile(const fs::path& body_file, const fs::path& kernel_file, const VecX& from,
                      const VecX& to, int n, const fs::path& out_csv, const Settings& s = {});
int second_derivative_profile(const fs::path& body_file, const fs::path& kernel_file, int n, bool split,
                              const fs::path& out_csv, const Settings& s = {});
int centers(const fs::path& body_file, const fs::path& kernel_file, const fs::path& out_json,
            const Settings& s = {});
int reproduce(const std::string& example_id, const fs::path& out_dir, const Settings& s = {});
int check_uniqueness(const fs::path& body_file, const fs::path& kernel_file, const fs::path& out_json,
                     const Settings& s = {});
int unfolded(const fs::path& body_file, const fs::path& out_json, const fs::path& folding_csv,
             const Settings& s = {});

int run(int argc, const char* const* argv);

}  // namespace bodycenters::cli
