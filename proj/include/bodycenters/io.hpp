#pragma once

#include <filesystem>

#include "json.hpp"

#include "bodycenters/bodies.hpp"
#include "bodycenters/centers.hpp"
#include "bodycenters/kernels.hpp"
#include "bodycenters/potential.hpp"
#include "bodycenters/unfolded.hpp"

namespace bodycenters {

using Json = nlohmann::ordered_json;

/// Malformed input throws ConstructionError.
Body body_from_json(const Json& j);
Json to_json(const Body& body);
Profile profile_from_json(const Json& j);
Json to_json(const Profile& profile);

/// The ambient dimension comes from the body.
KernelSpec kernel_from_json(const Json& j, int m);
Json to_json(const KernelSpec& kernel);

ConvexRegion region_from_json(const Json& j);
Json to_json(const ConvexRegion& region);

Json to_json(const QuadratureConfig& cfg);
Json to_json(const Certificate& c);
Json to_json(const CenterReport& r);
Json to_json(const ConcavityScan& s);

Json read_json_file(const std::filesystem::path& path);
/// Two-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace bodycenters
