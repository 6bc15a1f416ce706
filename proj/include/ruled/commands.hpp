#pragma once

// The command layer behind the CLI: each command turns a surface config and
// options into a JSON report plus a process exit status.

#include <optional>
#include <string>

#include "json.hpp"
#include "ruled/config.hpp"
#include "ruled/mannheim.hpp"
#include "ruled/mesh.hpp"

namespace ruled {

enum ExitStatus : int { exit_ok = 0, exit_relation_failure = 1, exit_input = 2, exit_degenerate = 3 };

struct RunOptions {
  int samples = kDefaultSampleCount;
  double tol = 1e-6;
  std::string theta = "0";       // radians; constant or expression in t
  std::string theta_star = "0";  // model units; constant or expression in t
  std::string mode = "constant"; // constant | mannheim
  std::string out;               // mesh path, empty for none
  MeshGrid grid;
};

struct CommandResult {
  nlohmann::json report;
  std::optional<std::string> text;  // printed instead of the report when set
  int exit_code = exit_ok;
};

CommandResult cmd_invariants(const SurfaceConfig& config, const RunOptions& options);
CommandResult cmd_offset(const SurfaceConfig& config, const RunOptions& options);
CommandResult cmd_verify(const SurfaceConfig& config, const RunOptions& options);
CommandResult cmd_mesh(const SurfaceConfig& config, const RunOptions& options);
CommandResult cmd_dualcurve(const SurfaceConfig& config, const RunOptions& options);

/// Builds θ̄ from the options: constant, varying in t, or the Mannheim
/// solution started at the given constants.
OffsetAngle offset_angle_from(const RuledSurfaceDef& s, const RunOptions& options);

int exit_code_for(const Error& e);
nlohmann::json error_json(const Error& e);

nlohmann::json to_json(const Vec3& v);
nlohmann::json to_json(const DualNumber& d);
nlohmann::json to_json(const DualVector3& d);
nlohmann::json to_json(const RelationCheck& c);

}  // namespace ruled
