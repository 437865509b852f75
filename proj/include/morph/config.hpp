#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "morph/collision.hpp"
#include "morph/errors.hpp"
#include "morph/fitness.hpp"
#include "morph/frame.hpp"
#include "morph/kinematics.hpp"
#include "morph/synthesis.hpp"
#include "morph/target_curve.hpp"

namespace morph {

struct PathsConfig {
  std::string sequence;
  std::string trajectory;
  std::string density;
  std::string bend_measurements;
  std::string twist_measurements;
  std::string output;
  std::string log;
};

struct RunConfig {
  ActivationProfile profile;
  IdealCurve curve;
  int sample_count = 200;
  FitnessWeights weights;
  CollisionConfig collision;
  GASettings ga;
  std::size_t start_n = 10;
  std::size_t max_n = 20;
  MidpointSelection midpoint;
  bool align_root_tangent = true;
  bool require_complete = true;
  double max_objective_ratio = 0.1;
  std::optional<FrameProperties> frame;
  PathsConfig paths;
  std::vector<std::string> warnings;  // accepted but unusual values

  // Throws ConfigError naming the offending key.
  void validate() const;
  SynthesisContext synthesis_context() const;
};

// Missing sections keep their defaults; unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& doc);
// IoError when unreadable, ConfigError for bad JSON or values.
RunConfig load_config(const std::string& path);

nlohmann::json profile_to_json(const ActivationProfile& profile);
// `where` prefixes key names in error messages.
ActivationProfile profile_from_json(const nlohmann::json& doc, const std::string& where = "profile");

nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace morph
