#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "morph/collision.hpp"
#include "morph/kinematics.hpp"
#include "morph/materials.hpp"
#include "morph/synthesis.hpp"
#include "morph/target_curve.hpp"

namespace morph {

// 9 significant digits, C locale.
std::string format_number(double v);
// Value that prints as format_number(v); used before JSON serialisation.
double round_significant(double v);

// Throw IoError naming the path.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

// Numeric CSV with a fixed header. Throws IoError with "source:line".
struct NumericCsv {
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> line_numbers;
};
NumericCsv parse_numeric_csv(const std::string& text, const std::string& source,
                             const std::vector<std::string>& header);

// {"elements": ["a", ...], "profile": {...}}
nlohmann::json sequence_to_json(const Sequence& seq, const ActivationProfile& profile);
struct SequenceDocument {
  Sequence sequence;
  ActivationProfile profile;
  bool has_profile = false;
};
SequenceDocument sequence_from_json(const nlohmann::json& doc, const std::string& source);
SequenceDocument load_sequence(const std::string& path);

// increment_index,node_index,x,y,z
std::string frames_csv(const std::vector<Trajectory>& frames);
// Accepts node_index,x,y,z or the frames layout (last increment wins).
Trajectory parse_trajectory_csv(const std::string& text, const std::string& source);

// t,x,y,z
std::string target_csv(const std::vector<CurveSample>& samples);

// ny rows of nx values, no header; row j holds y = j * cell_size.
DensityField parse_density_csv(const std::string& text, const std::string& source, double cell_size);

// node_index,x,y,z,x_sag,y_sag,z_sag (sag columns are displacements)
std::string sag_csv(const Trajectory& traj, const std::vector<Vec3>& displacement);

nlohmann::json collision_to_json(const CollisionReport& report);
nlohmann::json synthesis_to_json(const SynthesisOutcome& outcome, const ActivationProfile& profile);
// n_elements,restart,generation,best_fitness,mean_fitness
std::string generation_log_csv(const SynthesisOutcome& outcome);

// Two-space indented dump with a trailing newline.
std::string dump_json(const nlohmann::json& doc);

}  // namespace morph
