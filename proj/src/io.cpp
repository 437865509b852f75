#include "morph/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "morph/config.hpp"
#include "morph/errors.hpp"

namespace morph {

std::string format_number(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double round_significant(double v) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing " + path);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_field(const std::string& f, const std::string& where) {
  if (f.empty()) throw IoError(where + ": empty field");
  char* end = nullptr;
  const double v = std::strtod(f.c_str(), &end);
  if (end != f.c_str() + f.size() || !std::isfinite(v)) {
    throw IoError(where + ": not a finite number: '" + f + "'");
  }
  return v;
}

struct Line {
  std::size_t number;
  std::string text;
};

// Non-blank lines with 1-based numbers.
std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream ss(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(ss, line)) {
    ++n;
    if (!trim(line).empty()) lines.push_back({n, line});
  }
  return lines;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out;
}

std::string point_fields(const Vec3& p) {
  return format_number(p.x()) + "," + format_number(p.y()) + "," + format_number(p.z());
}

}  // namespace

NumericCsv parse_numeric_csv(const std::string& text, const std::string& source,
                             const std::vector<std::string>& header) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw IoError(source + ": empty file, expected header " + join(header));
  if (split_fields(lines[0].text) != header) {
    throw IoError(source + ":" + std::to_string(lines[0].number) + ": expected header " + join(header));
  }
  NumericCsv csv;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = source + ":" + std::to_string(lines[i].number);
    const auto fields = split_fields(lines[i].text);
    if (fields.size() != header.size()) {
      throw IoError(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                    std::to_string(fields.size()));
    }
    std::vector<double> row;
    for (const auto& f : fields) row.push_back(parse_field(f, where));
    csv.rows.push_back(std::move(row));
    csv.line_numbers.push_back(lines[i].number);
  }
  return csv;
}

nlohmann::json sequence_to_json(const Sequence& seq, const ActivationProfile& profile) {
  nlohmann::json elements = nlohmann::json::array();
  for (ElementKind k : seq) elements.push_back(std::string(1, letter_code(k)));
  return {{"elements", elements}, {"profile", profile_to_json(profile)}};
}

SequenceDocument sequence_from_json(const nlohmann::json& doc, const std::string& source) {
  if (!doc.is_object()) throw IoError(source + ": sequence document must be a JSON object");
  // synth result: the design lives under "sequence"
  if (doc.contains("sequence") && doc["sequence"].is_object()) return sequence_from_json(doc["sequence"], source);
  for (const auto& [key, value] : doc.items()) {
    if (key != "elements" && key != "profile") throw IoError(source + ": unknown key '" + key + "'");
  }
  if (!doc.contains("elements") || !doc["elements"].is_array()) {
    throw IoError(source + ": 'elements' must be an array of letters");
  }
  SequenceDocument out;
  std::vector<ElementKind> kinds;
  for (std::size_t i = 0; i < doc["elements"].size(); ++i) {
    const auto& e = doc["elements"][i];
    std::optional<ElementKind> kind;
    if (e.is_string() && e.get<std::string>().size() == 1) kind = kind_from_letter(e.get<std::string>()[0]);
    if (!kind) throw IoError(source + ": elements[" + std::to_string(i) + "] is not a letter a..g");
    kinds.push_back(*kind);
  }
  if (kinds.empty()) throw IoError(source + ": 'elements' is empty");
  out.sequence = Sequence(std::move(kinds));
  if (doc.contains("profile")) {
    try {
      out.profile = profile_from_json(doc["profile"]);
    } catch (const ConfigError& e) {
      throw IoError(source + ": " + e.what());
    }
    out.has_profile = true;
  }
  return out;
}

SequenceDocument load_sequence(const std::string& path) {
  const std::string text = read_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(path + ": invalid JSON: " + e.what());
  }
  return sequence_from_json(doc, path);
}

std::string frames_csv(const std::vector<Trajectory>& frames) {
  std::string out = "increment_index,node_index,x,y,z\n";
  for (std::size_t k = 0; k < frames.size(); ++k) {
    for (std::size_t i = 0; i < frames[k].nodes.size(); ++i) {
      out += std::to_string(k) + "," + std::to_string(i) + "," + point_fields(frames[k].nodes[i]) + "\n";
    }
  }
  return out;
}

Trajectory parse_trajectory_csv(const std::string& text, const std::string& source) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw IoError(source + ": empty trajectory file");
  const auto header = split_fields(lines[0].text);
  const bool frames = header.size() == 5;
  const NumericCsv csv = frames ? parse_numeric_csv(text, source, {"increment_index", "node_index", "x", "y", "z"})
                                : parse_numeric_csv(text, source, {"node_index", "x", "y", "z"});
  const std::size_t col = frames ? 1 : 0;
  double last_increment = 0.0;
  if (frames) {
    for (const auto& r : csv.rows) last_increment = std::max(last_increment, r[0]);
  }
  Trajectory traj;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& r = csv.rows[i];
    if (frames && r[0] != last_increment) continue;
    if (r[col] != static_cast<double>(traj.nodes.size())) {
      throw IoError(source + ":" + std::to_string(csv.line_numbers[i]) + ": expected node_index " +
                    std::to_string(traj.nodes.size()));
    }
    traj.nodes.emplace_back(r[col + 1], r[col + 2], r[col + 3]);
  }
  if (traj.nodes.size() < 2) throw IoError(source + ": trajectory needs at least 2 nodes");
  return traj;
}

std::string target_csv(const std::vector<CurveSample>& samples) {
  std::string out = "t,x,y,z\n";
  for (const auto& s : samples) out += format_number(s.t) + "," + point_fields(s.point) + "\n";
  return out;
}

DensityField parse_density_csv(const std::string& text, const std::string& source, double cell_size) {
  DensityField f;
  f.cell_size = cell_size;
  for (const Line& line : content_lines(text)) {
    const std::string where = source + ":" + std::to_string(line.number);
    const auto fields = split_fields(line.text);
    if (f.ny == 0) f.nx = static_cast<int>(fields.size());
    if (static_cast<int>(fields.size()) != f.nx) {
      throw IoError(where + ": expected " + std::to_string(f.nx) + " values, got " +
                    std::to_string(fields.size()));
    }
    for (const auto& field : fields) {
      const double v = parse_field(field, where);
      if (!(v >= 0.0 && v <= 1.0)) throw IoError(where + ": density " + field + " outside [0, 1]");
      f.rho.push_back(v);
    }
    ++f.ny;
  }
  if (f.nx < 2 || f.ny < 2) throw IoError(source + ": density grid needs at least 2 x 2 values");
  return f;
}

std::string sag_csv(const Trajectory& traj, const std::vector<Vec3>& displacement) {
  std::string out = "node_index,x,y,z,x_sag,y_sag,z_sag\n";
  for (std::size_t i = 0; i < traj.nodes.size(); ++i) {
    out += std::to_string(i) + "," + point_fields(traj.nodes[i]) + "," + point_fields(displacement[i]) + "\n";
  }
  return out;
}

nlohmann::json collision_to_json(const CollisionReport& report) {
  nlohmann::json j;
  j["collided"] = report.collided;
  j["first_increment"] = report.first_increment ? nlohmann::json(*report.first_increment) : nlohmann::json();
  j["node_pair"] = report.node_pair ? nlohmann::json{report.node_pair->first, report.node_pair->second}
                                    : nlohmann::json();
  j["min_distance_mm"] = round_significant(report.min_distance);
  return j;
}

nlohmann::json synthesis_to_json(const SynthesisOutcome& outcome, const ActivationProfile& profile) {
  const SynthesisResult& r = outcome.result;
  nlohmann::json j;
  j["success"] = outcome.success;
  j["n_elements"] = r.n_elements;
  j["sequence"] = sequence_to_json(r.sequence, profile);
  j["objective_y"] = round_significant(r.objective_y);
  j["p_error"] = round_significant(r.p_error);
  j["q_error"] = round_significant(r.q_error);
  j["baseline_y"] = round_significant(r.baseline_y);
  j["complete"] = r.complete;
  j["collision_free"] = r.collision_free;
  j["generations_used"] = r.generations_used;
  nlohmann::json attempts = nlohmann::json::array();
  for (const auto& a : outcome.attempts) {
    attempts.push_back({{"n_elements", a.n_elements},
                        {"letters", a.run.best.letters()},
                        {"fitness", round_significant(a.run.score.fitness)},
                        {"objective_y", round_significant(a.run.score.objective_y)},
                        {"complete", a.run.score.complete},
                        {"collision_free", a.run.score.collision_free}});
  }
  j["attempts"] = attempts;
  return j;
}

std::string generation_log_csv(const SynthesisOutcome& outcome) {
  std::string out = "n_elements,restart,generation,best_fitness,mean_fitness\n";
  for (const auto& a : outcome.attempts) {
    for (const auto& g : a.run.log) {
      out += std::to_string(a.n_elements) + "," + std::to_string(g.restart) + "," +
             std::to_string(g.generation) + "," + format_number(g.best_fitness) + "," +
             format_number(g.mean_fitness) + "\n";
    }
  }
  return out;
}

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace morph
