#include "morph/config.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "morph/io.hpp"

namespace morph {

namespace {

using nlohmann::json;

// Reads typed keys from one JSON object and rejects keys never asked for.
class Section {
 public:
  Section(const json& doc, std::string name) : doc_(doc), name_(std::move(name)) {
    if (!doc_.is_object()) throw ConfigError(name_ + " must be a JSON object");
  }

  template <class T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    auto it = doc_.find(key);
    if (it == doc_.end()) return;
    out = convert<T>(*it, key);
  }

  template <class T>
  void read_optional(const char* key, std::optional<T>& out) {
    seen_.insert(key);
    auto it = doc_.find(key);
    if (it == doc_.end() || it->is_null()) return;
    out = convert<T>(*it, key);
  }

  bool has(const char* key) const { return doc_.contains(key); }
  const json& raw(const char* key) {
    seen_.insert(key);
    return doc_.at(key);
  }
  std::string path(const std::string& key) const { return name_ + "." + key; }

  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown key " + path(key));
    }
  }

 private:
  template <class T>
  T convert(const json& v, const char* key) const {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(path(key) + " must be a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(path(key) + " must be a string");
      return v.get<std::string>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(path(key) + " must be a number");
      return v.get<T>();
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(path(key) + " must be a non-negative integer");
      }
      return static_cast<T>(v.get<unsigned long long>());
    } else {
      if (!v.is_number_integer()) throw ConfigError(path(key) + " must be an integer");
      return v.get<T>();
    }
  }

  const json& doc_;
  std::string name_;
  std::set<std::string> seen_;
};

template <class Fn>
void with_section(const json& doc, const char* name, Fn&& fn) {
  auto it = doc.find(name);
  if (it == doc.end()) return;
  Section s(*it, name);
  fn(s);
  s.finish();
}

// Module validators throw std::invalid_argument with the key already named.
template <class Fn>
void as_config_error(Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void read_profile(Section& s, ActivationProfile& p) {
  s.read("element_length_mm", p.element_length);
  s.read("bend_angle_deg", p.bend_angle_deg);
  s.read("twist_angle_deg", p.twist_angle_deg);
  s.read("bend_offset_axial", p.bend_offset_axial);
  s.read("bend_offset_lateral", p.bend_offset_lateral);
}

}  // namespace

void RunConfig::validate() const {
  as_config_error([&] {
    synthesis_context().validate();
    ga.validate();
    if (frame) frame->validate();
  });
  if (sample_count < 2) throw ConfigError("curve.sample_count must be >= 2");
  if (start_n < 1) throw ConfigError("ga.start_n must be >= 1");
  if (max_n < start_n) throw ConfigError("ga.max_n must be >= ga.start_n");
  if (midpoint.rule == MidpointRule::Fixed && (midpoint.node < 1 || midpoint.node > start_n)) {
    throw ConfigError("synthesis.midpoint_node must lie in [1, ga.start_n]");
  }
}

SynthesisContext RunConfig::synthesis_context() const {
  SynthesisContext ctx;
  ctx.profile = profile;
  ctx.curve = curve;
  ctx.weights = weights;
  ctx.collision = collision;
  ctx.midpoint = midpoint;
  ctx.align_root_tangent = align_root_tangent;
  ctx.require_complete = require_complete;
  ctx.max_objective_ratio = max_objective_ratio;
  return ctx;
}

ActivationProfile profile_from_json(const json& doc, const std::string& where) {
  ActivationProfile p;
  Section s(doc, where);
  read_profile(s, p);
  s.finish();
  as_config_error([&] { p.validate(); });
  return p;
}

json profile_to_json(const ActivationProfile& p) {
  return {{"element_length_mm", round_significant(p.element_length)},
          {"bend_angle_deg", round_significant(p.bend_angle_deg)},
          {"twist_angle_deg", round_significant(p.twist_angle_deg)},
          {"bend_offset_axial", round_significant(p.bend_offset_axial)},
          {"bend_offset_lateral", round_significant(p.bend_offset_lateral)}};
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> sections = {"profile",   "curve",     "weights", "collision",
                                                 "ga",        "synthesis", "frame",   "paths"};
  for (const auto& [key, value] : doc.items()) {
    if (!sections.count(key)) throw ConfigError("unknown key " + key);
  }

  RunConfig cfg;
  with_section(doc, "profile", [&](Section& s) { read_profile(s, cfg.profile); });
  with_section(doc, "curve", [&](Section& s) {
    s.read("coeff_xy", cfg.curve.coeff_xy);
    s.read("coeff_z", cfg.curve.coeff_z);
    s.read("t_min", cfg.curve.t_min);
    s.read("t_max", cfg.curve.t_max);
    s.read("sample_count", cfg.sample_count);
  });
  const double limit = 0.75 * std::numbers::pi;
  if (cfg.curve.t_min < -limit - 1e-12 || cfg.curve.t_max > limit + 1e-12) {
    cfg.warnings.push_back("curve t range [" + format_number(cfg.curve.t_min) + ", " +
                           format_number(cfg.curve.t_max) + "] extends beyond +-3pi/4");
  }
  with_section(doc, "weights", [&](Section& s) {
    s.read("c0", cfg.weights.c0);
    s.read("c1", cfg.weights.c1);
    s.read("w_m", cfg.weights.w_m);
  });
  with_section(doc, "collision", [&](Section& s) {
    s.read("n_increments", cfg.collision.n_increments);
    s.read("threshold_mm", cfg.collision.threshold);
    s.read("neighbor_exclusion", cfg.collision.neighbor_exclusion);
  });
  with_section(doc, "ga", [&](Section& s) {
    s.read("population", cfg.ga.population);
    s.read("generations", cfg.ga.generations);
    s.read("tournament_k", cfg.ga.tournament_k);
    s.read("crossover_rate", cfg.ga.crossover_rate);
    s.read_optional("mutation_rate", cfg.ga.mutation_rate);
    s.read("elitism", cfg.ga.elitism);
    s.read("seed", cfg.ga.seed);
    s.read("collision_penalty", cfg.ga.collision_penalty);
    s.read("incompleteness_penalty", cfg.ga.incompleteness_penalty);
    s.read("restarts", cfg.ga.restarts);
    s.read("threads", cfg.ga.threads);
    s.read("start_n", cfg.start_n);
    s.read("max_n", cfg.max_n);
  });
  with_section(doc, "synthesis", [&](Section& s) {
    if (s.has("midpoint_node")) {
      const json& m = s.raw("midpoint_node");
      if (m == "arc_length") {
        cfg.midpoint.rule = MidpointRule::ArcLength;
      } else if (m == "half_chain") {
        cfg.midpoint.rule = MidpointRule::HalfChain;
      } else if (m.is_number_integer() && m.get<long long>() >= 1) {
        cfg.midpoint = {MidpointRule::Fixed, m.get<std::size_t>()};
      } else {
        throw ConfigError("synthesis.midpoint_node must be \"arc_length\", \"half_chain\" or a node index >= 1");
      }
    }
    s.read("align_root_tangent", cfg.align_root_tangent);
    s.read("require_complete", cfg.require_complete);
    s.read("max_objective_ratio", cfg.max_objective_ratio);
  });
  with_section(doc, "frame", [&](Section& s) {
    FrameProperties f;
    s.read("youngs_modulus_mpa", f.youngs_modulus);
    s.read("shear_modulus_mpa", f.shear_modulus);
    s.read("area_mm2", f.area);
    s.read("I_y_mm4", f.I_y);
    s.read("I_z_mm4", f.I_z);
    s.read("J_mm4", f.J);
    s.read("density_g_mm3", f.density);
    if (s.has("gravity_mm_s2")) {
      const json& g = s.raw("gravity_mm_s2");
      if (!g.is_array() || g.size() != 3 || !g[0].is_number() || !g[1].is_number() || !g[2].is_number()) {
        throw ConfigError("frame.gravity_mm_s2 must be an array of 3 numbers");
      }
      f.gravity = Vec3(g[0].get<double>(), g[1].get<double>(), g[2].get<double>());
    }
    cfg.frame = f;
  });
  with_section(doc, "paths", [&](Section& s) {
    s.read("sequence", cfg.paths.sequence);
    s.read("trajectory", cfg.paths.trajectory);
    s.read("density", cfg.paths.density);
    s.read("bend_measurements", cfg.paths.bend_measurements);
    s.read("twist_measurements", cfg.paths.twist_measurements);
    s.read("output", cfg.paths.output);
    s.read("log", cfg.paths.log);
  });
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
  try {
    return parse_config(doc);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["profile"] = profile_to_json(cfg.profile);
  j["curve"] = {{"coeff_xy", cfg.curve.coeff_xy}, {"coeff_z", cfg.curve.coeff_z},
                {"t_min", cfg.curve.t_min},       {"t_max", cfg.curve.t_max},
                {"sample_count", cfg.sample_count}};
  j["weights"] = {{"c0", cfg.weights.c0}, {"c1", cfg.weights.c1}, {"w_m", cfg.weights.w_m}};
  j["collision"] = {{"n_increments", cfg.collision.n_increments},
                    {"threshold_mm", cfg.collision.threshold},
                    {"neighbor_exclusion", cfg.collision.neighbor_exclusion}};
  j["ga"] = {{"population", cfg.ga.population},
             {"generations", cfg.ga.generations},
             {"tournament_k", cfg.ga.tournament_k},
             {"crossover_rate", cfg.ga.crossover_rate},
             {"mutation_rate", cfg.ga.mutation_rate ? json(*cfg.ga.mutation_rate) : json()},
             {"elitism", cfg.ga.elitism},
             {"seed", cfg.ga.seed},
             {"collision_penalty", cfg.ga.collision_penalty},
             {"incompleteness_penalty", cfg.ga.incompleteness_penalty},
             {"restarts", cfg.ga.restarts},
             {"threads", cfg.ga.threads},
             {"start_n", cfg.start_n},
             {"max_n", cfg.max_n}};
  json midpoint;
  switch (cfg.midpoint.rule) {
    case MidpointRule::ArcLength: midpoint = "arc_length"; break;
    case MidpointRule::HalfChain: midpoint = "half_chain"; break;
    case MidpointRule::Fixed: midpoint = cfg.midpoint.node; break;
  }
  j["synthesis"] = {{"midpoint_node", midpoint},
                    {"align_root_tangent", cfg.align_root_tangent},
                    {"require_complete", cfg.require_complete},
                    {"max_objective_ratio", cfg.max_objective_ratio}};
  if (cfg.frame) {
    const FrameProperties& f = *cfg.frame;
    j["frame"] = {{"youngs_modulus_mpa", f.youngs_modulus}, {"shear_modulus_mpa", f.shear_modulus},
                  {"area_mm2", f.area},                     {"I_y_mm4", f.I_y},
                  {"I_z_mm4", f.I_z},                       {"J_mm4", f.J},
                  {"density_g_mm3", f.density},
                  {"gravity_mm_s2", {f.gravity.x(), f.gravity.y(), f.gravity.z()}}};
  }
  j["paths"] = {{"sequence", cfg.paths.sequence},
                {"trajectory", cfg.paths.trajectory},
                {"density", cfg.paths.density},
                {"bend_measurements", cfg.paths.bend_measurements},
                {"twist_measurements", cfg.paths.twist_measurements},
                {"output", cfg.paths.output},
                {"log", cfg.paths.log}};
  return j;
}

}  // namespace morph
