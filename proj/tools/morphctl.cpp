// morphctl: command-line driver for knot synthesis and its supporting tools.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "morph/calibration.hpp"
#include "morph/collision.hpp"
#include "morph/config.hpp"
#include "morph/errors.hpp"
#include "morph/frame.hpp"
#include "morph/io.hpp"
#include "morph/kinematics.hpp"
#include "morph/materials.hpp"
#include "morph/synthesis.hpp"
#include "morph/target_curve.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSynthesis = 3;
constexpr int kExitIo = 4;

struct Options {
  std::string config;
  std::optional<int> threads;
  std::string out;

  // synth
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> start_n;
  std::optional<std::size_t> max_n;
  std::string log;

  // target
  std::optional<int> samples;

  // simulate / collide
  std::string sequence;
  std::string letters;
  std::optional<int> increments;
  bool full = false;

  // sag
  std::string trajectory;

  // export-stl
  std::string density;
  double level = 0.5;
  double depth = 2.0;
  std::string phase = "material2";
  double cell_size = 1.0;

  // calibrate
  std::string bend_csv;
  std::string twist_csv;
  double strain = 0.13;
  int bend_chain = 1;
  int twist_chain = 1;
};

void emit(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    std::cout.flush();
  } else {
    morph::write_file(path, bytes);
  }
}

morph::RunConfig load(const Options& opt) {
  morph::RunConfig cfg;
  if (!opt.config.empty()) cfg = morph::load_config(opt.config);
  if (opt.threads) cfg.ga.threads = *opt.threads;
  if (opt.seed) cfg.ga.seed = *opt.seed;
  if (opt.start_n) cfg.start_n = *opt.start_n;
  if (opt.max_n) cfg.max_n = *opt.max_n;
  if (opt.samples) cfg.sample_count = *opt.samples;
  cfg.validate();
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
  return cfg;
}

std::string pick(const std::string& flag, const std::string& configured, const char* what) {
  const std::string& p = flag.empty() ? configured : flag;
  if (p.empty()) throw morph::ConfigError(std::string("no ") + what + " given (flag or paths section)");
  return p;
}

// Sequence from --letters, --sequence or paths.sequence; the document's
// profile replaces the configured one when present.
morph::Sequence input_sequence(const Options& opt, morph::RunConfig& cfg) {
  if (!opt.letters.empty()) return morph::Sequence::from_letters(opt.letters);
  const auto doc = morph::load_sequence(pick(opt.sequence, cfg.paths.sequence, "sequence file"));
  if (doc.has_profile) cfg.profile = doc.profile;
  return doc.sequence;
}

int run_target(const Options& opt) {
  const auto cfg = load(opt);
  emit(opt.out.empty() ? cfg.paths.output : opt.out, morph::target_csv(morph::sample_curve(cfg.curve, cfg.sample_count)));
  return 0;
}

int run_synth(const Options& opt) {
  const auto cfg = load(opt);
  const auto outcome = morph::synthesize(cfg.ga, cfg.start_n, cfg.max_n, cfg.synthesis_context());
  emit(opt.out.empty() ? cfg.paths.output : opt.out,
       morph::dump_json(morph::synthesis_to_json(outcome, cfg.profile)));
  const std::string log = opt.log.empty() ? cfg.paths.log : opt.log;
  if (!log.empty()) morph::write_file(log, morph::generation_log_csv(outcome));
  if (!outcome.success) {
    std::cerr << "synthesis failed: no acceptable design up to n = " << cfg.max_n << "\n";
    return kExitSynthesis;
  }
  return 0;
}

int run_simulate(const Options& opt) {
  auto cfg = load(opt);
  const auto seq = input_sequence(opt, cfg);
  const int n = opt.increments.value_or(cfg.collision.n_increments);
  if (n < 1) throw morph::ConfigError("--increments must be >= 1");
  std::vector<morph::Trajectory> frames;
  for (int k = 0; k <= n; ++k) {
    auto traj = morph::forward_kinematics(seq, cfg.profile, static_cast<double>(k) / n).trajectory;
    frames.push_back(opt.full ? morph::reflect_about_root(traj) : traj);
  }
  emit(opt.out.empty() ? cfg.paths.output : opt.out, morph::frames_csv(frames));
  return 0;
}

int run_collide(const Options& opt) {
  auto cfg = load(opt);
  const auto seq = input_sequence(opt, cfg);
  const auto report = morph::sweep_collision_check(seq, cfg.profile, cfg.collision);
  emit(opt.out.empty() ? cfg.paths.output : opt.out, morph::dump_json(morph::collision_to_json(report)));
  return 0;
}

int run_sag(const Options& opt) {
  const auto cfg = load(opt);
  if (!cfg.frame) throw morph::ConfigError("frame section is required for sag");
  const std::string path = pick(opt.trajectory, cfg.paths.trajectory, "trajectory file");
  const auto traj = morph::parse_trajectory_csv(morph::read_file(path), path);
  const auto sol = morph::solve_sag(traj, *cfg.frame);
  std::vector<morph::Vec3> disp;
  for (std::size_t i = 0; i < traj.nodes.size(); ++i) disp.push_back(sol.displacement(i));
  emit(opt.out.empty() ? cfg.paths.output : opt.out, morph::sag_csv(traj, disp));
  return 0;
}

int run_export_stl(const Options& opt) {
  const auto cfg = load(opt);
  morph::Phase phase;
  if (opt.phase == "material2") {
    phase = morph::Phase::Material2;
  } else if (opt.phase == "material1") {
    phase = morph::Phase::Material1;
  } else {
    throw morph::ConfigError("--phase must be material1 or material2");
  }
  if (!(opt.cell_size > 0.0)) throw morph::ConfigError("--cell-size must be positive");
  if (!(opt.depth > 0.0)) throw morph::ConfigError("--depth must be positive");
  const std::string path = pick(opt.density, cfg.paths.density, "density file");
  const auto field = morph::parse_density_csv(morph::read_file(path), path, opt.cell_size);
  const auto region = morph::active_region(field, opt.level, phase);
  emit(opt.out.empty() ? cfg.paths.output : opt.out,
       morph::export_stl(morph::extrude_to_mesh(region, opt.depth)));
  return 0;
}

int run_calibrate(const Options& opt) {
  const auto cfg = load(opt);
  auto table = [&](const std::string& flag, const std::string& configured, morph::ElementClass cls,
                   int chain) {
    const std::string path = flag.empty() ? configured : flag;
    auto t = path.empty() ? (cls == morph::ElementClass::Bend ? morph::default_bend_table()
                                                              : morph::default_twist_table())
                          : morph::load_measurement_csv(path, cls);
    if (!path.empty()) {
      for (auto& row : t.rows) row.angle_deg = morph::chain_average(row.angle_deg, chain);
    }
    return t;
  };
  if (opt.bend_chain < 1 || opt.twist_chain < 1) throw morph::ConfigError("chain lengths must be >= 1");
  const auto bend = table(opt.bend_csv, cfg.paths.bend_measurements, morph::ElementClass::Bend, opt.bend_chain);
  const auto twist =
      table(opt.twist_csv, cfg.paths.twist_measurements, morph::ElementClass::Twist, opt.twist_chain);
  const auto profile = morph::calibrated_profile(bend, twist, opt.strain, cfg.profile);
  emit(opt.out.empty() ? cfg.paths.output : opt.out, morph::dump_json(morph::profile_to_json(profile)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequence synthesis and analysis for programmable knot-tying chains"};
  app.require_subcommand(1);
  Options opt;
  if (const char* env = std::getenv("MORPH_CONFIG")) opt.config = env;
  app.add_option("-c,--config", opt.config, "JSON run config (default: $MORPH_CONFIG)");
  app.add_option("--threads", opt.threads, "fitness worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber);

  auto out_flag = [&](CLI::App* sub) { sub->add_option("-o,--out", opt.out, "output file (default stdout)"); };
  auto seq_flags = [&](CLI::App* sub) {
    sub->add_option("-s,--sequence", opt.sequence, "sequence JSON");
    sub->add_option("-l,--letters", opt.letters, "sequence as letters a..g");
  };

  auto* target = app.add_subcommand("target", "sample the ideal curve as t,x,y,z CSV");
  target->add_option("--samples", opt.samples, "sample count");
  out_flag(target);

  auto* synth = app.add_subcommand("synth", "run the escalating GA synthesis");
  synth->add_option("--seed", opt.seed);
  synth->add_option("--start-n", opt.start_n);
  synth->add_option("--max-n", opt.max_n);
  synth->add_option("--log", opt.log, "generation log CSV");
  out_flag(synth);

  auto* simulate = app.add_subcommand("simulate", "frames CSV over activation increments");
  seq_flags(simulate);
  simulate->add_option("--increments", opt.increments, "number of increments (default collision.n_increments)");
  simulate->add_flag("--full", opt.full, "emit the reflected full knot");
  out_flag(simulate);

  auto* collide = app.add_subcommand("collide", "self-collision sweep as JSON");
  seq_flags(collide);
  out_flag(collide);

  auto* sag = app.add_subcommand("sag", "gravity sag of a trajectory");
  sag->add_option("-t,--trajectory", opt.trajectory, "trajectory CSV");
  out_flag(sag);

  auto* stl = app.add_subcommand("export-stl", "extrude a density field to binary STL");
  stl->add_option("-d,--density", opt.density, "density CSV (ny rows x nx columns)");
  stl->add_option("--level", opt.level, "iso level")->capture_default_str();
  stl->add_option("--depth", opt.depth, "extrusion depth (mm)")->capture_default_str();
  stl->add_option("--phase", opt.phase, "material2 (rho >= level) or material1")->capture_default_str();
  stl->add_option("--cell-size", opt.cell_size, "lattice spacing (mm)")->capture_default_str();
  out_flag(stl);

  auto* calibrate = app.add_subcommand("calibrate", "activation profile from measurements");
  calibrate->add_option("--bend", opt.bend_csv, "bend measurement CSV");
  calibrate->add_option("--twist", opt.twist_csv, "twist measurement CSV");
  calibrate->add_option("--strain", opt.strain, "programming strain")->capture_default_str();
  calibrate->add_option("--bend-chain", opt.bend_chain, "elements in the measured bend chain")
      ->capture_default_str();
  calibrate->add_option("--twist-chain", opt.twist_chain, "elements in the measured twist chain")
      ->capture_default_str();
  out_flag(calibrate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*target) return run_target(opt);
    if (*synth) return run_synth(opt);
    if (*simulate) return run_simulate(opt);
    if (*collide) return run_collide(opt);
    if (*sag) return run_sag(opt);
    if (*stl) return run_export_stl(opt);
    if (*calibrate) return run_calibrate(opt);
  } catch (const morph::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const morph::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
