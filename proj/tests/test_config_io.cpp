#include <doctest.h>

#include "morph/config.hpp"
#include "morph/io.hpp"

using namespace morph;
using nlohmann::json;

TEST_CASE("default config") {
  const RunConfig cfg = parse_config(json::object());
  CHECK(cfg.profile == ActivationProfile{});
  CHECK(cfg.sample_count == 200);
  CHECK(cfg.start_n == 10);
  CHECK(cfg.max_n == 20);
  CHECK(cfg.midpoint.rule == MidpointRule::ArcLength);
  CHECK_FALSE(cfg.frame.has_value());
  CHECK(cfg.warnings.empty());
}

TEST_CASE("config values and overrides") {
  const auto cfg = parse_config(json::parse(R"({
    "profile": {"bend_angle_deg": 20},
    "curve": {"sample_count": 2},
    "ga": {"population": 50, "seed": 7, "mutation_rate": 0.1, "start_n": 11, "max_n": 12},
    "synthesis": {"midpoint_node": "half_chain", "max_objective_ratio": 0},
    "frame": {"youngs_modulus_mpa": 1000, "shear_modulus_mpa": 400, "gravity_mm_s2": [0, 0, 0]},
    "paths": {"output": "out.json"}
  })"));
  CHECK(cfg.profile.bend_angle_deg == 20.0);
  CHECK(cfg.sample_count == 2);
  CHECK(cfg.ga.population == 50);
  CHECK(cfg.ga.seed == 7);
  CHECK(cfg.ga.mutation_rate == 0.1);
  CHECK(cfg.midpoint.rule == MidpointRule::HalfChain);
  REQUIRE(cfg.frame.has_value());
  CHECK(cfg.frame->gravity.norm() == 0.0);
  CHECK(cfg.paths.output == "out.json");
  const SynthesisContext ctx = cfg.synthesis_context();
  CHECK(ctx.max_objective_ratio == 0.0);

  const auto fixed = parse_config(json::parse(R"({"synthesis": {"midpoint_node": 7}})"));
  CHECK(fixed.midpoint.rule == MidpointRule::Fixed);
  CHECK(fixed.midpoint.node == 7);

  // Round trip through the serialised form.
  const auto again = parse_config(config_to_json(cfg));
  CHECK(config_to_json(again) == config_to_json(cfg));
}

TEST_CASE("config errors name the key") {
  auto fails_with = [](const char* text, const char* key) {
    CHECK_THROWS_WITH_AS(parse_config(json::parse(text)), doctest::Contains(key), ConfigError);
  };
  fails_with(R"({"ga": {"popsize": 10}})", "ga.popsize");
  fails_with(R"({"gaa": {}})", "gaa");
  fails_with(R"({"profile": {"element_length_mm": -1}})", "profile.element_length_mm");
  fails_with(R"({"ga": {"population": "many"}})", "ga.population");
  fails_with(R"({"ga": {"start_n": 12, "max_n": 11}})", "ga.max_n");
  fails_with(R"({"curve": {"sample_count": 1}})", "curve.sample_count");
  fails_with(R"({"synthesis": {"midpoint_node": "middle"}})", "synthesis.midpoint_node");
  fails_with(R"({"frame": {"youngs_modulus_mpa": 1000}})", "frame.shear_modulus_mpa");
  fails_with(R"({"frame": {"youngs_modulus_mpa": 1, "shear_modulus_mpa": 1, "gravity_mm_s2": [0, 1]}})",
             "frame.gravity_mm_s2");
  fails_with(R"({"collision": {"threshold_mm": 0}})", "collision.threshold_mm");
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), IoError);
}

TEST_CASE("wide t range is accepted with a warning") {
  const auto cfg = parse_config(json::parse(R"({"curve": {"t_min": -3, "t_max": 3}})"));
  CHECK(cfg.warnings.size() == 1);
  CHECK(cfg.curve.t_max == 3.0);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(130.0) == "130");
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  CHECK(format_number(-14.829485219790299) == "-14.8294852");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(round_significant(1.0 / 3.0) == 0.333333333);
}

TEST_CASE("numeric CSV parsing") {
  const auto csv = parse_numeric_csv("a,b\n1,2\n\n 3 , 4\n", "f.csv", {"a", "b"});
  REQUIRE(csv.rows.size() == 2);
  CHECK(csv.rows[1][0] == 3.0);
  CHECK(csv.line_numbers[1] == 4);
  CHECK_THROWS_WITH_AS(parse_numeric_csv("a,b\n1\n", "f.csv", {"a", "b"}), doctest::Contains("f.csv:2"), IoError);
  CHECK_THROWS_WITH_AS(parse_numeric_csv("a,b\n1,nan\n", "f.csv", {"a", "b"}), doctest::Contains("f.csv:2"),
                       IoError);
  CHECK_THROWS_AS(parse_numeric_csv("", "f.csv", {"a"}), IoError);
}

TEST_CASE("sequence documents") {
  const Sequence seq = Sequence::from_letters("fbbd");
  const json doc = sequence_to_json(seq, {});
  CHECK(doc["elements"] == json::array({"f", "b", "b", "d"}));
  const auto back = sequence_from_json(doc, "s.json");
  CHECK(back.sequence == seq);
  CHECK(back.has_profile);
  CHECK(back.profile == ActivationProfile{});

  CHECK_THROWS_AS(sequence_from_json(json::parse(R"({"elements": ["a", "h"]})"), "s.json"), IoError);
  CHECK_THROWS_AS(sequence_from_json(json::parse(R"({"elements": []})"), "s.json"), IoError);
  CHECK_THROWS_AS(sequence_from_json(json::parse(R"({"elements": ["a"], "extra": 1})"), "s.json"), IoError);
  CHECK_THROWS_AS(sequence_from_json(json::parse(R"({"elements": ["a"], "profile": {"x": 1}})"), "s.json"),
                  IoError);

  const json result = {{"success", true}, {"sequence", doc}};
  CHECK(sequence_from_json(result, "r.json").sequence == seq);
}

TEST_CASE("trajectory CSV round trip") {
  const auto s = forward_kinematics(Sequence::from_letters("bdfa"), {}, 0.5);
  const std::string text = frames_csv({s.trajectory, s.trajectory});
  CHECK(text.rfind("increment_index,node_index,x,y,z\n", 0) == 0);
  const Trajectory back = parse_trajectory_csv(text, "t.csv");
  REQUIRE(back.size() == 5);
  for (std::size_t i = 0; i < back.size(); ++i) CHECK((back.nodes[i] - s.trajectory.nodes[i]).norm() < 1e-7);

  const Trajectory plain = parse_trajectory_csv("node_index,x,y,z\n0,0,0,0\n1,10,0,0\n", "t.csv");
  CHECK(plain.size() == 2);
  CHECK_THROWS_WITH_AS(parse_trajectory_csv("node_index,x,y,z\n0,0,0,0\n2,10,0,0\n", "t.csv"),
                       doctest::Contains("t.csv:3"), IoError);
}

TEST_CASE("density CSV") {
  const auto f = parse_density_csv("0,0.5,1\n0,0.25,1\n", "d.csv", 2.0);
  CHECK(f.nx == 3);
  CHECK(f.ny == 2);
  CHECK(f.at(1, 1) == 0.25);
  CHECK(f.cell_size == 2.0);
  CHECK_THROWS_WITH_AS(parse_density_csv("0,1\n0\n", "d.csv", 1.0), doctest::Contains("d.csv:2"), IoError);
  CHECK_THROWS_WITH_AS(parse_density_csv("0,1\n0,2\n", "d.csv", 1.0), doctest::Contains("d.csv:2"), IoError);
  CHECK_THROWS_AS(parse_density_csv("0,1\n", "d.csv", 1.0), IoError);
}

TEST_CASE("collision JSON") {
  CollisionReport r;
  r.collided = true;
  r.first_increment = 12;
  r.node_pair = std::pair<std::size_t, std::size_t>{0, 30};
  r.min_distance = 0.28633772712345;
  const json j = collision_to_json(r);
  CHECK(j["collided"] == true);
  CHECK(j["node_pair"] == json::array({0, 30}));
  CHECK(j["min_distance_mm"].get<double>() == 0.286337727);
  CHECK(collision_to_json(CollisionReport{})["first_increment"].is_null());
}
