#include <doctest.h>

#include <random>

#include "morph/calibration.hpp"
#include "morph/errors.hpp"

using namespace morph;

TEST_CASE("chain average") {
  CHECK(chain_average(250.0, 10) == 25.0);
  CHECK(chain_average(12.0, 3) == 4.0);
  CHECK(chain_average(0.0, 7) == 0.0);
  CHECK_THROWS_AS(chain_average(10.0, 0), std::invalid_argument);
}

TEST_CASE("strain lookup") {
  MeasurementTable t;
  t.rows = {{0.09, 10.0}, {0.16, 31.0}};
  CHECK(strain_to_angle(t, 0.13) == doctest::Approx(10.0 + 21.0 * 4.0 / 7.0).epsilon(1e-14));
  CHECK(strain_to_angle(t, 0.09) == 10.0);
  CHECK(strain_to_angle(t, 0.16) == 31.0);
  CHECK_THROWS_AS(strain_to_angle(t, 0.17), ExtrapolationError);
  CHECK_THROWS_AS(strain_to_angle(t, 0.05), ExtrapolationError);

  const MeasurementTable twist = proportional_table({0.13, 4.0}, ElementClass::Twist);
  CHECK(strain_to_angle(twist, 0.13) == 4.0);
  CHECK(strain_to_angle(default_bend_table(), 0.13) == 25.0);
  CHECK(strain_to_angle(default_twist_table(), 0.13) == 4.0);

  MeasurementTable bad;
  bad.rows = {{0.1, 1.0}, {0.1, 2.0}};
  CHECK_THROWS_AS(strain_to_angle(bad, 0.1), std::invalid_argument);
  bad.rows = {{0.1, 1.0}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("lookup reproduces knots and stays monotone") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(0.001, 0.02);
  MeasurementTable t;
  double s = 0.08, a = 5.0;
  for (int i = 0; i < 8; ++i) {
    t.rows.push_back({s, a});
    s += u(rng);
    a += 100 * u(rng);
  }
  for (const auto& r : t.rows) CHECK(strain_to_angle(t, r.strain) == r.angle_deg);
  double prev = -INFINITY;
  for (int i = 0; i <= 500; ++i) {
    const double q = t.rows.front().strain + (t.rows.back().strain - t.rows.front().strain) * i / 500.0;
    const double v = strain_to_angle(t, q);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("chain average then lookup round-trips") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(1.0, 40.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 12;
    const double per_element = u(rng);
    MeasurementTable t;
    t.rows = {{0.09, chain_average(0.7 * per_element * n, n)}, {0.13, chain_average(per_element * n, n)},
              {0.16, chain_average(1.2 * per_element * n, n)}};
    CHECK(std::abs(strain_to_angle(t, 0.13) - per_element) < 1e-12);
  }
}

TEST_CASE("calibrated profile") {
  const auto p = calibrated_profile(default_bend_table(), default_twist_table(), 0.13);
  CHECK(p == ActivationProfile{});
  const auto half = calibrated_profile(default_bend_table(), default_twist_table(), 0.065);
  CHECK(half.bend_angle_deg == doctest::Approx(12.5));
  CHECK(half.twist_angle_deg == doctest::Approx(2.0));
  CHECK_THROWS_AS(calibrated_profile(default_twist_table(), default_twist_table(), 0.13), std::invalid_argument);
  const ReferenceMeasurements ref;
  CHECK(ref.fea_twist_angle_deg == 3.5);
  CHECK(ref.fea_bend_angle_deg == 33.0);
}

TEST_CASE("measurement CSV") {
  auto t = parse_measurement_csv("strain,angle_deg\n0.09,200\n0.16,310\n", "m.csv", ElementClass::Bend);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1].angle_deg == 310.0);
  t = parse_measurement_csv("strain,angle_deg\n0.13,4\n", "m.csv", ElementClass::Twist);
  CHECK(t.rows.size() == 2);
  CHECK(strain_to_angle(t, 0.13) == 4.0);

  CHECK_THROWS_WITH_AS(parse_measurement_csv("strain,angle\n0.1,1\n", "m.csv", ElementClass::Bend),
                       doctest::Contains("m.csv:1"), IoError);
  CHECK_THROWS_WITH_AS(parse_measurement_csv("strain,angle_deg\n0.1,1\n0.2,x\n", "m.csv", ElementClass::Bend),
                       doctest::Contains("m.csv:3"), IoError);
  CHECK_THROWS_WITH_AS(parse_measurement_csv("strain,angle_deg\n0.2,1\n0.1,2\n", "m.csv", ElementClass::Bend),
                       doctest::Contains("m.csv:3"), IoError);
  CHECK_THROWS_AS(load_measurement_csv("/nonexistent/m.csv", ElementClass::Bend), IoError);
}
