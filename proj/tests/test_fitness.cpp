#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "morph/fitness.hpp"
#include "morph/kinematics.hpp"

using namespace morph;

namespace {
constexpr double kPi = std::numbers::pi;

TrialAnchors as_trial(const AnchorSet& a) { return {a.midpoint, a.tip, a.tip_phi, a.tip_theta}; }
}  // namespace

TEST_CASE("trial anchors") {
  const ActivationProfile p;
  auto s = forward_kinematics(Sequence::from_letters(std::string(13, 'a')), p, 1.0);
  TrialAnchors t = trial_anchors(s.trajectory, s.tip, 7);
  CHECK((t.midpoint - Vec3(70, 0, 0)).norm() == 0.0);
  CHECK((t.tip - Vec3(130, 0, 0)).norm() == 0.0);
  CHECK(t.tip_phi == 0.0);
  CHECK(t.tip_theta == doctest::Approx(kPi / 2));
  t = trial_anchors(s.trajectory, s.tip, 0);
  CHECK(t.midpoint.norm() == 0.0);

  s = forward_kinematics(Sequence::from_letters("b"), p, 1.0);
  t = trial_anchors(s.trajectory, s.tip, 1);
  CHECK(t.tip_phi == doctest::Approx(25 * kPi / 180).epsilon(1e-14));
  CHECK(t.tip_theta == doctest::Approx(kPi / 2));

  CHECK_THROWS_AS(trial_anchors(Trajectory{}, Pose{}, 0), std::invalid_argument);
  CHECK_THROWS_AS(trial_anchors(s.trajectory, s.tip, 5), std::out_of_range);
}

TEST_CASE("position error") {
  const FitnessWeights w;
  AnchorSet ideal;
  ideal.tip = Vec3(3, 4, 5);
  ideal.midpoint = Vec3(-1, 2, 0);
  TrialAnchors t = as_trial(ideal);
  CHECK(position_error(t, ideal, w) == 0.0);
  t.tip += Vec3(1, 0, 0);
  CHECK(position_error(t, ideal, w) == doctest::Approx(1.0).epsilon(1e-12));
  t = as_trial(ideal);
  t.midpoint += Vec3(0, 1, 0);
  CHECK(position_error(t, ideal, w) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

  // Common rigid translation leaves P unchanged.
  std::mt19937_64 rng(23);
  std::normal_distribution<double> n(0, 10);
  for (int i = 0; i < 100; ++i) {
    TrialAnchors a{Vec3(n(rng), n(rng), n(rng)), Vec3(n(rng), n(rng), n(rng)), 0, 0};
    AnchorSet b;
    b.midpoint = Vec3(n(rng), n(rng), n(rng));
    b.tip = Vec3(n(rng), n(rng), n(rng));
    const Vec3 shift(n(rng), n(rng), n(rng));
    const double before = position_error(a, b, w);
    a.midpoint += shift;
    a.tip += shift;
    b.midpoint += shift;
    b.tip += shift;
    CHECK(position_error(a, b, w) == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("orientation error") {
  AnchorSet ideal;
  ideal.tip_phi = 1.0;
  ideal.tip_theta = 1.2;
  TrialAnchors t = as_trial(ideal);
  CHECK(orientation_error(t, ideal) == 0.0);
  t.tip_phi += 0.3;
  t.tip_theta += 0.4;
  CHECK(orientation_error(t, ideal) == doctest::Approx(0.5).epsilon(1e-12));

  ideal.tip_phi = kPi - 0.01;
  ideal.tip_theta = 1.0;
  t = as_trial(ideal);
  t.tip_phi = -kPi + 0.01;
  CHECK(orientation_error(t, ideal) == doctest::Approx(0.02).epsilon(1e-12));

  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
}

TEST_CASE("objective") {
  const FitnessWeights w;
  CHECK(objective(0, 0, w) == 0.0);
  CHECK(objective(1, 1, w) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(objective(2.23607, 0.5, w) == doctest::Approx(4.73607).epsilon(1e-12));
  double prev = -1;
  for (int i = 0; i < 50; ++i) {
    const double y = objective(0.1 * i, 0.05 * i, w);
    CHECK(y >= prev);
    prev = y;
  }
  FitnessWeights bad;
  bad.c1 = -1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
