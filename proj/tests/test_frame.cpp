#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "morph/frame.hpp"

using namespace morph;

namespace {

FrameProperties props() {
  FrameProperties p;
  p.youngs_modulus = 1200.0;
  p.shear_modulus = 450.0;
  return p;
}

Trajectory straight(int segments, double length = 130.0, const Vec3& dir = Vec3::UnitX()) {
  Trajectory t;
  for (int i = 0; i <= segments; ++i) t.nodes.push_back(dir * (length * i / segments));
  return t;
}

}  // namespace

TEST_CASE("property validation") {
  FrameProperties p;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("youngs_modulus"), std::invalid_argument);
  p = props();
  CHECK_NOTHROW(p.validate());
  p.J = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("local stiffness is symmetric with six rigid modes") {
  const auto k = local_frame_stiffness(10.0, props());
  CHECK((k - k.transpose()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 12, 12>> es(k);
  const auto ev = es.eigenvalues();
  const double scale = ev.maxCoeff();
  int zeros = 0;
  for (int i = 0; i < 12; ++i) {
    CHECK(ev[i] > -1e-9 * scale);
    zeros += std::abs(ev[i]) < 1e-9 * scale;
  }
  CHECK(zeros == 6);
}

TEST_CASE("element triad") {
  const Mat3 t = element_triad(Vec3::Zero(), Vec3(3, 4, 0));
  CHECK((t * t.transpose() - Mat3::Identity()).norm() < 1e-14);
  CHECK(t.determinant() == doctest::Approx(1.0));
  CHECK((t.row(0).transpose() - Vec3(0.6, 0.8, 0)).norm() < 1e-15);
  const Mat3 v = element_triad(Vec3::Zero(), Vec3(0, 0, 5));
  CHECK((v * v.transpose() - Mat3::Identity()).norm() < 1e-14);
}

TEST_CASE("tip-loaded cantilever") {
  FrameProperties p = props();
  p.density = 0.0;
  const double P = 0.01, L = 130.0;
  const NodalLoad tip{13, Vec3(0, 0, -P), Vec3::Zero()};
  const auto sol = solve_sag(straight(13), p, std::span(&tip, 1));
  const double exact = P * L * L * L / (3 * p.youngs_modulus * p.I_y);
  CHECK(std::abs(-sol.displacement(13).z() - exact) <= 1e-6 * exact);

  const NodalLoad side{13, Vec3(0, P, 0), Vec3::Zero()};
  const auto s2 = solve_sag(straight(13), p, std::span(&side, 1));
  const double exact_y = P * L * L * L / (3 * p.youngs_modulus * p.I_z);
  CHECK(std::abs(s2.displacement(13).y() - exact_y) <= 1e-6 * exact_y);

  const NodalLoad axial{13, Vec3(P, 0, 0), Vec3::Zero()};
  const auto s3 = solve_sag(straight(13), p, std::span(&axial, 1));
  CHECK(s3.displacement(13).x() == doctest::Approx(P * L / (p.youngs_modulus * p.area)).epsilon(1e-9));

  const NodalLoad torque{13, Vec3::Zero(), Vec3(P, 0, 0)};
  const auto s4 = solve_sag(straight(13), p, std::span(&torque, 1));
  CHECK(s4.dofs[6 * 13 + 3] == doctest::Approx(P * L / (p.shear_modulus * p.J)).epsilon(1e-9));
}

TEST_CASE("self-weight cantilever converges to the distributed-load formula") {
  const FrameProperties p = props();
  const double L = 130.0;
  const double q = p.density * p.area * std::abs(p.gravity.z()) * kGramMillimetrePerSecondSquaredToNewton;
  const double exact = q * std::pow(L, 4) / (8 * p.youngs_modulus * p.I_y);
  double prev = INFINITY;
  for (int n : {13, 26, 52}) {
    const auto sol = solve_sag(straight(n), p);
    const double err = std::abs(-sol.displacement(n).z() - exact) / exact;
    if (n == 13) CHECK(err < 0.02);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("zero gravity gives zero displacement") {
  FrameProperties p = props();
  p.gravity = Vec3::Zero();
  Trajectory t = straight(13);
  t.nodes[5] += Vec3(0, 3, 1);
  const auto sol = solve_sag(t, p);
  CHECK(sol.dofs.cwiseAbs().maxCoeff() == 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(sol.displaced_nodes[i] == t.nodes[i]);
}

TEST_CASE("sag rotates with the structure") {
  FrameProperties p = props();
  const Vec3 dir = Vec3(1, 2, 0.5).normalized();
  const Mat3 r = Eigen::Quaterniond::FromTwoVectors(Vec3::UnitX(), dir).toRotationMatrix();
  FrameProperties pr = p;
  pr.gravity = r * p.gravity;
  const auto a = solve_sag(straight(13), p);
  const auto b = solve_sag(straight(13, 130.0, dir), pr);
  for (std::size_t i = 0; i <= 13; ++i) {
    CHECK((r * a.displacement(i) - b.displacement(i)).norm() < 1e-9 * a.displacement(13).norm());
  }
}

TEST_CASE("frame errors and subdivision") {
  const FrameProperties p = props();
  Trajectory t = straight(3);
  t.nodes[2] = t.nodes[1];
  CHECK_THROWS_AS(assemble_frame(t, p), std::invalid_argument);
  CHECK_THROWS_AS(assemble_frame(straight(0), p), std::invalid_argument);
  const NodalLoad bad{99, Vec3::Zero(), Vec3::Zero()};
  CHECK_THROWS_AS(solve_sag(straight(3), p, std::span(&bad, 1)), std::out_of_range);

  const auto fine = subdivide_segments(straight(2, 20.0), 4);
  REQUIRE(fine.size() == 9);
  CHECK((fine.nodes[3] - Vec3(7.5, 0, 0)).norm() < 1e-15);
  CHECK_THROWS_AS(subdivide_segments(straight(2), 0), std::invalid_argument);
}

TEST_CASE("assembly properties") {
  FrameProperties p = props();
  Trajectory two;
  two.nodes = {Vec3::Zero(), Vec3(10, 0, 0)};
  const auto sys = assemble_frame(two, p);
  CHECK(sys.stiffness(0, 0) == doctest::Approx(p.youngs_modulus * p.area / 10.0).epsilon(1e-14));

  Trajectory bent;
  bent.nodes = {Vec3::Zero(), Vec3(10, 0, 0), Vec3(18, 5, 2), Vec3(20, 12, -3)};
  const auto k = assemble_frame(bent, p).stiffness;
  CHECK((k - k.transpose()).cwiseAbs().maxCoeff() <= 1e-9 * k.cwiseAbs().maxCoeff());

  p.density = 0;
  CHECK(assemble_frame(bent, p).load.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("displacements scale inversely with stiffness") {
  FrameProperties p = props();
  Trajectory bent;
  bent.nodes = {Vec3::Zero(), Vec3(10, 0, 0), Vec3(18, 5, 2), Vec3(20, 12, -3)};
  const auto a = solve_sag(bent, p);
  p.youngs_modulus *= 2;
  p.shear_modulus *= 2;
  const auto b = solve_sag(bent, p);
  CHECK((a.dofs - 2 * b.dofs).cwiseAbs().maxCoeff() <= 1e-12 * a.dofs.cwiseAbs().maxCoeff());
  CHECK(a.dofs.head(6).cwiseAbs().maxCoeff() == 0.0);
}
