#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "morph/kinematics.hpp"

namespace morph {

// Linear-elastic section and material data for a chain of two-node space
// frame elements. Units: N, mm, s, g (forces come out in N via the
// g*mm/s^2 -> N factor).
struct FrameProperties {
  double youngs_modulus = 0.0;  // MPa, must be supplied
  double shear_modulus = 0.0;   // MPa, must be supplied
  double area = 4.0;            // mm^2, 2 x 2 mm section
  double I_y = 4.0 / 3.0;       // mm^4
  double I_z = 4.0 / 3.0;       // mm^4
  double J = 2.25;              // mm^4
  double density = 1.15e-3;     // g/mm^3
  Vec3 gravity{0.0, 0.0, -9810.0};  // mm/s^2

  void validate() const;
};

inline constexpr double kGramMillimetrePerSecondSquaredToNewton = 1e-6;
inline constexpr int kDofPerNode = 6;

struct NodalLoad {
  std::size_t node = 0;
  Vec3 force = Vec3::Zero();   // N
  Vec3 moment = Vec3::Zero();  // N mm
};

struct FrameSystem {
  Eigen::MatrixXd stiffness;  // 6 n x 6 n, global
  Eigen::VectorXd load;       // 6 n
};

// Local 12 x 12 stiffness of one element of the given length; DOF order
// (u, v, w, rx, ry, rz) at node 1 then node 2.
Eigen::Matrix<double, 12, 12> local_frame_stiffness(double length, const FrameProperties& props);

// Rows are the element's local x, y, z axes in global coordinates.
Mat3 element_triad(const Vec3& from, const Vec3& to);

// Assembles element stiffness and lumped self-weight (half to each end).
// Throws std::invalid_argument for fewer than 2 nodes or a zero-length
// element.
FrameSystem assemble_frame(const Trajectory& nodes, const FrameProperties& props);

struct SagSolution {
  std::vector<Vec3> displaced_nodes;
  Eigen::VectorXd dofs;  // per node: 3 translations (mm), 3 rotations (rad)

  Vec3 displacement(std::size_t node) const { return dofs.segment<3>(kDofPerNode * static_cast<Eigen::Index>(node)); }
};

// Clamps node 0 and solves K u = f. Throws std::runtime_error if the
// reduced system is not positive definite.
SagSolution solve_sag(const Trajectory& nodes, const FrameProperties& props,
                      std::span<const NodalLoad> extra_loads = {});

// Splits every segment into `factor` equal sub-segments.
Trajectory subdivide_segments(const Trajectory& nodes, int factor);

}  // namespace morph
