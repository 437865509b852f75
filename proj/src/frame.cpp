#include "morph/frame.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace morph {

void FrameProperties::validate() const {
  if (!(youngs_modulus > 0.0)) throw std::invalid_argument("frame.youngs_modulus_mpa must be positive");
  if (!(shear_modulus > 0.0)) throw std::invalid_argument("frame.shear_modulus_mpa must be positive");
  if (!(area > 0.0)) throw std::invalid_argument("frame.area_mm2 must be positive");
  if (!(I_y > 0.0)) throw std::invalid_argument("frame.I_y_mm4 must be positive");
  if (!(I_z > 0.0)) throw std::invalid_argument("frame.I_z_mm4 must be positive");
  if (!(J > 0.0)) throw std::invalid_argument("frame.J_mm4 must be positive");
  if (!(density >= 0.0)) throw std::invalid_argument("frame.density_g_mm3 must be non-negative");
  if (!gravity.allFinite()) throw std::invalid_argument("frame.gravity_mm_s2 must be finite");
}

Eigen::Matrix<double, 12, 12> local_frame_stiffness(double L, const FrameProperties& p) {
  Eigen::Matrix<double, 12, 12> k = Eigen::Matrix<double, 12, 12>::Zero();
  const double E = p.youngs_modulus;
  const double L2 = L * L, L3 = L2 * L;

  const double ea = E * p.area / L;
  k(0, 0) = ea;  k(0, 6) = -ea;  k(6, 6) = ea;

  const double gj = p.shear_modulus * p.J / L;
  k(3, 3) = gj;  k(3, 9) = -gj;  k(9, 9) = gj;

  // v / rz: bending in the local x-y plane.
  const double ez = E * p.I_z;
  k(1, 1) = 12 * ez / L3;   k(1, 5) = 6 * ez / L2;    k(1, 7) = -12 * ez / L3;  k(1, 11) = 6 * ez / L2;
  k(5, 5) = 4 * ez / L;     k(5, 7) = -6 * ez / L2;   k(5, 11) = 2 * ez / L;
  k(7, 7) = 12 * ez / L3;   k(7, 11) = -6 * ez / L2;
  k(11, 11) = 4 * ez / L;

  // w / ry: bending in the local x-z plane.
  const double ey = E * p.I_y;
  k(2, 2) = 12 * ey / L3;   k(2, 4) = -6 * ey / L2;   k(2, 8) = -12 * ey / L3;  k(2, 10) = -6 * ey / L2;
  k(4, 4) = 4 * ey / L;     k(4, 8) = 6 * ey / L2;    k(4, 10) = 2 * ey / L;
  k(8, 8) = 12 * ey / L3;   k(8, 10) = 6 * ey / L2;
  k(10, 10) = 4 * ey / L;

  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < i; ++j) k(i, j) = k(j, i);
  }
  return k;
}

Mat3 element_triad(const Vec3& from, const Vec3& to) {
  const Vec3 ex = (to - from).normalized();
  // Global axis least aligned with ex; ties prefer z, then y, then x.
  const std::array<Vec3, 3> candidates = {Vec3::UnitZ(), Vec3::UnitY(), Vec3::UnitX()};
  Vec3 helper = candidates[0];
  double best = std::abs(ex.dot(helper));
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double a = std::abs(ex.dot(candidates[i]));
    if (a < best) {
      best = a;
      helper = candidates[i];
    }
  }
  const Vec3 ey = (helper - helper.dot(ex) * ex).normalized();
  const Vec3 ez = ex.cross(ey);
  Mat3 triad;
  triad.row(0) = ex;
  triad.row(1) = ey;
  triad.row(2) = ez;
  return triad;
}

FrameSystem assemble_frame(const Trajectory& traj, const FrameProperties& props) {
  props.validate();
  const auto& nodes = traj.nodes;
  if (nodes.size() < 2) throw std::invalid_argument("assemble_frame: need at least 2 nodes");
  const auto n_dof = static_cast<Eigen::Index>(kDofPerNode * nodes.size());

  FrameSystem sys;
  sys.stiffness = Eigen::MatrixXd::Zero(n_dof, n_dof);
  sys.load = Eigen::VectorXd::Zero(n_dof);

  for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
    const double length = (nodes[e + 1] - nodes[e]).norm();
    if (!(length > 0.0)) {
      throw std::invalid_argument("assemble_frame: zero-length element between nodes " +
                                  std::to_string(e) + " and " + std::to_string(e + 1));
    }
    const Mat3 lambda = element_triad(nodes[e], nodes[e + 1]);
    Eigen::Matrix<double, 12, 12> T = Eigen::Matrix<double, 12, 12>::Zero();
    for (int b = 0; b < 4; ++b) T.block<3, 3>(3 * b, 3 * b) = lambda;
    const Eigen::Matrix<double, 12, 12> ke = T.transpose() * local_frame_stiffness(length, props) * T;

    const auto base = static_cast<Eigen::Index>(kDofPerNode * e);
    sys.stiffness.block<12, 12>(base, base) += ke;

    const Vec3 half_weight = 0.5 * props.density * props.area * length * props.gravity *
                             kGramMillimetrePerSecondSquaredToNewton;
    sys.load.segment<3>(base) += half_weight;
    sys.load.segment<3>(base + kDofPerNode) += half_weight;
  }
  return sys;
}

SagSolution solve_sag(const Trajectory& traj, const FrameProperties& props,
                      std::span<const NodalLoad> extra_loads) {
  FrameSystem sys = assemble_frame(traj, props);
  const auto n_nodes = traj.nodes.size();
  for (const NodalLoad& l : extra_loads) {
    if (l.node >= n_nodes) throw std::out_of_range("solve_sag: load node index out of range");
    const auto base = static_cast<Eigen::Index>(kDofPerNode * l.node);
    sys.load.segment<3>(base) += l.force;
    sys.load.segment<3>(base + 3) += l.moment;
  }

  const Eigen::Index n_dof = sys.stiffness.rows();
  const Eigen::Index n_free = n_dof - kDofPerNode;
  const Eigen::MatrixXd k_free = sys.stiffness.bottomRightCorner(n_free, n_free);
  const Eigen::VectorXd f_free = sys.load.tail(n_free);

  const Eigen::LLT<Eigen::MatrixXd> llt(k_free);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("solve_sag: reduced stiffness matrix is not positive definite");
  }

  SagSolution sol;
  sol.dofs = Eigen::VectorXd::Zero(n_dof);
  sol.dofs.tail(n_free) = llt.solve(f_free);
  sol.displaced_nodes.reserve(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    sol.displaced_nodes.push_back(traj.nodes[i] + sol.displacement(i));
  }
  return sol;
}

Trajectory subdivide_segments(const Trajectory& traj, int factor) {
  if (factor < 1) throw std::invalid_argument("subdivide_segments: factor must be >= 1");
  Trajectory out;
  out.fraction = traj.fraction;
  if (traj.nodes.empty()) return out;
  out.nodes.push_back(traj.nodes.front());
  for (std::size_t e = 0; e + 1 < traj.nodes.size(); ++e) {
    for (int s = 1; s <= factor; ++s) {
      const double w = static_cast<double>(s) / factor;
      out.nodes.push_back((1.0 - w) * traj.nodes[e] + w * traj.nodes[e + 1]);
    }
  }
  return out;
}

}  // namespace morph
