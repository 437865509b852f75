#include "morph/fitness.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace morph {

void FitnessWeights::validate() const {
  if (!(c0 >= 0.0)) throw std::invalid_argument("weights.c0 must be non-negative");
  if (!(c1 >= 0.0)) throw std::invalid_argument("weights.c1 must be non-negative");
  if (!(w_m >= 0.0)) throw std::invalid_argument("weights.w_m must be non-negative");
}

TrialAnchors trial_anchors(const Trajectory& traj, const Pose& pose, std::size_t midpoint_node) {
  if (traj.nodes.empty()) throw std::invalid_argument("trial_anchors: empty trajectory");
  if (midpoint_node >= traj.nodes.size()) {
    throw std::out_of_range("trial_anchors: midpoint node index out of range");
  }
  TrialAnchors a;
  a.tip = traj.nodes.back();
  a.midpoint = traj.nodes[midpoint_node];
  const Direction dir = spherical_direction(pose.rotation.col(0));
  a.tip_phi = dir.phi;
  a.tip_theta = dir.theta;
  return a;
}

double position_error(const TrialAnchors& trial, const AnchorSet& ideal, const FitnessWeights& w) {
  const double t1 = (ideal.tip - trial.tip).squaredNorm();
  const double t2 = w.w_m * (ideal.midpoint - trial.midpoint).squaredNorm();
  return std::sqrt(t1 + t2);
}

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(a, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

double orientation_error(const TrialAnchors& trial, const AnchorSet& ideal) {
  const double dphi = wrap_angle(ideal.tip_phi - trial.tip_phi);
  const double dtheta = ideal.tip_theta - trial.tip_theta;
  return std::sqrt(dphi * dphi + dtheta * dtheta);
}

double objective(double p_error, double q_error, const FitnessWeights& w) {
  return w.c0 * p_error + w.c1 * q_error;
}

}  // namespace morph
