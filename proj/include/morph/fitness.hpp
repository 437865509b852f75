#pragma once

#include <cstddef>

#include "morph/kinematics.hpp"
#include "morph/target_curve.hpp"

namespace morph {

struct FitnessWeights {
  double c0 = 1.0;   // position term
  double c1 = 5.0;   // orientation term
  double w_m = 5.0;  // midpoint weight inside the position term

  void validate() const;
};

struct TrialAnchors {
  Vec3 midpoint = Vec3::Zero();
  Vec3 tip = Vec3::Zero();
  double tip_phi = 0.0;
  double tip_theta = 0.0;
};

// Tip = last node, midpoint = nodes[midpoint_node], tip direction = local x
// axis of the final element (first column of pose.rotation).
TrialAnchors trial_anchors(const Trajectory& traj, const Pose& pose, std::size_t midpoint_node);

// sqrt(|tip - tip0|^2 + w_m |mid - mid0|^2), mm.
double position_error(const TrialAnchors& trial, const AnchorSet& ideal, const FitnessWeights& w);

// Root-sum-square of the azimuth (wrapped into (-pi, pi]) and polar
// differences, rad.
double orientation_error(const TrialAnchors& trial, const AnchorSet& ideal);

// c0 P + c1 Q.
double objective(double p_error, double q_error, const FitnessWeights& w);

// Wrap an angle difference into (-pi, pi].
double wrap_angle(double a);

}  // namespace morph
