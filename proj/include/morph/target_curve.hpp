#pragma once

#include <numbers>
#include <vector>

#include "morph/kinematics.hpp"

namespace morph {

// Trefoil-style target path
//   x = a (sin t + 2 sin 2t),  y = a (cos t - 2 cos 2t),  z = -b sin 3t
// with a = coeff_xy, b = coeff_z (mm).
struct IdealCurve {
  double coeff_xy = 11.47;
  double coeff_z = 4.13;
  double t_min = -3.0 * std::numbers::pi / 4.0;
  double t_max = 3.0 * std::numbers::pi / 4.0;

  void validate() const;
};

// Spherical direction: theta is the polar angle from +z in [0, pi],
// phi = atan2(y, x) in (-pi, pi].
struct Direction {
  double phi = 0.0;
  double theta = 0.0;
};

Direction spherical_direction(const Vec3& d);

struct AnchorSet {
  Vec3 midpoint = Vec3::Zero();
  Vec3 tip = Vec3::Zero();
  double tip_phi = 0.0;
  double tip_theta = 0.0;
};

// Throws std::domain_error when t is outside [t_min, t_max].
Vec3 ideal_point(const IdealCurve& curve, double t);

// Analytic derivative dP/dt. Not range checked.
Vec3 ideal_derivative(const IdealCurve& curve, double t);

// Direction of the analytic tangent. Throws std::domain_error for t out of
// range or a vanishing tangent.
Direction ideal_tangent(const IdealCurve& curve, double t);

// Parameter of the midpoint anchor: t_max / (n/2 + 1).
double midpoint_parameter(const IdealCurve& curve, double n_active_elements);

// Tip at t_max, midpoint at t_max / (n/2 + 1). n must be even and >= 2.
AnchorSet ideal_anchors(const IdealCurve& curve, int n_active_elements);

// Anchors for an N-node-chain of which one element is the neutral root:
// the midpoint formula applied to N - 1 active elements, allowing odd N - 1.
AnchorSet chain_anchors(const IdealCurve& curve, int n_elements);

// Arc length from t = 0 to t (Gauss-Legendre, adaptive).
double arc_length_from_root(const IdealCurve& curve, double t);

// Pose mapping the chain frame (root at origin, heading +x) onto the curve
// root ideal_point(0). With align_tangent, the heading is additionally
// rotated about y onto the root tangent; rotations about y commute with
// the root mirror, so reflected knots stay consistent.
Pose root_mount(const IdealCurve& curve, bool align_tangent);

struct CurveSample {
  double t;
  Vec3 point;
};

// count >= 2 equally spaced samples over [t_min, t_max], endpoints included.
std::vector<CurveSample> sample_curve(const IdealCurve& curve, int count);

}  // namespace morph
