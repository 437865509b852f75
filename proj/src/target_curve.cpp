#include "morph/target_curve.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace morph {

namespace {

Vec3 evaluate(const IdealCurve& c, double t) {
  return {c.coeff_xy * (std::sin(t) + 2.0 * std::sin(2.0 * t)),
          c.coeff_xy * (std::cos(t) - 2.0 * std::cos(2.0 * t)),
          c.coeff_z * -std::sin(3.0 * t)};
}

void require_in_range(const IdealCurve& c, double t) {
  if (!(t >= c.t_min && t <= c.t_max)) {
    throw std::domain_error("curve parameter " + std::to_string(t) + " outside [t_min, t_max]");
  }
}

}  // namespace

void IdealCurve::validate() const {
  if (!(coeff_xy > 0.0)) throw std::invalid_argument("curve.coeff_xy must be positive");
  if (!(coeff_z > 0.0)) throw std::invalid_argument("curve.coeff_z must be positive");
  if (!(t_min < t_max)) throw std::invalid_argument("curve.t_min must be less than curve.t_max");
}

Direction spherical_direction(const Vec3& d) {
  const double n = d.norm();
  Direction out;
  out.phi = std::atan2(d.y(), d.x());
  if (out.phi == -std::numbers::pi) out.phi = std::numbers::pi;
  out.theta = std::acos(std::clamp(d.z() / n, -1.0, 1.0));
  return out;
}

Vec3 ideal_point(const IdealCurve& curve, double t) {
  require_in_range(curve, t);
  return evaluate(curve, t);
}

Vec3 ideal_derivative(const IdealCurve& c, double t) {
  return {c.coeff_xy * (std::cos(t) + 4.0 * std::cos(2.0 * t)),
          c.coeff_xy * (-std::sin(t) + 4.0 * std::sin(2.0 * t)),
          -3.0 * c.coeff_z * std::cos(3.0 * t)};
}

Direction ideal_tangent(const IdealCurve& curve, double t) {
  require_in_range(curve, t);
  const Vec3 d = ideal_derivative(curve, t);
  if (d.norm() <= 1e-12 * (curve.coeff_xy + curve.coeff_z)) {
    throw std::domain_error("ideal_tangent: tangent vanishes at t = " + std::to_string(t));
  }
  return spherical_direction(d);
}

double midpoint_parameter(const IdealCurve& curve, double n_active_elements) {
  return curve.t_max / (n_active_elements / 2.0 + 1.0);
}

AnchorSet ideal_anchors(const IdealCurve& curve, int n_active_elements) {
  if (n_active_elements < 2 || n_active_elements % 2 != 0) {
    throw std::invalid_argument("ideal_anchors: active element count must be even and >= 2");
  }
  AnchorSet a;
  a.tip = ideal_point(curve, curve.t_max);
  a.midpoint = ideal_point(curve, midpoint_parameter(curve, n_active_elements));
  const Direction dir = ideal_tangent(curve, curve.t_max);
  a.tip_phi = dir.phi;
  a.tip_theta = dir.theta;
  return a;
}

AnchorSet chain_anchors(const IdealCurve& curve, int n_elements) {
  if (n_elements < 2) throw std::invalid_argument("chain_anchors: need at least 2 elements");
  AnchorSet a;
  a.tip = ideal_point(curve, curve.t_max);
  a.midpoint = ideal_point(curve, midpoint_parameter(curve, n_elements - 1));
  const Direction dir = ideal_tangent(curve, curve.t_max);
  a.tip_phi = dir.phi;
  a.tip_theta = dir.theta;
  return a;
}

double arc_length_from_root(const IdealCurve& curve, double t) {
  // 5-point Gauss-Legendre on 256 panels; the integrand is smooth.
  static constexpr std::array<double, 5> x = {0.0, -0.5384693101056831, 0.5384693101056831,
                                              -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> w = {0.5688888888888889, 0.4786286704993665,
                                              0.4786286704993665, 0.2369268850561891,
                                              0.2369268850561891};
  constexpr int panels = 256;
  const double h = t / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (std::size_t k = 0; k < x.size(); ++k) {
      sum += w[k] * ideal_derivative(curve, mid + 0.5 * h * x[k]).norm();
    }
  }
  return std::abs(sum * 0.5 * h);
}

Pose root_mount(const IdealCurve& curve, bool align_tangent) {
  Pose pose;
  pose.position = evaluate(curve, 0.0);
  if (align_tangent) {
    const Vec3 d = ideal_derivative(curve, 0.0);
    pose.rotation = rot_y(std::atan2(-d.z(), d.x()));
  }
  return pose;
}

std::vector<CurveSample> sample_curve(const IdealCurve& curve, int count) {
  if (count < 2) throw std::invalid_argument("sample_count must be at least 2");
  std::vector<CurveSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    double t = curve.t_min + (curve.t_max - curve.t_min) * i / (count - 1);
    if (i == count - 1) t = curve.t_max;
    out.push_back({t, evaluate(curve, t)});
  }
  return out;
}

}  // namespace morph
