#include "morph/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace morph {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void require_fraction(double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("activation fraction must lie in [0, 1]");
  }
}

}  // namespace

Axis rotation_axis(ElementKind kind) {
  switch (kind) {
    case ElementKind::Neutral: return Axis::None;
    case ElementKind::BendPosZ:
    case ElementKind::BendNegZ: return Axis::Z;
    case ElementKind::BendPosY:
    case ElementKind::BendNegY: return Axis::Y;
    case ElementKind::TwistPosX:
    case ElementKind::TwistNegX: return Axis::X;
  }
  return Axis::None;
}

int rotation_sign(ElementKind kind) {
  switch (kind) {
    case ElementKind::Neutral: return 0;
    case ElementKind::BendPosZ:
    case ElementKind::BendPosY:
    case ElementKind::TwistPosX: return 1;
    case ElementKind::BendNegZ:
    case ElementKind::BendNegY:
    case ElementKind::TwistNegX: return -1;
  }
  return 0;
}

bool is_bend(ElementKind kind) {
  const Axis a = rotation_axis(kind);
  return a == Axis::Y || a == Axis::Z;
}

bool is_twist(ElementKind kind) { return rotation_axis(kind) == Axis::X; }

char letter_code(ElementKind kind) { return static_cast<char>('a' + static_cast<int>(kind)); }

std::optional<ElementKind> kind_from_letter(char code) {
  if (code < 'a' || code > 'g') return std::nullopt;
  return static_cast<ElementKind>(code - 'a');
}

std::string_view kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::Neutral: return "Neutral";
    case ElementKind::BendPosZ: return "BendPosZ";
    case ElementKind::BendNegZ: return "BendNegZ";
    case ElementKind::BendPosY: return "BendPosY";
    case ElementKind::BendNegY: return "BendNegY";
    case ElementKind::TwistPosX: return "TwistPosX";
    case ElementKind::TwistNegX: return "TwistNegX";
  }
  return "?";
}

void ActivationProfile::validate() const {
  if (!(element_length > 0.0) || !std::isfinite(element_length)) {
    throw std::invalid_argument("profile.element_length_mm must be positive");
  }
  if (!std::isfinite(bend_angle_deg)) {
    throw std::invalid_argument("profile.bend_angle_deg must be finite");
  }
  if (!std::isfinite(twist_angle_deg)) {
    throw std::invalid_argument("profile.twist_angle_deg must be finite");
  }
  if (!(bend_offset_axial > 0.0 && bend_offset_axial <= 1.0)) {
    throw std::invalid_argument("profile.bend_offset_axial must lie in (0, 1]");
  }
  if (!(bend_offset_lateral >= 0.0 && bend_offset_lateral < 1.0)) {
    throw std::invalid_argument("profile.bend_offset_lateral must lie in [0, 1)");
  }
}

double orthonormality_error(const Mat3& r) {
  return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
}

Sequence::Sequence(std::vector<ElementKind> elements) : elements_(std::move(elements)) {}

Sequence Sequence::from_letters(std::string_view letters) {
  std::vector<ElementKind> out;
  out.reserve(letters.size());
  for (char c : letters) {
    auto kind = kind_from_letter(c);
    if (!kind) {
      throw std::invalid_argument(std::string("unknown element letter '") + c + "'");
    }
    out.push_back(*kind);
  }
  return Sequence(std::move(out));
}

std::string Sequence::letters() const {
  std::string s;
  s.reserve(elements_.size());
  for (ElementKind k : elements_) s.push_back(letter_code(k));
  return s;
}

Mat3 rot_x(double alpha) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  Mat3 r;
  r << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return r;
}

Mat3 rot_y(double beta) {
  const double c = std::cos(beta), s = std::sin(beta);
  Mat3 r;
  r << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return r;
}

Mat3 rot_z(double gamma) {
  const double c = std::cos(gamma), s = std::sin(gamma);
  Mat3 r;
  r << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return r;
}

Mat3 element_rotation(ElementKind kind, double fraction, const ActivationProfile& profile) {
  require_fraction(fraction);
  const double sign = rotation_sign(kind);
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  switch (rotation_axis(kind)) {
    case Axis::None: return Mat3::Identity();
    case Axis::X: alpha = sign * fraction * profile.twist_angle_deg * kDegToRad; break;
    case Axis::Y: beta = sign * fraction * profile.bend_angle_deg * kDegToRad; break;
    case Axis::Z: gamma = sign * fraction * profile.bend_angle_deg * kDegToRad; break;
  }
  return rot_x(alpha) * rot_y(beta) * rot_z(gamma);
}

Vec3 element_offset(ElementKind kind, double fraction, const ActivationProfile& profile) {
  require_fraction(fraction);
  const double L = profile.element_length;
  if (!is_bend(kind)) return {L, 0.0, 0.0};

  const double axial = L + (profile.bend_offset_axial * L - L) * fraction;
  const double lateral = profile.bend_offset_lateral * L * fraction;
  switch (kind) {
    case ElementKind::BendPosZ: return {axial, lateral, 0.0};
    case ElementKind::BendNegZ: return {axial, -lateral, 0.0};
    // A positive rotation about y tips the free end toward -z.
    case ElementKind::BendPosY: return {axial, 0.0, -lateral};
    case ElementKind::BendNegY: return {axial, 0.0, lateral};
    default: break;
  }
  return {L, 0.0, 0.0};
}

ChainState forward_kinematics(const Sequence& seq, const ActivationProfile& profile,
                              double fraction) {
  if (seq.empty()) throw std::invalid_argument("forward_kinematics: empty sequence");
  require_fraction(fraction);

  ChainState state;
  state.trajectory.fraction = fraction;
  state.trajectory.nodes.reserve(seq.size() + 1);
  state.trajectory.nodes.push_back(Vec3::Zero());

  Mat3 R = Mat3::Identity();
  Vec3 X = Vec3::Zero();
  for (ElementKind kind : seq) {
    const Vec3 delta = R * element_offset(kind, fraction, profile);
    R = R * element_rotation(kind, fraction, profile);
    X += delta;
    state.trajectory.nodes.push_back(X);
  }
  state.tip.rotation = R;
  state.tip.position = X;
  return state;
}

Trajectory reflect_about_root(const Trajectory& half) {
  Trajectory full;
  full.fraction = half.fraction;
  if (half.nodes.empty()) return full;
  full.nodes.reserve(2 * half.nodes.size() - 1);
  for (std::size_t i = half.nodes.size() - 1; i >= 1; --i) {
    full.nodes.push_back(mirror_about_root(half.nodes[i]));
  }
  full.nodes.insert(full.nodes.end(), half.nodes.begin(), half.nodes.end());
  return full;
}

KnotHalves split_knot(const Trajectory& full) {
  if (full.nodes.size() % 2 == 0) {
    throw std::invalid_argument("split_knot: full path must have an odd node count");
  }
  const std::size_t n = full.nodes.size() / 2;
  KnotHalves halves;
  halves.right.fraction = halves.left.fraction = full.fraction;
  halves.right.nodes.assign(full.nodes.begin() + static_cast<std::ptrdiff_t>(n), full.nodes.end());
  halves.left.nodes.assign(full.nodes.rend() - static_cast<std::ptrdiff_t>(n) - 1, full.nodes.rend());
  return halves;
}

Trajectory transformed(const Trajectory& traj, const Pose& pose) {
  Trajectory out;
  out.fraction = traj.fraction;
  out.nodes.reserve(traj.nodes.size());
  for (const Vec3& p : traj.nodes) out.nodes.push_back(pose.apply(p));
  return out;
}

}  // namespace morph
