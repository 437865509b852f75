#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace morph {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// The seven actuator options. Letter codes a..g follow the declaration order.
enum class ElementKind : std::uint8_t {
  Neutral,
  BendPosZ,
  BendNegZ,
  BendPosY,
  BendNegY,
  TwistPosX,
  TwistNegX,
};

inline constexpr std::size_t kElementKindCount = 7;

inline constexpr std::array<ElementKind, kElementKindCount> kAllElementKinds = {
    ElementKind::Neutral,  ElementKind::BendPosZ,  ElementKind::BendNegZ,
    ElementKind::BendPosY, ElementKind::BendNegY,  ElementKind::TwistPosX,
    ElementKind::TwistNegX,
};

enum class Axis : std::uint8_t { None, X, Y, Z };

Axis rotation_axis(ElementKind kind);
// +1 or -1 for active elements, 0 for Neutral.
int rotation_sign(ElementKind kind);
bool is_bend(ElementKind kind);
bool is_twist(ElementKind kind);

char letter_code(ElementKind kind);
std::optional<ElementKind> kind_from_letter(char code);
std::string_view kind_name(ElementKind kind);

// Calibrated response of a fully activated element. Angles in degrees,
// offsets as fractions of the element length.
struct ActivationProfile {
  double element_length = 10.0;  // mm
  double bend_angle_deg = 25.0;
  double twist_angle_deg = 4.0;
  double bend_offset_axial = 0.98;
  double bend_offset_lateral = 0.22;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;

  friend bool operator==(const ActivationProfile&, const ActivationProfile&) = default;
};

struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 position = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return rotation * p + position; }
};

// max |R^T R - I| entry.
double orthonormality_error(const Mat3& r);

class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<ElementKind> elements);

  // "abf..." -> Sequence. Throws std::invalid_argument on unknown letters.
  static Sequence from_letters(std::string_view letters);
  std::string letters() const;

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  ElementKind operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<ElementKind>& elements() const { return elements_; }

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::vector<ElementKind> elements_;
};

struct Trajectory {
  std::vector<Vec3> nodes;
  double fraction = 1.0;

  std::size_t size() const { return nodes.size(); }
  const Vec3& tip() const { return nodes.back(); }
};

struct ChainState {
  Trajectory trajectory;
  Pose tip;
};

Mat3 rot_x(double alpha);
Mat3 rot_y(double beta);
Mat3 rot_z(double gamma);

// R_x(alpha) R_y(beta) R_z(gamma), with the one active angle scaled
// linearly by the activation fraction.
Mat3 element_rotation(ElementKind kind, double fraction, const ActivationProfile& profile);

// Offset (dx, dy, dz) in the element's local frame, interpolated linearly
// between the undeformed (L, 0, 0) and the fully activated offset.
Vec3 element_offset(ElementKind kind, double fraction, const ActivationProfile& profile);

// Accumulated rotation and node path of the chain, root at the origin with
// identity orientation. Throws std::invalid_argument for an empty sequence
// or a fraction outside [0, 1].
ChainState forward_kinematics(const Sequence& seq, const ActivationProfile& profile,
                              double fraction);

// 180 degree rotation about the y axis through the root.
inline Vec3 mirror_about_root(const Vec3& p) { return {-p.x(), p.y(), -p.z()}; }

// Full knot from a half chain: mirrored nodes tip-to-root (root shared),
// followed by the half nodes. 2N+1 nodes for an N-element half.
Trajectory reflect_about_root(const Trajectory& half);

// Inverse of reflect_about_root on a full path with an odd node count:
// {root..right tip} and {root..left tip}.
struct KnotHalves {
  Trajectory right;
  Trajectory left;
};
KnotHalves split_knot(const Trajectory& full);

Trajectory transformed(const Trajectory& traj, const Pose& pose);

}  // namespace morph
