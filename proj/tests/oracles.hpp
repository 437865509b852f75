#pragma once

// Reference implementations used only by the tests. They avoid the
// library's code paths: quaternions instead of matrices for kinematics,
// long double and expanded trigonometry for the curve.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace oracle {

using ld = long double;
constexpr ld kPi = std::numbers::pi_v<long double>;

struct V3 {
  ld x = 0, y = 0, z = 0;
};

struct Quat {
  ld w = 1, x = 0, y = 0, z = 0;
};

inline Quat mul(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline V3 rotate(const Quat& q, const V3& v) {
  const Quat p{0, v.x, v.y, v.z};
  const Quat qc{q.w, -q.x, -q.y, -q.z};
  const Quat r = mul(mul(q, p), qc);
  return {r.x, r.y, r.z};
}

inline Quat axis_angle(int axis, ld angle) {
  Quat q{std::cos(angle / 2), 0, 0, 0};
  const ld s = std::sin(angle / 2);
  if (axis == 0) q.x = s;
  if (axis == 1) q.y = s;
  if (axis == 2) q.z = s;
  return q;
}

// Letter-coded chain, defaults L = 10, 25 deg bend, 4 deg twist, offsets
// (0.98, 0.22). Returns node positions root..tip.
inline std::vector<V3> chain(const std::string& letters, ld fraction, ld L = 10, ld bend_deg = 25,
                             ld twist_deg = 4) {
  std::vector<V3> nodes{{0, 0, 0}};
  Quat q;
  V3 p;
  for (char c : letters) {
    int axis = -1;
    ld sign = 0;
    V3 d{L, 0, 0};
    const ld ax = L + fraction * (0.98L * L - L);
    const ld lat = fraction * 0.22L * L;
    switch (c) {
      case 'b': axis = 2; sign = 1; d = {ax, lat, 0}; break;
      case 'c': axis = 2; sign = -1; d = {ax, -lat, 0}; break;
      case 'd': axis = 1; sign = 1; d = {ax, 0, -lat}; break;
      case 'e': axis = 1; sign = -1; d = {ax, 0, lat}; break;
      case 'f': axis = 0; sign = 1; break;
      case 'g': axis = 0; sign = -1; break;
      default: break;
    }
    const V3 w = rotate(q, d);
    p = {p.x + w.x, p.y + w.y, p.z + w.z};
    if (axis >= 0) {
      const ld deg = axis == 0 ? twist_deg : bend_deg;
      q = mul(q, axis_angle(axis, sign * fraction * deg * kPi / 180));
    }
    nodes.push_back(p);
  }
  return nodes;
}

// Ideal curve with a = 11.47, b = 4.13, expanded through multiple-angle
// identities instead of evaluating sin 2t, cos 2t, sin 3t directly.
inline V3 curve(ld t, ld a = 11.47L, ld b = 4.13L) {
  const ld s = std::sin(t), c = std::cos(t);
  return {a * (s + 4 * s * c), a * (c - 2 * (2 * c * c - 1)), -b * (3 * s - 4 * s * s * s)};
}

}  // namespace oracle
