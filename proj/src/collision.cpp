#include "morph/collision.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace morph {

void CollisionConfig::validate() const {
  if (n_increments < 2) throw std::invalid_argument("collision.n_increments must be >= 2");
  if (!(threshold > 0.0)) throw std::invalid_argument("collision.threshold_mm must be positive");
  if (neighbor_exclusion < 1) {
    throw std::invalid_argument("collision.neighbor_exclusion must be >= 1");
  }
}

CollisionReport path_collision(const Trajectory& path, const CollisionConfig& cfg) {
  CollisionReport report;
  report.min_distance = std::numeric_limits<double>::infinity();
  const std::size_t n = path.nodes.size();
  const std::size_t gap = static_cast<std::size_t>(cfg.neighbor_exclusion) + 1;
  const double thr2 = cfg.threshold * cfg.threshold;
  double min2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + gap < n; ++i) {
    for (std::size_t j = i + gap; j < n; ++j) {
      const double d2 = (path.nodes[i] - path.nodes[j]).squaredNorm();
      if (d2 < min2) min2 = d2;
      if (d2 < thr2 && !report.collided) {
        report.collided = true;
        report.node_pair = std::make_pair(i, j);
      }
    }
  }
  report.min_distance = std::sqrt(min2);
  return report;
}

CollisionReport sweep_collision_check(const Sequence& seq, const ActivationProfile& profile,
                                      const CollisionConfig& cfg) {
  if (seq.empty()) throw std::invalid_argument("sweep_collision_check: empty sequence");
  CollisionReport report;
  report.min_distance = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= cfg.n_increments; ++k) {
    const double fraction = static_cast<double>(k) / cfg.n_increments;
    const Trajectory full = reflect_about_root(forward_kinematics(seq, profile, fraction).trajectory);
    const CollisionReport frame = path_collision(full, cfg);
    report.min_distance = std::min(report.min_distance, frame.min_distance);
    if (frame.collided) {
      report.collided = true;
      report.first_increment = k;
      report.node_pair = frame.node_pair;
      break;
    }
  }
  return report;
}

bool segment_intersects_triangle(const Vec3& p0, const Vec3& p1, const Vec3& a, const Vec3& b,
                                 const Vec3& c) {
  const Vec3 d = p1 - p0;
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 h = d.cross(e2);
  const double det = e1.dot(h);
  const double scale = d.norm() * e1.norm() * e2.norm();
  if (scale == 0.0 || std::abs(det) <= 1e-12 * scale) return false;
  const double inv = 1.0 / det;
  const Vec3 s = p0 - a;
  const double u = inv * s.dot(h);
  if (u < 0.0 || u > 1.0) return false;
  const Vec3 q = s.cross(e1);
  const double v = inv * d.dot(q);
  if (v < 0.0 || u + v > 1.0) return false;
  const double t = inv * e2.dot(q);
  return t >= 0.0 && t <= 1.0;
}

namespace {

Vec3 centroid(std::span<const Vec3> loop) {
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : loop) c += p;
  return c / static_cast<double>(loop.size());
}

}  // namespace

double loop_fan_area(std::span<const Vec3> loop) {
  if (loop.size() < 3) return 0.0;
  const Vec3 c = centroid(loop);
  double area = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Vec3& a = loop[i];
    const Vec3& b = loop[(i + 1) % loop.size()];
    area += 0.5 * (a - c).cross(b - c).norm();
  }
  return area;
}

bool segment_penetrates_loop(const Vec3& p0, const Vec3& p1, std::span<const Vec3> loop) {
  if (loop.size() < 3) return false;
  const Vec3 c = centroid(loop);
  for (std::size_t i = 0; i < loop.size(); ++i) {
    if (segment_intersects_triangle(p0, p1, c, loop[i], loop[(i + 1) % loop.size()])) return true;
  }
  return false;
}

namespace {

bool tip_penetrates(const Trajectory& half, std::span<const Vec3> opposing_loop) {
  const std::size_t m = half.nodes.size();
  for (std::size_t k = m - 3; k + 1 < m; ++k) {
    if (segment_penetrates_loop(half.nodes[k], half.nodes[k + 1], opposing_loop)) return true;
  }
  return false;
}

bool degenerate_loop(std::span<const Vec3> loop) {
  double perimeter = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    perimeter += (loop[(i + 1) % loop.size()] - loop[i]).norm();
  }
  return !(loop_fan_area(loop) > 1e-9 * perimeter * perimeter);
}

}  // namespace

CompletenessResult completeness_check(const Trajectory& full) {
  CompletenessResult result;
  if (full.nodes.size() < 7 || full.nodes.size() % 2 == 0) {
    result.diagnostic = "full path needs an odd node count of at least 7";
    return result;
  }
  const KnotHalves halves = split_knot(full);
  if (degenerate_loop(halves.right.nodes) || degenerate_loop(halves.left.nodes)) {
    result.diagnostic = "degenerate loop: fan surface has zero area";
    return result;
  }
  result.right_tip_penetrates = tip_penetrates(halves.right, halves.left.nodes);
  result.left_tip_penetrates = tip_penetrates(halves.left, halves.right.nodes);
  result.complete = result.right_tip_penetrates && result.left_tip_penetrates;
  if (!result.complete) result.diagnostic = "tip does not penetrate the opposing loop";
  return result;
}

}  // namespace morph
