#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "morph/kinematics.hpp"

namespace morph {

struct CollisionConfig {
  int n_increments = 25;
  double threshold = 2.0;  // mm, printed cross-section width
  int neighbor_exclusion = 1;

  void validate() const;
};

struct CollisionReport {
  bool collided = false;
  std::optional<int> first_increment;  // k of fraction k / n_increments
  std::optional<std::pair<std::size_t, std::size_t>> node_pair;
  double min_distance = 0.0;  // mm
};

// Node-to-node check of a single path. Pairs with |i - j| <= exclusion are
// skipped; the first pair (lexicographic) below the threshold is reported.
CollisionReport path_collision(const Trajectory& path, const CollisionConfig& cfg);

// Sweeps fractions k / n, k = 1..n, over the reflected full knot. Stops
// after the first colliding increment; min_distance then covers all
// increments scanned so far.
CollisionReport sweep_collision_check(const Sequence& seq, const ActivationProfile& profile,
                                      const CollisionConfig& cfg);

// Closed-segment / triangle intersection. Coplanar configurations count
// as no intersection.
bool segment_intersects_triangle(const Vec3& p0, const Vec3& p1, const Vec3& a, const Vec3& b,
                                 const Vec3& c);

// Does segment p0-p1 cross the centroid fan spanned by the closed loop?
bool segment_penetrates_loop(const Vec3& p0, const Vec3& p1, std::span<const Vec3> loop);

// Total area of the centroid fan of a closed loop.
double loop_fan_area(std::span<const Vec3> loop);

struct CompletenessResult {
  bool complete = false;
  bool right_tip_penetrates = false;
  bool left_tip_penetrates = false;
  std::string diagnostic;

  explicit operator bool() const { return complete; }
};

// Each half's final two segments must cross the centroid fan of the
// opposing half's loop (closed tip back to root). Full path must have an
// odd node count >= 7.
CompletenessResult completeness_check(const Trajectory& full);

}  // namespace morph
