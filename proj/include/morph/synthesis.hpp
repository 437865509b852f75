#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "morph/collision.hpp"
#include "morph/fitness.hpp"
#include "morph/kinematics.hpp"
#include "morph/target_curve.hpp"

namespace morph {

struct GASettings {
  int population = 200;
  int generations = 300;
  int tournament_k = 3;
  double crossover_rate = 0.9;
  std::optional<double> mutation_rate;  // per gene; 1/N when unset
  int elitism = 2;
  std::uint64_t seed = 1;
  double collision_penalty = 1e3;
  double incompleteness_penalty = 1e2;
  int restarts = 8;  // independent populations per n, best kept
  int threads = 1;   // fitness workers; never changes results

  void validate() const;
  double mutation_rate_for(std::size_t n_elements) const;
};

// Which trajectory node is compared against the ideal midpoint anchor.
enum class MidpointRule {
  ArcLength,  // node whose chain length best matches the ideal arc length
  HalfChain,  // ceil((N + 1) / 2)
  Fixed,      // explicit node index
};

struct MidpointSelection {
  MidpointRule rule = MidpointRule::ArcLength;
  std::size_t node = 0;  // used by Fixed
};

struct SynthesisContext {
  ActivationProfile profile;
  IdealCurve curve;
  FitnessWeights weights;
  CollisionConfig collision;
  MidpointSelection midpoint;
  bool align_root_tangent = true;
  bool require_complete = true;
  // Success additionally needs y <= ratio * y(straight chain of equal n).
  // Non-positive disables the gate.
  double max_objective_ratio = 0.1;
  // Anchors in the chain frame; replaces the curve target when set.
  std::optional<AnchorSet> fixed_target;

  void validate() const;
};

struct TargetFrame {
  AnchorSet anchors;
  Pose mount;  // chain frame -> target frame
  std::size_t midpoint_node = 0;
};

std::size_t midpoint_node_for(const SynthesisContext& ctx, std::size_t n_elements);
TargetFrame target_frame(const SynthesisContext& ctx, std::size_t n_elements);

struct CandidateScore {
  double fitness = 0.0;  // objective + penalties, lower is better
  double objective_y = 0.0;
  double p_error = 0.0;
  double q_error = 0.0;
  bool collision_free = true;
  bool complete = false;
};

CandidateScore evaluate_candidate(const Sequence& seq, const SynthesisContext& ctx,
                                  const GASettings& settings);

// Same scoring with a precomputed target; avoids recomputing arc lengths.
CandidateScore evaluate_candidate(const Sequence& seq, const SynthesisContext& ctx,
                                  const GASettings& settings, const TargetFrame& target);

struct AnchorScore {
  double p_error = 0.0;
  double q_error = 0.0;
  double objective_y = 0.0;
};

// Objective terms of the chain activated to the given fraction.
AnchorScore score_anchors(const Sequence& seq, const SynthesisContext& ctx,
                          const TargetFrame& target, double fraction = 1.0);

// Objective of the all-neutral chain with n elements.
double straight_chain_objective(const SynthesisContext& ctx, std::size_t n_elements);

struct GenerationStats {
  int restart = 0;
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
};

struct GaRun {
  Sequence best;
  CandidateScore score;
  int generations_used = 0;
  std::vector<GenerationStats> log;
};

// One seeded GA population.
GaRun run_ga_once(std::size_t n_elements, const GASettings& settings, const SynthesisContext& ctx,
                  int restart);

// settings.restarts independent populations; the best (ties: lowest
// restart) is returned and logs are concatenated.
GaRun run_ga(std::size_t n_elements, const GASettings& settings, const SynthesisContext& ctx);

struct SynthesisResult {
  Sequence sequence;
  std::size_t n_elements = 0;
  double objective_y = 0.0;
  double p_error = 0.0;
  double q_error = 0.0;
  bool complete = false;
  bool collision_free = false;
  int generations_used = 0;
  double baseline_y = 0.0;  // straight chain of the same length
};

struct SynthesisAttempt {
  std::size_t n_elements = 0;
  GaRun run;
};

struct SynthesisOutcome {
  bool success = false;
  // The successful design, or the best attempt at max_n on failure.
  SynthesisResult result;
  std::vector<SynthesisAttempt> attempts;
};

// Escalates n from start_n to max_n, stopping at the first best design
// that is collision-free, complete (when required) and within the
// objective ratio gate.
SynthesisOutcome synthesize(const GASettings& settings, std::size_t start_n, std::size_t max_n,
                            const SynthesisContext& ctx);

// Seeded helpers with platform-independent output.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : engine_(seed) {}
  std::size_t index(std::size_t n);  // uniform in [0, n)
  double unit();                     // uniform in [0, 1)

 private:
  std::mt19937_64 engine_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace morph
