#include "morph/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

namespace morph {

void GASettings::validate() const {
  if (population < 2) throw std::invalid_argument("ga.population must be >= 2");
  if (generations < 0) throw std::invalid_argument("ga.generations must be >= 0");
  if (tournament_k < 1) throw std::invalid_argument("ga.tournament_k must be >= 1");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw std::invalid_argument("ga.crossover_rate must lie in [0, 1]");
  }
  if (mutation_rate && !(*mutation_rate >= 0.0 && *mutation_rate <= 1.0)) {
    throw std::invalid_argument("ga.mutation_rate must lie in [0, 1]");
  }
  if (elitism < 0 || elitism >= population) {
    throw std::invalid_argument("ga.elitism must lie in [0, population)");
  }
  if (!(collision_penalty >= 0.0)) throw std::invalid_argument("ga.collision_penalty must be >= 0");
  if (!(incompleteness_penalty >= 0.0)) {
    throw std::invalid_argument("ga.incompleteness_penalty must be >= 0");
  }
  if (restarts < 1) throw std::invalid_argument("ga.restarts must be >= 1");
  if (threads < 1) throw std::invalid_argument("ga.threads must be >= 1");
}

double GASettings::mutation_rate_for(std::size_t n_elements) const {
  return mutation_rate ? *mutation_rate : 1.0 / static_cast<double>(std::max<std::size_t>(n_elements, 1));
}

void SynthesisContext::validate() const {
  profile.validate();
  curve.validate();
  weights.validate();
  collision.validate();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::size_t SplitRng::index(std::size_t n) {
  // Rejection sampling keeps the draw unbiased and independent of the
  // standard library's distribution implementation.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

double SplitRng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t midpoint_node_for(const SynthesisContext& ctx, std::size_t n_elements) {
  switch (ctx.midpoint.rule) {
    case MidpointRule::Fixed:
      if (ctx.midpoint.node > n_elements) {
        throw std::invalid_argument("midpoint node index exceeds chain length");
      }
      return ctx.midpoint.node;
    case MidpointRule::HalfChain:
      return (n_elements + 2) / 2;  // ceil((N + 1) / 2)
    case MidpointRule::ArcLength: {
      if (ctx.fixed_target) return (n_elements + 2) / 2;
      const double t_mid = midpoint_parameter(ctx.curve, static_cast<double>(n_elements) - 1.0);
      const double s = arc_length_from_root(ctx.curve, t_mid);
      const auto node = static_cast<std::size_t>(std::lround(s / ctx.profile.element_length));
      return std::clamp<std::size_t>(node, 1, n_elements);
    }
  }
  return 0;
}

TargetFrame target_frame(const SynthesisContext& ctx, std::size_t n_elements) {
  TargetFrame frame;
  frame.midpoint_node = midpoint_node_for(ctx, n_elements);
  if (ctx.fixed_target) {
    frame.anchors = *ctx.fixed_target;
    return frame;
  }
  frame.anchors = chain_anchors(ctx.curve, static_cast<int>(n_elements));
  frame.mount = root_mount(ctx.curve, ctx.align_root_tangent);
  return frame;
}

CandidateScore evaluate_candidate(const Sequence& seq, const SynthesisContext& ctx,
                                  const GASettings& settings) {
  return evaluate_candidate(seq, ctx, settings, target_frame(ctx, seq.size()));
}

AnchorScore score_anchors(const Sequence& seq, const SynthesisContext& ctx,
                          const TargetFrame& target, double fraction) {
  const ChainState state = forward_kinematics(seq, ctx.profile, fraction);
  Pose tip;
  tip.rotation = target.mount.rotation * state.tip.rotation;
  tip.position = target.mount.apply(state.tip.position);
  const Trajectory placed = transformed(state.trajectory, target.mount);

  AnchorScore score;
  const TrialAnchors trial = trial_anchors(placed, tip, target.midpoint_node);
  score.p_error = position_error(trial, target.anchors, ctx.weights);
  score.q_error = orientation_error(trial, target.anchors);
  score.objective_y = objective(score.p_error, score.q_error, ctx.weights);
  return score;
}

double straight_chain_objective(const SynthesisContext& ctx, std::size_t n_elements) {
  const Sequence straight(std::vector<ElementKind>(n_elements, ElementKind::Neutral));
  return score_anchors(straight, ctx, target_frame(ctx, n_elements)).objective_y;
}

CandidateScore evaluate_candidate(const Sequence& seq, const SynthesisContext& ctx,
                                  const GASettings& settings, const TargetFrame& target) {
  const AnchorScore anchors = score_anchors(seq, ctx, target);
  CandidateScore score;
  score.p_error = anchors.p_error;
  score.q_error = anchors.q_error;
  score.objective_y = anchors.objective_y;

  score.collision_free = !sweep_collision_check(seq, ctx.profile, ctx.collision).collided;
  // Rigid placement does not change completeness, so the chain frame is used.
  if (seq.size() >= 3) {
    const Trajectory half = forward_kinematics(seq, ctx.profile, 1.0).trajectory;
    score.complete = completeness_check(reflect_about_root(half)).complete;
  }

  score.fitness = score.objective_y;
  if (!score.collision_free) score.fitness += settings.collision_penalty;
  if (ctx.require_complete && !score.complete) score.fitness += settings.incompleteness_penalty;
  return score;
}

namespace {

using Chromosome = std::vector<ElementKind>;

std::string key_of(const Chromosome& c) {
  std::string k(c.size(), 'a');
  for (std::size_t i = 0; i < c.size(); ++i) k[i] = letter_code(c[i]);
  return k;
}

class PopulationEvaluator {
 public:
  PopulationEvaluator(const SynthesisContext& ctx, const GASettings& settings, std::size_t n)
      : ctx_(ctx), settings_(settings), target_(target_frame(ctx, n)) {}

  std::vector<CandidateScore> operator()(const std::vector<Chromosome>& pop) {
    std::vector<std::string> keys(pop.size());
    std::vector<std::size_t> pending;
    std::unordered_map<std::string, std::size_t> first_seen;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      keys[i] = key_of(pop[i]);
      if (cache_.count(keys[i]) == 0 && first_seen.emplace(keys[i], i).second) {
        pending.push_back(i);
      }
    }

    std::vector<CandidateScore> fresh(pending.size());
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t p = begin; p < end; ++p) {
        fresh[p] = evaluate_candidate(Sequence(pop[pending[p]]), ctx_, settings_, target_);
      }
    };
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(settings_.threads), pending.size());
    if (workers <= 1) {
      work(0, pending.size());
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (pending.size() + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(pending.size(), b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
      }
      for (auto& t : pool) t.join();
    }
    for (std::size_t p = 0; p < pending.size(); ++p) cache_.emplace(keys[pending[p]], fresh[p]);

    std::vector<CandidateScore> scores(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) scores[i] = cache_.at(keys[i]);
    return scores;
  }

 private:
  const SynthesisContext& ctx_;
  const GASettings& settings_;
  TargetFrame target_;
  std::unordered_map<std::string, CandidateScore> cache_;
};

// Index of the lowest fitness; ties go to the lower index.
std::size_t argbest(const std::vector<CandidateScore>& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i].fitness < scores[best].fitness) best = i;
  }
  return best;
}

GenerationStats stats_of(int restart, int generation, const std::vector<CandidateScore>& scores) {
  GenerationStats s;
  s.restart = restart;
  s.generation = generation;
  s.best_fitness = scores[argbest(scores)].fitness;
  double sum = 0.0;
  for (const auto& c : scores) sum += c.fitness;
  s.mean_fitness = sum / static_cast<double>(scores.size());
  return s;
}

}  // namespace

GaRun run_ga_once(std::size_t n_elements, const GASettings& settings, const SynthesisContext& ctx,
                  int restart) {
  if (n_elements < 1) throw std::invalid_argument("run_ga: n_elements must be >= 1");
  settings.validate();

  SplitRng rng(mix_seed(settings.seed, (n_elements << 16) + static_cast<std::uint64_t>(restart)));
  const auto pop_size = static_cast<std::size_t>(settings.population);
  const double p_mut = settings.mutation_rate_for(n_elements);
  PopulationEvaluator evaluate(ctx, settings, n_elements);

  std::vector<Chromosome> pop(pop_size, Chromosome(n_elements));
  for (auto& c : pop) {
    for (auto& g : c) g = kAllElementKinds[rng.index(kElementKindCount)];
  }
  std::vector<CandidateScore> scores = evaluate(pop);

  GaRun run;
  run.log.push_back(stats_of(restart, 0, scores));

  auto tournament = [&]() {
    std::size_t best = rng.index(pop_size);
    for (int k = 1; k < settings.tournament_k; ++k) {
      const std::size_t c = rng.index(pop_size);
      if (scores[c].fitness < scores[best].fitness ||
          (scores[c].fitness == scores[best].fitness && c < best)) {
        best = c;
      }
    }
    return best;
  };
  auto mutate = [&](Chromosome& c) {
    for (auto& g : c) {
      if (rng.unit() < p_mut) g = kAllElementKinds[rng.index(kElementKindCount)];
    }
  };

  for (int gen = 1; gen <= settings.generations; ++gen) {
    std::vector<std::size_t> order(pop_size);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return scores[a].fitness < scores[b].fitness;
    });

    std::vector<Chromosome> next;
    next.reserve(pop_size);
    for (int e = 0; e < settings.elitism; ++e) next.push_back(pop[order[static_cast<std::size_t>(e)]]);

    while (next.size() < pop_size) {
      Chromosome a = pop[tournament()];
      Chromosome b = pop[tournament()];
      if (n_elements >= 2 && rng.unit() < settings.crossover_rate) {
        const std::size_t cut = 1 + rng.index(n_elements - 1);
        std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(cut), a.end(),
                         b.begin() + static_cast<std::ptrdiff_t>(cut));
      }
      mutate(a);
      mutate(b);
      next.push_back(std::move(a));
      if (next.size() < pop_size) next.push_back(std::move(b));
    }
    pop = std::move(next);
    scores = evaluate(pop);
    run.log.push_back(stats_of(restart, gen, scores));
  }

  const std::size_t best = argbest(scores);
  run.best = Sequence(pop[best]);
  run.score = scores[best];
  run.generations_used = settings.generations;
  return run;
}

GaRun run_ga(std::size_t n_elements, const GASettings& settings, const SynthesisContext& ctx) {
  settings.validate();
  GaRun best = run_ga_once(n_elements, settings, ctx, 0);
  for (int r = 1; r < settings.restarts; ++r) {
    GaRun run = run_ga_once(n_elements, settings, ctx, r);
    std::move(run.log.begin(), run.log.end(), std::back_inserter(best.log));
    if (run.score.fitness < best.score.fitness) {
      best.best = std::move(run.best);
      best.score = run.score;
    }
  }
  best.generations_used = settings.generations;
  return best;
}

SynthesisOutcome synthesize(const GASettings& settings, std::size_t start_n, std::size_t max_n,
                            const SynthesisContext& ctx) {
  if (start_n < 1 || start_n > max_n) {
    throw std::invalid_argument("synthesize: need 1 <= start_n <= max_n");
  }
  ctx.validate();
  settings.validate();

  SynthesisOutcome outcome;
  for (std::size_t n = start_n; n <= max_n; ++n) {
    GaRun run = run_ga(n, settings, ctx);
    const double baseline = straight_chain_objective(ctx, n);
    bool ok = run.score.collision_free && (run.score.complete || !ctx.require_complete);
    if (ctx.max_objective_ratio > 0.0) ok = ok && run.score.objective_y <= ctx.max_objective_ratio * baseline;

    SynthesisResult& r = outcome.result;
    r.sequence = run.best;
    r.n_elements = n;
    r.objective_y = run.score.objective_y;
    r.p_error = run.score.p_error;
    r.q_error = run.score.q_error;
    r.complete = run.score.complete;
    r.collision_free = run.score.collision_free;
    r.generations_used = run.generations_used;
    r.baseline_y = baseline;

    outcome.attempts.push_back({n, std::move(run)});
    if (ok) {
      outcome.success = true;
      break;
    }
  }
  return outcome;
}

}  // namespace morph
