#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bitstring.hpp"
#include "graph.hpp"
#include "mutation.hpp"
#include "problems.hpp"
#include "rng.hpp"

namespace ftlab {

enum class InitKind { uniform_random, all_zeros, all_ones, fixed };

struct InitModel {
  InitKind kind = InitKind::uniform_random;
  std::optional<BitString> point;

  static InitModel uniform_random() { return {InitKind::uniform_random, {}}; }
  static InitModel all_zeros() { return {InitKind::all_zeros, {}}; }
  static InitModel all_ones() { return {InitKind::all_ones, {}}; }
  static InitModel fixed(BitString x) { return {InitKind::fixed, std::move(x)}; }

  BitString sample(std::size_t n, Rng& rng) const {
    switch (kind) {
      case InitKind::uniform_random: return BitString::random(n, rng);
      case InitKind::all_zeros: return BitString::zeros(n);
      case InitKind::all_ones: return BitString::ones(n);
      case InitKind::fixed:
        if (!point || point->size() != n)
          throw std::invalid_argument("InitModel: fixed point has wrong dimension");
        return *point;
    }
    return BitString::zeros(n);
  }
};

// Default evaluation budget: 100 e n ln(n+1).
inline std::uint64_t default_budget(std::size_t n) {
  double v = 100.0 * std::exp(1.0) * static_cast<double>(n) *
             std::log(static_cast<double>(n) + 1.0);
  return static_cast<std::uint64_t>(v) + 1;
}

struct EaConfig {
  std::size_t mu = 1;
  std::size_t lambda = 1;
  MutationModel mutation = MutationModel::rls();
  InitModel init = InitModel::uniform_random();
  std::uint64_t max_evaluations = 0;  // 0 = default_budget(dimension)
};

template <class P>
struct TraceEntry {
  typename P::Fitness fitness;
  std::uint64_t evaluations;  // fitness-function calls consumed when first attained
};

/// Record of one run: the chronological strict improvements of the best-so-far
// fitness (the first entry is the best initial individual), total evaluations,
// and the final population (ids expose survival decisions: an id changes when
// an offspring replaced an equally fit parent).
template <class P>
struct RunResult {
  std::vector<TraceEntry<P>> trace;
  std::uint64_t evaluations = 0;
  bool reached_optimum = false;

  struct Member {
    typename P::Fitness fitness;
    std::uint64_t id;
  };
  std::vector<Member> final_population;

  // Evaluations consumed when the best-so-far fitness first reached `target`,
  // or nullopt if the run ended (budget) before that happened.
  std::optional<std::uint64_t> first_hit(const typename P::Fitness& target) const {
    for (const auto& e : trace) {
      bool reached = P::maximizing ? !(e.fitness < target) : !(target < e.fitness);
      if (reached) return e.evaluations;
    }
    return std::nullopt;
  }
};

namespace detail {

template <class F, bool Maximizing>
inline bool strictly_better(const F& a, const F& b) {
  if constexpr (Maximizing)
    return b < a;
  else
    return a < b;
}

}  // namespace detail

// The (mu + lambda) evolutionary algorithm. Each generation draws lambda
// offspring (uniform parent, flip count from the mutation model, that many
// distinct uniform bits flipped) and keeps the mu best of parents plus
// offspring. Fitness ties are broken uniformly at random, except that an
// offspring always precedes an equally fit parent, so a zero-bit mutation
// still replaces its parent. Terminates when the optimum is attained or the
// evaluation budget is spent.
template <class P>
RunResult<P> run(const P& problem, const EaConfig& cfg, Rng& rng) {
  const std::size_t n = problem.dimension();
  if (cfg.mu == 0 || cfg.lambda == 0)
    throw std::invalid_argument("run: mu and lambda must be positive");
  cfg.mutation.validate(n);
  const std::uint64_t budget = cfg.max_evaluations ? cfg.max_evaluations : default_budget(n);
  if (budget < cfg.mu)
    throw std::invalid_argument("run: budget cannot cover initialization");

  FlipCountDistribution flips(cfg.mutation, n);

  struct Individual {
    BitString x;
    typename P::Fitness f;
    std::uint64_t id;
    bool is_offspring;
    std::uint64_t tie_key;
  };

  RunResult<P> result;
  std::uint64_t next_id = 1;
  std::vector<Individual> pop;
  pop.reserve(cfg.mu + cfg.lambda);

  auto better = [](const typename P::Fitness& a, const typename P::Fitness& b) {
    return detail::strictly_better<typename P::Fitness, P::maximizing>(a, b);
  };

  const typename P::Fitness opt = problem.optimum();
  std::optional<typename P::Fitness> best;

  for (std::size_t i = 0; i < cfg.mu; ++i) {
    BitString x = cfg.init.sample(n, rng);
    typename P::Fitness f = problem.evaluate(x);
    ++result.evaluations;
    if (!best || better(f, *best)) {
      best = f;
      result.trace.push_back({f, result.evaluations});
    }
    pop.push_back({std::move(x), std::move(f), next_id++, false, 0});
  }
  result.reached_optimum = best == opt;

  std::vector<Individual> arena;
  while (!result.reached_optimum && result.evaluations < budget) {
    arena.clear();
    for (auto& ind : pop) {
      ind.is_offspring = false;
      arena.push_back(std::move(ind));
    }
    for (std::size_t j = 0; j < cfg.lambda && result.evaluations < budget; ++j) {
      const Individual& parent = arena[rng.next_below(cfg.mu)];
      BitString y = parent.x;
      flip_distinct_bits(y, flips.sample(rng), rng);
      typename P::Fitness f = problem.evaluate(y);
      ++result.evaluations;
      if (better(f, *best)) {
        best = f;
        result.trace.push_back({f, result.evaluations});
      }
      arena.push_back({std::move(y), std::move(f), next_id++, true, 0});
    }
    // survival selection: best mu, offspring first among ties, random inside
    for (auto& ind : arena) ind.tie_key = rng.next_u64();
    std::stable_sort(arena.begin(), arena.end(), [&](const Individual& a, const Individual& b) {
      if (better(a.f, b.f)) return true;
      if (better(b.f, a.f)) return false;
      if (a.is_offspring != b.is_offspring) return a.is_offspring;
      return a.tie_key < b.tie_key;
    });
    pop.clear();
    for (std::size_t i = 0; i < cfg.mu; ++i) pop.push_back(std::move(arena[i]));
    result.reached_optimum = *best == opt;
  }

  result.final_population.reserve(pop.size());
  for (const auto& ind : pop) result.final_population.push_back({ind.f, ind.id});
  return result;
}

// Fixed-target view of a spanning-subgraph run: first-hit evaluation counts
// for component-count targets and, once connected, for weight-excess targets.
struct MstTrace {
  // strictly decreasing component counts with the evaluations when attained
  std::vector<std::pair<std::size_t, std::uint64_t>> component_hits;
  // strictly decreasing weight excess over the optimum, recorded while connected
  std::vector<std::pair<std::int64_t, std::uint64_t>> excess_hits;
  std::uint64_t evaluations = 0;
  bool reached_optimum = false;

  std::optional<std::uint64_t> first_components_at_most(std::size_t target) const {
    for (const auto& [c, e] : component_hits)
      if (c <= target) return e;
    return std::nullopt;
  }
  std::optional<std::uint64_t> first_excess_at_most(std::int64_t target) const {
    for (const auto& [x, e] : excess_hits)
      if (x <= target) return e;
    return std::nullopt;
  }
};

inline MstTrace run_mst_trace(const MstProblem& problem, const EaConfig& cfg, Rng& rng) {
  RunResult<MstProblem> r = run(problem, cfg, rng);
  MstTrace t;
  t.evaluations = r.evaluations;
  t.reached_optimum = r.reached_optimum;
  std::size_t last_c = problem.graph.n_vertices + 1;
  for (const auto& e : r.trace) {
    std::size_t c = problem.components_of(e.fitness);
    if (c < last_c) {
      t.component_hits.emplace_back(c, e.evaluations);
      last_c = c;
    }
    if (c == 1) {
      std::int64_t excess = static_cast<std::int64_t>(problem.weight_of(e.fitness)) -
                            static_cast<std::int64_t>(problem.optimum_weight);
      t.excess_hits.emplace_back(excess, e.evaluations);
    }
  }
  return t;
}

}  // namespace ftlab
