#pragma once

#include "conjsynth/signals.hpp"

#include <cstddef>
#include <span>
#include <vector>

// Multiple Constraint Ranking: replaces raw robustness values by per-population
// ranks so that conjuncts living on very different numeric scales weigh
// equally in selection.

namespace conjsynth::mcr {

struct EvaluatedIndividual {
  DecisionVector decision;
  double objective = 0.0;          ///< robustness of the objective conjunct
  std::vector<double> constraints; ///< robustness of every other conjunct
};

struct McrScore {
  std::size_t r_obj = 1;
  std::size_t r_vnum = 1;
  std::vector<std::size_t> r_con;
  /// Whether the population contained a feasible individual, which is what
  /// decides if r_obj counts towards the total.
  bool objective_counted = false;
  std::size_t total = 0;

  friend bool operator==(const McrScore&, const McrScore&) = default;
};

/// Every constraint robustness strictly positive.
bool is_feasible(const EvaluatedIndividual& ind);

/// Number of constraints with robustness <= 0.
std::size_t violation_count(const EvaluatedIndividual& ind);

/// Competition rank by objective, larger is better:
/// 1 + #{others with a strictly larger objective}.
std::vector<std::size_t> rank_objective(std::span<const EvaluatedIndividual> pop);

/// Competition rank by min(0, constraint j), larger is better. `j` indexes
/// EvaluatedIndividual::constraints (0-based).
std::vector<std::size_t> rank_constraint(std::span<const EvaluatedIndividual> pop,
                                         std::size_t j);

/// Competition rank by violation count, fewer is better.
std::vector<std::size_t> rank_violation_count(std::span<const EvaluatedIndividual> pop);

/// Score every individual; smaller totals are fitter. Without a feasible
/// individual the total is RVNum + sum RCon, otherwise RObj is added.
/// Throws std::invalid_argument on an empty population, ragged constraint
/// vectors, or NaN robustness.
std::vector<McrScore> score(std::span<const EvaluatedIndividual> pop);

/// Population indices sorted by ascending total score; ties keep population
/// order.
std::vector<std::size_t> selection_order(std::span<const McrScore> scores);

} // namespace conjsynth::mcr
