#pragma once

#include "conjsynth/cmaes.hpp"
#include "conjsynth/models.hpp"
#include "conjsynth/scenarios.hpp"
#include "conjsynth/signals.hpp"
#include "conjsynth/stl.hpp"
#include "conjsynth/trace.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace conjsynth {

enum class Outcome { Satisfied, FailureBudget, FailureTimeout, FailureStationary };

std::string_view to_string(Outcome outcome);
/// Throws config_error for unknown names.
Outcome outcome_from_string(std::string_view name);

/// Snapshot handed to the observer after every tell().
struct GenerationRecord {
  std::size_t generation = 0;  ///< 1-based
  std::size_t simulations = 0; ///< cumulative
  double best_robustness = 0.0;
  std::vector<double> best_conjuncts;
  /// The asked population, its per-conjunct robustness (row per individual)
  /// and the order it was told in.
  const cmaes::Population* population = nullptr;
  const std::vector<std::vector<double>>* robustness = nullptr;
  const std::vector<std::size_t>* order = nullptr;
};

using GenerationObserver = std::function<void(const GenerationRecord&)>;

struct SynthesisConfig {
  std::shared_ptr<const SystemModel> model;
  InputSpec input;
  /// Its top-level conjuncts are phi_1..phi_m in written order.
  stl::Formula formula;
  /// 1-based index of the conjunct MCR optimizes; the rest are constraints.
  std::size_t objective = 1;
  std::optional<std::size_t> lambda;
  std::size_t budget = 3000; ///< simulations; 0 stops before sampling
  double timeout = 600.0;    ///< wall seconds, checked between generations
  std::uint64_t seed = 1;
  /// Worker threads for the per-generation simulations; results do not
  /// depend on this.
  std::size_t threads = 1;
  GenerationObserver observer;

  std::vector<stl::Formula> conjuncts() const;

  /// Throws config_error on a missing model, an invalid input spec, an
  /// objective index outside [1, m], or a nonpositive timeout.
  void validate() const;
};

/// Config carrying the scenario's model, input, spec and defaults.
SynthesisConfig make_config(const Scenario& scenario, std::uint64_t seed);

struct SynthesisResult {
  Outcome outcome = Outcome::FailureBudget;
  /// Best individual found; empty when no simulation ran.
  DecisionVector best_input;
  Trace best_trace; ///< gen_signal(best_input)
  double best_robustness = -stl::infinity;
  std::vector<double> best_conjuncts;
  std::size_t simulations = 0;
  std::size_t generations = 0;
  double wall_time = 0.0;
};

/// Maximize the min-aggregated robustness of all
/// conjuncts with CMA-ES until it is positive, the budget or timeout is
/// exhausted, or EqualFunValues fires.
SynthesisResult cmaes_synthesize(const SynthesisConfig& config);

/// As cmaes_synthesize, but each population is told in ascending MCR score
/// order with the configured objective conjunct as objective. The best
/// individual is still tracked by min-aggregated robustness.
SynthesisResult mcr_synthesize(const SynthesisConfig& config);

/// One config per choice of objective conjunct, otherwise identical.
/// Throws config_error when the formula has fewer than two conjuncts.
std::vector<SynthesisConfig> choose_objective_variants(const SynthesisConfig& config);

/// Simulate `input` and evaluate every conjunct on the input and output
/// signals side by side.
std::vector<double> evaluate_conjuncts(const SystemModel& model, const Trace& input,
                                       const std::vector<stl::Formula>& conjuncts);

} // namespace conjsynth
