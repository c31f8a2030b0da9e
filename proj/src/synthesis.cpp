#include "conjsynth/synthesis.hpp"

#include "conjsynth/error.hpp"
#include "conjsynth/mcr.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace conjsynth {
namespace {

enum class Ordering { MinAggregate, Mcr };

using Clock = std::chrono::steady_clock;

std::vector<std::size_t> order_min_aggregate(const std::vector<double>& aggregate) {
  std::vector<std::size_t> order(aggregate.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return aggregate[a] > aggregate[b]; });
  return order;
}

std::vector<std::size_t> order_mcr(const cmaes::Population& pop,
                                   const std::vector<std::vector<double>>& rob,
                                   std::size_t objective) {
  std::vector<mcr::EvaluatedIndividual> evaluated(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    auto& ind = evaluated[i];
    ind.decision = pop[i];
    ind.objective = rob[i][objective];
    for (std::size_t j = 0; j < rob[i].size(); ++j) {
      if (j != objective) {
        ind.constraints.push_back(rob[i][j]);
      }
    }
  }
  const auto scores = mcr::score(evaluated);
  return mcr::selection_order(scores);
}

SynthesisResult synthesize(const SynthesisConfig& config, Ordering ordering) {
  config.validate();
  const auto start = Clock::now();
  const auto conjuncts = config.conjuncts();
  const std::size_t objective = config.objective - 1;

  cmaes::Options options;
  options.lambda = config.lambda;
  cmaes::Optimizer optimizer(lower_bounds(config.input), upper_bounds(config.input), config.seed,
                             options);
  const std::size_t lambda = optimizer.lambda();

  SynthesisResult result;
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  std::vector<std::vector<double>> rob(lambda);
  std::vector<double> aggregate(lambda);
  while (true) {
    if (result.best_robustness > 0.0) {
      result.outcome = Outcome::Satisfied;
      break;
    }
    if (result.simulations + lambda > config.budget) {
      result.outcome = Outcome::FailureBudget;
      break;
    }
    if (elapsed() >= config.timeout) {
      result.outcome = Outcome::FailureTimeout;
      break;
    }
    if (optimizer.equal_fun_values_triggered()) {
      result.outcome = Outcome::FailureStationary;
      break;
    }

    const auto pop = optimizer.ask();
    detail::parallel_for(lambda, config.threads, [&](std::size_t i) {
      const auto input = gen_signal(config.input, pop[i]);
      try {
        rob[i] = evaluate_conjuncts(*config.model, input, conjuncts);
      } catch (const simulation_error& e) {
        throw simulation_error("generation " + std::to_string(result.generations + 1) +
                               ", individual " + std::to_string(i + 1) + ": " + e.what());
      }
    });
    result.simulations += lambda;
    ++result.generations;

    std::optional<std::size_t> improved;
    for (std::size_t i = 0; i < lambda; ++i) {
      aggregate[i] = *std::min_element(rob[i].begin(), rob[i].end());
      if (aggregate[i] > result.best_robustness) {
        result.best_robustness = aggregate[i];
        improved = i;
      }
    }
    if (improved || result.best_input.empty()) {
      const std::size_t i = improved.value_or(0);
      result.best_input = pop[i];
      result.best_conjuncts = rob[i];
      if (!improved) {
        result.best_robustness = aggregate[i];
      }
    }

    const auto order = ordering == Ordering::Mcr ? order_mcr(pop, rob, objective)
                                                 : order_min_aggregate(aggregate);
    cmaes::Population ranked;
    ranked.reserve(lambda);
    for (const auto i : order) {
      ranked.push_back(pop[i]);
    }
    optimizer.tell(ranked, *std::max_element(aggregate.begin(), aggregate.end()));

    if (config.observer) {
      GenerationRecord record;
      record.generation = result.generations;
      record.simulations = result.simulations;
      record.best_robustness = result.best_robustness;
      record.best_conjuncts = result.best_conjuncts;
      record.population = &pop;
      record.robustness = &rob;
      record.order = &order;
      config.observer(record);
    }
  }
  if (!result.best_input.empty()) {
    result.best_trace = gen_signal(config.input, result.best_input);
  }
  result.wall_time = elapsed();
  return result;
}

} // namespace

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
  case Outcome::Satisfied:
    return "satisfied";
  case Outcome::FailureBudget:
    return "failure-budget";
  case Outcome::FailureTimeout:
    return "failure-timeout";
  case Outcome::FailureStationary:
    return "failure-stationary";
  }
  return "?";
}

Outcome outcome_from_string(std::string_view name) {
  for (auto o : {Outcome::Satisfied, Outcome::FailureBudget, Outcome::FailureTimeout,
                 Outcome::FailureStationary}) {
    if (to_string(o) == name) {
      return o;
    }
  }
  throw config_error("unknown outcome '" + std::string(name) + "'");
}

std::vector<stl::Formula> SynthesisConfig::conjuncts() const {
  return stl::top_level_conjuncts(formula);
}

void SynthesisConfig::validate() const {
  if (!model) {
    throw config_error("synthesis needs a model");
  }
  input.validate();
  for (const auto& var : input.variables) {
    const auto& outs = model->outputs();
    if (std::find(outs.begin(), outs.end(), var.name) != outs.end()) {
      throw config_error("input '" + var.name + "' collides with a model output");
    }
  }
  const auto m = conjuncts().size();
  if (objective < 1 || objective > m) {
    throw config_error("objective conjunct " + std::to_string(objective) + " is outside [1, " +
                       std::to_string(m) + "]");
  }
  if (!(timeout > 0.0)) {
    throw config_error("synthesis timeout must be positive");
  }
  if (lambda && *lambda < 2) {
    throw config_error("population size must be at least 2");
  }
}

SynthesisConfig make_config(const Scenario& scenario, std::uint64_t seed) {
  scenario.validate();
  SynthesisConfig config;
  config.model = scenario.model;
  config.input = scenario.input;
  config.formula = stl::parse_formula(scenario.spec);
  config.objective = scenario.defaults.objective;
  config.lambda = scenario.defaults.lambda;
  config.budget = scenario.defaults.budget;
  config.timeout = scenario.defaults.timeout;
  config.seed = seed;
  return config;
}

SynthesisResult cmaes_synthesize(const SynthesisConfig& config) {
  return synthesize(config, Ordering::MinAggregate);
}

SynthesisResult mcr_synthesize(const SynthesisConfig& config) {
  return synthesize(config, Ordering::Mcr);
}

std::vector<SynthesisConfig> choose_objective_variants(const SynthesisConfig& config) {
  const auto m = config.conjuncts().size();
  if (m < 2) {
    throw config_error("objective variants need at least two conjuncts");
  }
  std::vector<SynthesisConfig> out(m, config);
  for (std::size_t k = 0; k < m; ++k) {
    out[k].objective = k + 1;
  }
  return out;
}

std::vector<double> evaluate_conjuncts(const SystemModel& model, const Trace& input,
                                       const std::vector<stl::Formula>& conjuncts) {
  const auto output = model.simulate(input);
  if (output.size() != input.size() || output.step() != input.step()) {
    throw simulation_error(model.name() + " returned a trace on a different grid");
  }
  const auto combined = input.merged(output);
  std::vector<double> rob;
  rob.reserve(conjuncts.size());
  for (const auto& c : conjuncts) {
    rob.push_back(stl::robustness(combined, c));
  }
  return rob;
}

} // namespace conjsynth
