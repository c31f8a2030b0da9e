#pragma once

#include "conjsynth/models.hpp"
#include "conjsynth/signals.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace conjsynth {

/// Per-scenario synthesis defaults, overridable from the CLI.
struct ScenarioDefaults {
  std::size_t objective = 1; ///< 1-based conjunct index used as the MCR objective
  std::size_t budget = 3000; ///< simulations per trial
  double timeout = 600.0;    ///< wall seconds per trial
  std::optional<std::size_t> lambda;
};

/// A model, the input parameterization searched over, and the STL
/// specification whose top-level conjuncts are to be satisfied together.
struct Scenario {
  std::string name;
  std::string description;
  std::string model_name;
  std::shared_ptr<const SystemModel> model;
  InputSpec input;
  std::string spec;
  ScenarioDefaults defaults;

  /// Throws config_error when the input alphabet does not match the model,
  /// the formula does not parse, or it mentions a variable that neither the
  /// model outputs nor the inputs provide.
  void validate() const;
};

/// AT surrogate with rpm <= p and speed <= 60 throughout [0,30] and gear
/// reaching 4 (ev_[0,30](gear >= 3) with strictly positive robustness).
Scenario at1_scenario(double rpm_bound, const AtParameters& params = {});

/// The packaged catalog: at1, at1-tight, at2, at3, analytic-corner,
/// analytic-contradiction, analytic-conflict.
std::vector<Scenario> builtin_scenarios();

/// Throws config_error for unknown names.
Scenario builtin_scenario(const std::string& name);

/// Build a scenario from a JSON config document:
///
///     {
///       "name": "...",                    optional, defaults to "custom"
///       "base": "<builtin name>",         optional, inherit everything below
///       "model": "at-surrogate" | "analytic-corner" | "analytic-identity"
///                | "analytic-conflict",
///       "parameters": { AtParameters field: value, ... },
///       "inputs": [ {"name", "min", "max", "control_points"}, ... ],
///       "horizon": 30, "sample_step": 0.1,
///       "spec": "<STL text>",
///       "defaults": {"objective", "budget", "timeout", "lambda"}
///     }
///
/// Array-valued AT parameters take JSON arrays. Throws config_error.
Scenario scenario_from_json(const nlohmann::json& config);
Scenario load_scenario_file(const std::filesystem::path& path);

/// A builtin name, or else a path to a JSON config file.
Scenario resolve_scenario(const std::string& name_or_path);

} // namespace conjsynth
