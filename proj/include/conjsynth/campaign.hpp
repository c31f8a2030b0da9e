#pragma once

#include "conjsynth/scenarios.hpp"
#include "conjsynth/synthesis.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace conjsynth {

enum class Algorithm { Cmaes, Mcr, McrAllObjectives };

std::string_view to_string(Algorithm algo);
/// Accepts "cmaes", "mcr" and "mcr-all". Throws config_error otherwise.
Algorithm algorithm_from_string(std::string_view name);

/// Default seed list 1..20.
std::vector<std::uint64_t> default_seeds();

struct Campaign {
  Scenario scenario;
  Algorithm algorithm = Algorithm::Mcr;
  std::vector<std::uint64_t> seeds = default_seeds();
  std::optional<std::size_t> objective; ///< overrides the scenario default
  std::optional<std::size_t> budget;
  std::optional<double> timeout;
  std::optional<std::size_t> lambda;
  /// Trials run concurrently on this many threads; reports do not depend on it.
  std::size_t threads = 1;

  /// Throws config_error on an empty seed list or an invalid scenario or
  /// override.
  void validate() const;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  /// Empty when the trial aborted on a simulation failure (see `error`).
  std::optional<Outcome> outcome;
  std::string error;
  double time = 0.0;
  std::size_t simulations = 0;
  std::size_t generations = 0;
  double best_robustness = 0.0;
  std::vector<double> best_conjuncts;
  DecisionVector best_input;

  bool satisfied() const noexcept { return outcome == Outcome::Satisfied; }
  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Trials and aggregates for one objective choice.
struct ObjectiveReport {
  std::size_t objective = 1; ///< 1-based conjunct index; 0 for plain CMA-ES
  std::vector<TrialRecord> trials;
  std::size_t success_count = 0;
  /// Mean time over successful trials; absent when none succeeded.
  std::optional<double> mean_time;

  /// Recompute success_count and mean_time from the trials.
  void aggregate();
  friend bool operator==(const ObjectiveReport&, const ObjectiveReport&) = default;
};

struct CampaignReport {
  std::string scenario;
  std::string spec;
  Algorithm algorithm = Algorithm::Mcr;
  std::size_t budget = 0;
  double timeout = 0.0;
  std::vector<ObjectiveReport> runs; ///< one entry, or one per conjunct for mcr-all
  /// Indices into `runs` of the best and worst objective choice (mcr-all only).
  std::optional<std::size_t> best;
  std::optional<std::size_t> worst;

  /// The run the exit code and headline numbers refer to: `best` when set,
  /// otherwise the only run.
  const ObjectiveReport& headline() const;
  friend bool operator==(const CampaignReport&, const CampaignReport&) = default;
};

/// Runs every seed to completion. Simulation failures end that trial only.
CampaignReport run_campaign(const Campaign& campaign);

/// Indices of the best and worst report under (success count descending,
/// mean time ascending); earlier reports win exact ties. Throws config_error
/// on fewer than two reports.
std::pair<std::size_t, std::size_t> best_worst_objective(const std::vector<ObjectiveReport>& reports);

/// One row per trial and one aggregate footer row per objective choice:
///
///   objective,seed,outcome,time,simulations,generations,best_robustness,conjuncts
///
/// The footer has seed "aggregate", outcome "SR=<k>/<n>" and time "---" when
/// nothing succeeded. Conjunct robustness values are ';'-separated.
void write_report_csv(std::ostream& out, const CampaignReport& report);

nlohmann::json report_to_json(const CampaignReport& report);
/// Throws config_error on a malformed document.
CampaignReport report_from_json(const nlohmann::json& doc);

/// Write `report` to `path` as "csv" or "json". Throws error on I/O failure.
void emit_report(const CampaignReport& report, const std::filesystem::path& path,
                 std::string_view format);

} // namespace conjsynth
