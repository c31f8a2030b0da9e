#include "conjsynth/campaign.hpp"

#include "conjsynth/error.hpp"
#include "parallel.hpp"

#include <numeric>

namespace conjsynth {

std::string_view to_string(Algorithm algo) {
  switch (algo) {
  case Algorithm::Cmaes:
    return "cmaes";
  case Algorithm::Mcr:
    return "mcr";
  case Algorithm::McrAllObjectives:
    return "mcr-all";
  }
  return "?";
}

Algorithm algorithm_from_string(std::string_view name) {
  for (auto a : {Algorithm::Cmaes, Algorithm::Mcr, Algorithm::McrAllObjectives}) {
    if (to_string(a) == name) {
      return a;
    }
  }
  throw config_error("unknown algorithm '" + std::string(name) + "'");
}

std::vector<std::uint64_t> default_seeds() {
  std::vector<std::uint64_t> seeds(20);
  std::iota(seeds.begin(), seeds.end(), 1);
  return seeds;
}

void Campaign::validate() const {
  if (seeds.empty()) {
    throw config_error("campaign needs at least one seed");
  }
  scenario.validate();
  auto config = make_config(scenario, seeds.front());
  if (objective) {
    config.objective = *objective;
  }
  if (timeout) {
    config.timeout = *timeout;
  }
  config.lambda = lambda ? lambda : config.lambda;
  config.validate();
  if (algorithm == Algorithm::McrAllObjectives && config.conjuncts().size() < 2) {
    throw config_error("mcr-all needs a specification with at least two conjuncts");
  }
}

void ObjectiveReport::aggregate() {
  success_count = 0;
  double total = 0.0;
  for (const auto& t : trials) {
    if (t.satisfied()) {
      ++success_count;
      total += t.time;
    }
  }
  mean_time = success_count == 0 ? std::nullopt
                                 : std::optional<double>(total / static_cast<double>(success_count));
}

const ObjectiveReport& CampaignReport::headline() const {
  if (runs.empty()) {
    throw error("campaign report has no runs");
  }
  return runs.at(best.value_or(0));
}

namespace {

TrialRecord run_trial(const SynthesisConfig& config, Algorithm algo) {
  TrialRecord rec;
  rec.seed = config.seed;
  try {
    const auto r = algo == Algorithm::Cmaes ? cmaes_synthesize(config) : mcr_synthesize(config);
    rec.outcome = r.outcome;
    rec.time = r.wall_time;
    rec.simulations = r.simulations;
    rec.generations = r.generations;
    rec.best_robustness = r.best_robustness;
    rec.best_conjuncts = r.best_conjuncts;
    rec.best_input = r.best_input;
  } catch (const simulation_error& e) {
    rec.error = e.what();
  } catch (const numerical_error& e) {
    rec.error = e.what();
  }
  return rec;
}

} // namespace

CampaignReport run_campaign(const Campaign& campaign) {
  campaign.validate();
  auto base = make_config(campaign.scenario, campaign.seeds.front());
  if (campaign.objective) {
    base.objective = *campaign.objective;
  }
  if (campaign.budget) {
    base.budget = *campaign.budget;
  }
  if (campaign.timeout) {
    base.timeout = *campaign.timeout;
  }
  if (campaign.lambda) {
    base.lambda = campaign.lambda;
  }

  CampaignReport report;
  report.scenario = campaign.scenario.name;
  report.spec = campaign.scenario.spec;
  report.algorithm = campaign.algorithm;
  report.budget = base.budget;
  report.timeout = base.timeout;

  std::vector<SynthesisConfig> variants;
  if (campaign.algorithm == Algorithm::McrAllObjectives) {
    variants = choose_objective_variants(base);
  } else {
    variants.push_back(base);
  }

  for (const auto& variant : variants) {
    ObjectiveReport run;
    run.objective = campaign.algorithm == Algorithm::Cmaes ? 0 : variant.objective;
    run.trials.resize(campaign.seeds.size());
    detail::parallel_for(campaign.seeds.size(), campaign.threads, [&](std::size_t i) {
      auto config = variant;
      config.seed = campaign.seeds[i];
      run.trials[i] = run_trial(config, campaign.algorithm);
    });
    run.aggregate();
    report.runs.push_back(std::move(run));
  }
  if (report.runs.size() >= 2) {
    const auto [best, worst] = best_worst_objective(report.runs);
    report.best = best;
    report.worst = worst;
  }
  return report;
}

std::pair<std::size_t, std::size_t> best_worst_objective(const std::vector<ObjectiveReport>& reports) {
  if (reports.size() < 2) {
    throw config_error("best/worst selection needs at least two reports");
  }
  // a strictly better than b
  auto better = [](const ObjectiveReport& a, const ObjectiveReport& b) {
    if (a.success_count != b.success_count) {
      return a.success_count > b.success_count;
    }
    if (a.mean_time && b.mean_time) {
      return *a.mean_time < *b.mean_time;
    }
    return false;
  };
  std::size_t best = 0;
  std::size_t worst = 0;
  for (std::size_t i = 1; i < reports.size(); ++i) {
    if (better(reports[i], reports[best])) {
      best = i;
    }
    if (better(reports[worst], reports[i])) {
      worst = i;
    }
  }
  return {best, worst};
}

} // namespace conjsynth
