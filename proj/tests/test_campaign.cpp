#include "conjsynth/campaign.hpp"
#include "conjsynth/error.hpp"
#include "conjsynth/scenarios.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

using namespace conjsynth;

namespace {

ObjectiveReport summary(std::size_t objective, std::size_t sr, std::optional<double> time) {
  ObjectiveReport r;
  r.objective = objective;
  r.success_count = sr;
  r.mean_time = time;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    out.push_back(line);
  }
  return out;
}

Campaign small_campaign(const std::string& scenario, Algorithm algo) {
  Campaign c;
  c.scenario = builtin_scenario(scenario);
  c.algorithm = algo;
  return c;
}

} // namespace

TEST(Campaign, AlgorithmNames) {
  EXPECT_EQ(algorithm_from_string("mcr-all"), Algorithm::McrAllObjectives);
  EXPECT_EQ(to_string(Algorithm::Cmaes), "cmaes");
  EXPECT_THROW(algorithm_from_string("ga"), config_error);
  EXPECT_EQ(default_seeds().size(), 20u);
  EXPECT_EQ(default_seeds().front(), 1u);
  EXPECT_EQ(default_seeds().back(), 20u);
}

TEST(Campaign, BestAndWorstObjectiveSelection) {
  using V = std::vector<ObjectiveReport>;
  EXPECT_EQ(best_worst_objective(V{summary(1, 14, 2.0), summary(2, 10, 1.0), summary(3, 6, 0.5)}),
            (std::pair<std::size_t, std::size_t>{0, 2}));
  // Equal success counts fall back to mean time.
  EXPECT_EQ(best_worst_objective(V{summary(1, 5, 3.0), summary(2, 5, 1.0), summary(3, 5, 2.0)}),
            (std::pair<std::size_t, std::size_t>{1, 0}));
  // Exact ties and all-failure runs keep the earliest index.
  EXPECT_EQ(best_worst_objective(V{summary(1, 0, {}), summary(2, 0, {}), summary(3, 0, {})}),
            (std::pair<std::size_t, std::size_t>{0, 0}));
  EXPECT_EQ(best_worst_objective(V{summary(1, 3, 1.0), summary(2, 7, 4.0)}),
            (std::pair<std::size_t, std::size_t>{1, 0}));
  EXPECT_THROW(best_worst_objective(V{summary(1, 3, 1.0)}), config_error);
}

TEST(Campaign, AggregateCountsOnlySuccesses) {
  ObjectiveReport r;
  for (int i = 0; i < 4; ++i) {
    TrialRecord t;
    t.seed = static_cast<std::uint64_t>(i + 1);
    t.outcome = i % 2 == 0 ? Outcome::Satisfied : Outcome::FailureStationary;
    t.time = 1.0 + i;
    r.trials.push_back(t);
  }
  r.trials.push_back(TrialRecord{}); // aborted trial, no outcome
  r.aggregate();
  EXPECT_EQ(r.success_count, 2u);
  ASSERT_TRUE(r.mean_time);
  EXPECT_DOUBLE_EQ(*r.mean_time, (1.0 + 3.0) / 2.0);
}

TEST(Campaign, CsvHasOneRowPerSeedAndAFooter) {
  auto c = small_campaign("analytic-corner", Algorithm::Cmaes);
  const auto report = run_campaign(c);
  std::ostringstream out;
  write_report_csv(out, report);
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 22u);
  EXPECT_EQ(rows[0], "objective,seed,outcome,time,simulations,generations,best_robustness,conjuncts");
  EXPECT_EQ(rows[1].rfind("0,1,satisfied,", 0), 0u);
  EXPECT_EQ(rows[21].rfind("0,aggregate,SR=20/20,", 0), 0u);
  EXPECT_EQ(report.headline().success_count, 20u);
  EXPECT_FALSE(report.best);
}

TEST(Campaign, FailingRunsReportNoMeanTime) {
  auto c = small_campaign("analytic-contradiction", Algorithm::Mcr);
  c.seeds = {1, 2, 3};
  c.budget = 60;
  const auto report = run_campaign(c);
  std::ostringstream out;
  write_report_csv(out, report);
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[4], "1,aggregate,SR=0/3,---,,,,");
  const auto doc = report_to_json(report);
  EXPECT_TRUE(doc["runs"][0]["mean_time"].is_null());
  for (const auto& t : report.runs[0].trials) {
    EXPECT_EQ(t.outcome, Outcome::FailureBudget);
    EXPECT_LE(t.simulations, 60u);
  }
}

TEST(Campaign, AllObjectivesRunsOneReportPerConjunct) {
  auto c = small_campaign("analytic-conflict", Algorithm::McrAllObjectives);
  c.seeds = {1, 2, 3, 4};
  c.threads = 2;
  const auto report = run_campaign(c);
  ASSERT_EQ(report.runs.size(), 2u);
  EXPECT_EQ(report.runs[0].objective, 1u);
  EXPECT_EQ(report.runs[1].objective, 2u);
  ASSERT_TRUE(report.best && report.worst);
  EXPECT_EQ(*report.best, 1u);
  EXPECT_EQ(*report.worst, 0u);
  EXPECT_EQ(&report.headline(), &report.runs[1]);
  for (const auto& run : report.runs) {
    std::size_t sr = 0;
    for (const auto& t : run.trials) {
      sr += t.satisfied();
    }
    EXPECT_EQ(run.success_count, sr);
    EXPECT_EQ(run.trials.size(), 4u);
  }
}

TEST(Campaign, ReportsAreReproducibleExceptForTimes) {
  auto c = small_campaign("at1", Algorithm::Mcr);
  c.seeds = {1, 2, 3};
  c.budget = 300;
  auto a = run_campaign(c);
  c.threads = 3;
  auto b = run_campaign(c);
  for (auto* r : {&a, &b}) {
    for (auto& run : r->runs) {
      for (auto& t : run.trials) {
        t.time = 0.0;
      }
      run.aggregate();
    }
  }
  EXPECT_EQ(a, b);
}

TEST(Campaign, JsonRoundTrip) {
  auto c = small_campaign("analytic-contradiction", Algorithm::McrAllObjectives);
  c.seeds = {4, 5};
  c.budget = 30;
  auto report = run_campaign(c);
  report.runs[0].trials[0].best_robustness = -stl::infinity;
  report.runs[0].trials[1].outcome.reset();
  report.runs[0].trials[1].error = "simulated failure";
  const auto text = report_to_json(report).dump();
  EXPECT_EQ(report_from_json(nlohmann::json::parse(text)), report);
  EXPECT_THROW(report_from_json(nlohmann::json::parse(R"({"scenario": 3})")), config_error);
}

TEST(Campaign, ConfigErrors) {
  auto c = small_campaign("at1", Algorithm::Mcr);
  c.seeds.clear();
  EXPECT_THROW(run_campaign(c), config_error);
  c = small_campaign("at1", Algorithm::Mcr);
  c.objective = 9;
  EXPECT_THROW(run_campaign(c), config_error);
  c = small_campaign("analytic-corner", Algorithm::Mcr);
  c.scenario.spec = "alw_[0,1](y1 > 0)";
  c.algorithm = Algorithm::McrAllObjectives;
  EXPECT_THROW(run_campaign(c), config_error);
  EXPECT_THROW(emit_report(CampaignReport{}, "/nonexistent/dir/r.csv", "csv"), error);
  EXPECT_THROW(emit_report(CampaignReport{}, "r.txt", "xml"), config_error);
}

TEST(Scenarios, CatalogIsValid) {
  const auto all = builtin_scenarios();
  ASSERT_GE(all.size(), 7u);
  for (const auto& s : all) {
    EXPECT_NO_THROW(s.validate()) << s.name;
  }
  EXPECT_THROW(builtin_scenario("at9"), config_error);
  EXPECT_NE(at1_scenario(2250).spec.find("rpm <= 2250"), std::string::npos);
}

TEST(Scenarios, JsonConfigInheritsAndOverrides) {
  const auto s = scenario_from_json(nlohmann::json::parse(R"j({
    "base": "at1",
    "name": "at1-heavy",
    "parameters": {"mass": 2000},
    "spec": "ev_[0,30](speed >= 50) /\\ alw_[0,30](rpm <= 3000)",
    "defaults": {"objective": 2, "budget": 900}
  })j"));
  EXPECT_EQ(s.name, "at1-heavy");
  EXPECT_EQ(s.defaults.objective, 2u);
  EXPECT_EQ(s.defaults.budget, 900u);
  EXPECT_EQ(dynamic_cast<const AtSurrogate&>(*s.model).parameters().mass, 2000.0);
  EXPECT_EQ(s.input.variables.size(), 2u);

  const auto custom = scenario_from_json(nlohmann::json::parse(R"j({
    "model": "analytic-identity",
    "spec": "alw_[0,1](y > 0.25) /\\ alw_[0,1](u < 0.75)",
    "defaults": {"budget": 100, "timeout": 5}
  })j"));
  EXPECT_EQ(custom.model_name, "analytic-identity");
  EXPECT_EQ(custom.defaults.timeout, 5.0);

  for (const char* bad : {
           R"j([1, 2])j",
           R"j({"spec": "alw_[0,1](y > 0)"})j",
           R"j({"model": "rocket", "spec": "alw_[0,1](y > 0)"})j",
           R"j({"base": "at1", "parameters": {"wheels": 3}})j",
           R"j({"base": "at1", "spec": "alw_[0,30](altitude > 0)"})j",
           R"j({"base": "at1", "spec": "alw_[0,30](rpm >"})j",
           R"j({"base": "at1", "defaults": {"objective": 4}})j",
           R"j({"model": "analytic-identity", "parameters": {"mass": 1}, "spec": "alw_[0,1](y > 0)"})j",
       }) {
    EXPECT_THROW(scenario_from_json(nlohmann::json::parse(bad)), config_error) << bad;
  }
}
