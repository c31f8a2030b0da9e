#include "conjsynth/campaign.hpp"
#include "conjsynth/error.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace conjsynth {
namespace {

using nlohmann::json;

// JSON has no infinities; they travel as the strings "inf" and "-inf".
json number_to_json(double v) {
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  return v;
}

double number_from_json(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
      return -std::numeric_limits<double>::infinity();
    }
    throw config_error("expected a number, got \"" + s + "\"");
  }
  return v.get<double>();
}

std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

json trial_to_json(const TrialRecord& t) {
  json j;
  j["seed"] = t.seed;
  j["outcome"] = t.outcome ? json(std::string(to_string(*t.outcome))) : json(nullptr);
  j["error"] = t.error;
  j["time"] = t.time;
  j["simulations"] = t.simulations;
  j["generations"] = t.generations;
  j["best_robustness"] = number_to_json(t.best_robustness);
  j["best_conjuncts"] = json::array();
  for (double v : t.best_conjuncts) {
    j["best_conjuncts"].push_back(number_to_json(v));
  }
  j["best_input"] = t.best_input;
  return j;
}

TrialRecord trial_from_json(const json& j) {
  TrialRecord t;
  t.seed = j.at("seed").get<std::uint64_t>();
  if (!j.at("outcome").is_null()) {
    t.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  }
  t.error = j.at("error").get<std::string>();
  t.time = j.at("time").get<double>();
  t.simulations = j.at("simulations").get<std::size_t>();
  t.generations = j.at("generations").get<std::size_t>();
  t.best_robustness = number_from_json(j.at("best_robustness"));
  for (const auto& v : j.at("best_conjuncts")) {
    t.best_conjuncts.push_back(number_from_json(v));
  }
  t.best_input = j.at("best_input").get<DecisionVector>();
  return t;
}

} // namespace

void write_report_csv(std::ostream& out, const CampaignReport& report) {
  out << "objective,seed,outcome,time,simulations,generations,best_robustness,conjuncts\n";
  for (const auto& run : report.runs) {
    for (const auto& t : run.trials) {
      out << run.objective << ',' << t.seed << ','
          << (t.outcome ? std::string(to_string(*t.outcome)) : "error") << ','
          << csv_number(t.time) << ',' << t.simulations << ',' << t.generations << ','
          << csv_number(t.best_robustness) << ',';
      for (std::size_t j = 0; j < t.best_conjuncts.size(); ++j) {
        out << (j ? ";" : "") << csv_number(t.best_conjuncts[j]);
      }
      out << '\n';
    }
    out << run.objective << ",aggregate,SR=" << run.success_count << '/' << run.trials.size()
        << ',' << (run.mean_time ? csv_number(*run.mean_time) : "---") << ",,,,\n";
  }
}

json report_to_json(const CampaignReport& report) {
  json doc;
  doc["scenario"] = report.scenario;
  doc["spec"] = report.spec;
  doc["algorithm"] = std::string(to_string(report.algorithm));
  doc["budget"] = report.budget;
  doc["timeout"] = report.timeout;
  doc["runs"] = json::array();
  for (const auto& run : report.runs) {
    json r;
    r["objective"] = run.objective;
    r["success_count"] = run.success_count;
    r["trial_count"] = run.trials.size();
    r["mean_time"] = run.mean_time ? json(*run.mean_time) : json(nullptr);
    r["trials"] = json::array();
    for (const auto& t : run.trials) {
      r["trials"].push_back(trial_to_json(t));
    }
    doc["runs"].push_back(std::move(r));
  }
  doc["best"] = report.best ? json(*report.best) : json(nullptr);
  doc["worst"] = report.worst ? json(*report.worst) : json(nullptr);
  return doc;
}

CampaignReport report_from_json(const json& doc) {
  try {
    CampaignReport report;
    report.scenario = doc.at("scenario").get<std::string>();
    report.spec = doc.at("spec").get<std::string>();
    report.algorithm = algorithm_from_string(doc.at("algorithm").get<std::string>());
    report.budget = doc.at("budget").get<std::size_t>();
    report.timeout = doc.at("timeout").get<double>();
    for (const auto& r : doc.at("runs")) {
      ObjectiveReport run;
      run.objective = r.at("objective").get<std::size_t>();
      run.success_count = r.at("success_count").get<std::size_t>();
      if (!r.at("mean_time").is_null()) {
        run.mean_time = r.at("mean_time").get<double>();
      }
      for (const auto& t : r.at("trials")) {
        run.trials.push_back(trial_from_json(t));
      }
      report.runs.push_back(std::move(run));
    }
    if (!doc.at("best").is_null()) {
      report.best = doc.at("best").get<std::size_t>();
    }
    if (!doc.at("worst").is_null()) {
      report.worst = doc.at("worst").get<std::size_t>();
    }
    return report;
  } catch (const json::exception& e) {
    throw config_error(std::string("malformed campaign report: ") + e.what());
  }
}

void emit_report(const CampaignReport& report, const std::filesystem::path& path,
                 std::string_view format) {
  if (format != "csv" && format != "json") {
    throw config_error("unknown report format '" + std::string(format) + "'");
  }
  std::ofstream out(path);
  if (!out) {
    throw error("cannot open " + path.string() + " for writing");
  }
  if (format == "csv") {
    write_report_csv(out, report);
  } else {
    out << report_to_json(report).dump(2) << '\n';
  }
  if (!out) {
    throw error("failed writing " + path.string());
  }
}

} // namespace conjsynth
