// synth: command-line front end for conjunctive STL synthesis campaigns.

#include "conjsynth/campaign.hpp"
#include "conjsynth/error.hpp"
#include "conjsynth/scenarios.hpp"
#include "conjsynth/stl.hpp"
#include "conjsynth/trace_io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <iostream>

namespace {

constexpr int kExitConfig = 2;

// "a..b" or a single seed.
std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
  auto parse = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw conjsynth::config_error("bad seed range '" + text + "'");
    }
    return v;
  };
  const auto dots = text.find("..");
  const std::string_view view(text);
  const auto lo = parse(dots == std::string::npos ? view : view.substr(0, dots));
  const auto hi = dots == std::string::npos ? lo : parse(view.substr(dots + 2));
  if (hi < lo) {
    throw conjsynth::config_error("empty seed range '" + text + "'");
  }
  std::vector<std::uint64_t> seeds;
  for (auto s = lo; s <= hi; ++s) {
    seeds.push_back(s);
  }
  return seeds;
}

void print_summary(const conjsynth::CampaignReport& report) {
  for (std::size_t r = 0; r < report.runs.size(); ++r) {
    const auto& run = report.runs[r];
    std::cout << report.scenario << ' ' << to_string(report.algorithm);
    if (run.objective > 0) {
      std::cout << " objective=" << run.objective;
    }
    std::cout << " SR=" << run.success_count << '/' << run.trials.size() << " time=";
    if (run.mean_time) {
      std::cout << *run.mean_time;
    } else {
      std::cout << "---";
    }
    if (report.best == r) {
      std::cout << " (best)";
    }
    if (report.worst == r) {
      std::cout << " (worst)";
    }
    std::cout << '\n';
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conjunctive STL synthesis by CMA-ES with rank-based constraint handling"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a multi-seed synthesis campaign");
  std::string scenario_ref;
  std::string algo = "mcr";
  std::optional<std::size_t> objective;
  std::string seeds = "1..20";
  std::optional<std::size_t> budget;
  std::optional<double> timeout;
  std::optional<std::size_t> lambda;
  std::size_t threads = 1;
  std::string out_path;
  std::string format = "csv";
  run->add_option("--scenario", scenario_ref, "builtin scenario name or JSON config path")->required();
  run->add_option("--algo", algo, "cmaes, mcr or mcr-all")
      ->check(CLI::IsMember({"cmaes", "mcr", "mcr-all"}));
  run->add_option("--objective", objective, "1-based objective conjunct for mcr");
  run->add_option("--seeds", seeds, "seed range a..b");
  run->add_option("--budget", budget, "simulations per trial");
  run->add_option("--timeout", timeout, "wall seconds per trial");
  run->add_option("--lambda", lambda, "CMA-ES population size");
  run->add_option("--threads", threads, "trials run concurrently");
  run->add_option("--out", out_path, "report path")->required();
  run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  app.add_subcommand("list-scenarios", "print the builtin scenario catalog");

  auto* eval = app.add_subcommand("eval", "evaluate an STL spec on a trace CSV");
  std::string trace_path;
  std::string spec_text;
  eval->add_option("--trace", trace_path, "CSV with a leading time column")->required();
  eval->add_option("--spec", spec_text, "STL formula")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (app.got_subcommand("list-scenarios")) {
      for (const auto& s : conjsynth::builtin_scenarios()) {
        std::cout << s.name << "\t" << s.model_name << "\t" << s.spec << "\n\t" << s.description
                  << '\n';
      }
      return 0;
    }
    if (app.got_subcommand("eval")) {
      const auto trace = conjsynth::read_trace_csv_file(trace_path);
      const auto formula = conjsynth::stl::parse_formula(spec_text);
      const auto conjuncts = conjsynth::stl::top_level_conjuncts(formula);
      for (std::size_t j = 0; j < conjuncts.size(); ++j) {
        std::cout << "conjunct " << j + 1 << ": " << to_string(conjuncts[j])
                  << "  robustness " << conjsynth::stl::robustness(trace, conjuncts[j]) << '\n';
      }
      const double rb = conjsynth::stl::robustness(trace, formula);
      const bool sat = conjsynth::stl::boolean_sat(trace, formula);
      std::cout << "robustness " << rb << "\nboolean " << (sat ? "true" : "false") << '\n';
      return rb > 0.0 ? 0 : 1;
    }

    conjsynth::Campaign campaign;
    campaign.scenario = conjsynth::resolve_scenario(scenario_ref);
    campaign.algorithm = conjsynth::algorithm_from_string(algo);
    campaign.seeds = parse_seed_range(seeds);
    campaign.objective = objective;
    campaign.budget = budget;
    campaign.timeout = timeout;
    campaign.lambda = lambda;
    campaign.threads = threads;
    const auto report = conjsynth::run_campaign(campaign);
    conjsynth::emit_report(report, out_path, format);
    print_summary(report);
    return report.headline().success_count > 0 ? 0 : 1;
  } catch (const conjsynth::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const conjsynth::parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const conjsynth::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
