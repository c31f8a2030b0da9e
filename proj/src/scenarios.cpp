#include "conjsynth/scenarios.hpp"

#include "conjsynth/error.hpp"
#include "conjsynth/stl.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace conjsynth {
namespace {

using nlohmann::json;

// At this rpm bound plain CMA-ES fails on every seed 1..20 while MCR with the
// rpm objective still succeeds on some.
constexpr double kTightRpmBound = 2000.0;

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Scenario at_base(std::string name, std::string description, std::string spec,
                 const AtParameters& params) {
  Scenario s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.model_name = "at-surrogate";
  s.model = std::make_shared<AtSurrogate>(params);
  s.input = s.model->default_input();
  s.spec = std::move(spec);
  return s;
}

Scenario analytic(std::string name, std::string description, std::string model_name,
                  std::shared_ptr<const SystemModel> model, std::string spec,
                  ScenarioDefaults defaults) {
  Scenario s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.model_name = std::move(model_name);
  s.model = std::move(model);
  s.input = s.model->default_input();
  s.spec = std::move(spec);
  s.defaults = defaults;
  return s;
}

std::shared_ptr<const SystemModel> model_by_name(const std::string& name,
                                                 const AtParameters& params) {
  if (name == "at-surrogate") {
    return std::make_shared<AtSurrogate>(params);
  }
  if (name == "analytic-corner") {
    return make_corner_model();
  }
  if (name == "analytic-identity") {
    return make_identity_model();
  }
  if (name == "analytic-conflict") {
    return make_conflict_model();
  }
  throw config_error("unknown model '" + name + "'");
}

template <typename T>
void read_field(const json& obj, const char* key, T& out) {
  if (auto it = obj.find(key); it != obj.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw config_error(std::string("config field '") + key + "': " + e.what());
    }
  }
}

AtParameters at_parameters_from_json(const json& obj, AtParameters p) {
  if (!obj.is_object()) {
    throw config_error("'parameters' must be an object");
  }
  static const std::vector<std::string> known{
      "mass", "engine_gain", "drag", "brake_gain", "idle_rpm", "max_rpm", "rpm_per_mph",
      "gear_factor", "up_low", "up_high", "down", "internal_step"};
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw config_error("unknown AT parameter '" + key + "'");
    }
  }
  read_field(obj, "mass", p.mass);
  read_field(obj, "engine_gain", p.engine_gain);
  read_field(obj, "drag", p.drag);
  read_field(obj, "brake_gain", p.brake_gain);
  read_field(obj, "idle_rpm", p.idle_rpm);
  read_field(obj, "max_rpm", p.max_rpm);
  read_field(obj, "rpm_per_mph", p.rpm_per_mph);
  read_field(obj, "gear_factor", p.gear_factor);
  read_field(obj, "up_low", p.up_low);
  read_field(obj, "up_high", p.up_high);
  read_field(obj, "down", p.down);
  read_field(obj, "internal_step", p.internal_step);
  return p;
}

} // namespace

void Scenario::validate() const {
  if (!model) {
    throw config_error("scenario '" + name + "' has no model");
  }
  input.validate();
  const auto& declared = model->default_input().variables;
  if (input.variables.size() != declared.size()) {
    throw config_error("scenario '" + name + "' must declare exactly the model inputs");
  }
  for (const auto& var : declared) {
    const bool present = std::any_of(input.variables.begin(), input.variables.end(),
                                     [&](const InputVariable& v) { return v.name == var.name; });
    if (!present) {
      throw config_error("scenario '" + name + "' is missing model input '" + var.name + "'");
    }
  }
  stl::Formula formula;
  try {
    formula = stl::parse_formula(spec);
  } catch (const parse_error& e) {
    throw config_error("scenario '" + name + "' spec: " + e.what());
  }
  const auto& outs = model->outputs();
  for (const auto& var : stl::variables(formula)) {
    const bool is_output = std::find(outs.begin(), outs.end(), var) != outs.end();
    const bool is_input = std::any_of(input.variables.begin(), input.variables.end(),
                                      [&](const InputVariable& v) { return v.name == var; });
    if (!is_output && !is_input) {
      throw config_error("scenario '" + name + "' spec mentions unknown signal '" + var + "'");
    }
  }
  if (defaults.objective < 1 || defaults.objective > stl::top_level_conjuncts(formula).size()) {
    throw config_error("scenario '" + name + "' default objective is out of range");
  }
  if (defaults.budget == 0 || !(defaults.timeout > 0.0)) {
    throw config_error("scenario '" + name + "' needs a positive budget and timeout");
  }
}

Scenario at1_scenario(double rpm_bound, const AtParameters& params) {
  const auto p = format_number(rpm_bound);
  return at_base("at1", "reach gear 4 while keeping rpm <= " + p + " and speed <= 60",
                 "alw_[0,30](rpm <= " + p + ") /\\ alw_[0,30](speed <= 60) /\\ "
                 "ev_[0,30](gear >= 3)",
                 params);
}

std::vector<Scenario> builtin_scenarios() {
  std::vector<Scenario> out;
  out.push_back(at1_scenario(2400.0));
  {
    auto tight = at1_scenario(kTightRpmBound);
    tight.name = "at1-tight";
    out.push_back(std::move(tight));
  }
  out.push_back(at_base("at2", "reach 75 mph before t = 29, then be at most 55 mph within [29,30]",
                        "ev_[0,29](speed >= 75) /\\ ev_[29,30](speed <= 55)", {}));
  out.push_back(at_base("at3", "reach 40 mph within 10 s while keeping rpm <= 3500",
                        "ev_[0,10](speed >= 40) /\\ alw_[0,30](rpm <= 3500)", {}));
  {
    auto& s = out.back();
    s.defaults.objective = 2;
  }
  out.push_back(analytic("analytic-corner", "y1 = u, y2 = 1 - u; feasible for every 0 < u < 1",
                         "analytic-corner", make_corner_model(),
                         "alw_[0,1](y1 > 0) /\\ alw_[0,1](y2 > 0)", {1, 200, 60.0, {}}));
  out.push_back(analytic("analytic-contradiction", "y = u; no input satisfies both conjuncts",
                         "analytic-identity", make_identity_model(),
                         "alw_[0,1](y > 1) /\\ alw_[0,1](y < 0)", {1, 3000, 60.0, {}}));
  out.push_back(analytic("analytic-conflict",
                         "mean input m; level > 0.9 and load > 175 hold together iff m > 0.9",
                         "analytic-conflict", make_conflict_model(),
                         "alw_[0,1](level > 0.9) /\\ alw_[0,1](load > 175)", {2, 1500, 60.0, {}}));
  return out;
}

Scenario builtin_scenario(const std::string& name) {
  for (auto& s : builtin_scenarios()) {
    if (s.name == name) {
      return s;
    }
  }
  throw config_error("unknown scenario '" + name + "'");
}

Scenario scenario_from_json(const json& config) {
  if (!config.is_object()) {
    throw config_error("scenario config must be a JSON object");
  }
  Scenario s;
  AtParameters at_params;
  if (auto it = config.find("base"); it != config.end()) {
    s = builtin_scenario(it->get<std::string>());
    if (const auto* at = dynamic_cast<const AtSurrogate*>(s.model.get())) {
      at_params = at->parameters();
    }
  } else {
    s.name = "custom";
  }
  read_field(config, "name", s.name);
  read_field(config, "description", s.description);

  const bool model_changed = config.contains("model") || config.contains("parameters");
  read_field(config, "model", s.model_name);
  if (s.model_name.empty()) {
    throw config_error("scenario config needs a 'model' or a 'base'");
  }
  if (auto it = config.find("parameters"); it != config.end()) {
    if (s.model_name != "at-surrogate") {
      throw config_error("model '" + s.model_name + "' takes no parameters");
    }
    at_params = at_parameters_from_json(*it, at_params);
  }
  if (model_changed) {
    s.model = model_by_name(s.model_name, at_params);
    if (!config.contains("inputs") && !config.contains("base")) {
      s.input = s.model->default_input();
    }
  }

  if (auto it = config.find("inputs"); it != config.end()) {
    if (!it->is_array()) {
      throw config_error("'inputs' must be an array");
    }
    s.input.variables.clear();
    for (const auto& v : *it) {
      InputVariable var;
      read_field(v, "name", var.name);
      read_field(v, "min", var.lower);
      read_field(v, "max", var.upper);
      read_field(v, "control_points", var.control_points);
      s.input.variables.push_back(var);
    }
  }
  read_field(config, "horizon", s.input.horizon);
  read_field(config, "sample_step", s.input.sample_step);
  read_field(config, "spec", s.spec);
  if (auto it = config.find("defaults"); it != config.end()) {
    read_field(*it, "objective", s.defaults.objective);
    read_field(*it, "budget", s.defaults.budget);
    read_field(*it, "timeout", s.defaults.timeout);
    if (auto l = it->find("lambda"); l != it->end() && !l->is_null()) {
      s.defaults.lambda = l->get<std::size_t>();
    }
  }
  s.validate();
  return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("cannot open scenario file " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error("scenario file " + path.string() + ": " + e.what());
  }
  return scenario_from_json(doc);
}

Scenario resolve_scenario(const std::string& name_or_path) {
  const auto catalog = builtin_scenarios();
  for (const auto& s : catalog) {
    if (s.name == name_or_path) {
      return s;
    }
  }
  if (std::filesystem::exists(name_or_path)) {
    return load_scenario_file(name_or_path);
  }
  throw config_error("'" + name_or_path + "' is neither a builtin scenario nor a file");
}

} // namespace conjsynth
