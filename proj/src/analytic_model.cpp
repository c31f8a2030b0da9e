#include "conjsynth/error.hpp"
#include "conjsynth/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace conjsynth {

AnalyticModel::AnalyticModel(std::string name, InputSpec input, std::vector<std::string> outputs,
                             PointFn fn)
    : name_(std::move(name)), input_(std::move(input)), outputs_(std::move(outputs)),
      fn_(std::move(fn)) {
  input_.validate();
  if (outputs_.empty() || !fn_) {
    throw config_error("analytic model " + name_ + " needs outputs and a function");
  }
}

Trace AnalyticModel::simulate(const Trace& input) const {
  std::vector<std::span<const double>> columns;
  for (const auto& var : input_.variables) {
    const auto idx = input.find(var.name);
    if (!idx) {
      throw simulation_error(name_ + " input is missing variable '" + var.name + "'");
    }
    columns.push_back(input.column(*idx));
  }
  std::vector<std::vector<double>> out(outputs_.size(), std::vector<double>(input.size()));
  std::vector<double> in_point(columns.size());
  std::vector<double> out_point(outputs_.size());
  for (std::size_t k = 0; k < input.size(); ++k) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const auto& var = input_.variables[i];
      in_point[i] = std::clamp(columns[i][k], var.lower, var.upper);
    }
    fn_(in_point, out_point);
    for (std::size_t j = 0; j < out_point.size(); ++j) {
      if (!std::isfinite(out_point[j])) {
        throw simulation_error(name_ + " produced a non-finite '" + outputs_[j] + "'");
      }
      out[j][k] = out_point[j];
    }
  }
  return Trace(outputs_, input.step(), std::move(out));
}

std::shared_ptr<const SystemModel> make_corner_model() {
  InputSpec spec{{{"u", 0.0, 1.0, 1}}, 1.0, 0.5};
  return std::make_shared<AnalyticModel>(
      "analytic-corner", spec, std::vector<std::string>{"y1", "y2"},
      [](std::span<const double> in, std::span<double> out) {
        out[0] = in[0];
        out[1] = 1.0 - in[0];
      });
}

std::shared_ptr<const SystemModel> make_identity_model() {
  InputSpec spec{{{"u", 0.0, 1.0, 1}}, 1.0, 0.5};
  return std::make_shared<AnalyticModel>(
      "analytic-identity", spec, std::vector<std::string>{"y"},
      [](std::span<const double> in, std::span<double> out) { out[0] = in[0]; });
}

std::shared_ptr<const SystemModel> make_conflict_model() {
  // Six constant inputs in [0,1] with mean m.
  //   level = m                      (units)
  //   load  = 1000 * |m - 0.725|     (thousands)
  // "level > 0.9" and "load > 175" hold together exactly when m > 0.9. The
  // load conjunct also holds for m < 0.55, so climbing m from the box center
  // has to cross the band 0.55 <= m <= 0.9 where load is violated by up to 175.
  InputSpec spec;
  for (int i = 1; i <= 6; ++i) {
    spec.variables.push_back({"u" + std::to_string(i), 0.0, 1.0, 1});
  }
  spec.horizon = 1.0;
  spec.sample_step = 0.5;
  return std::make_shared<AnalyticModel>(
      "analytic-conflict", spec, std::vector<std::string>{"level", "load"},
      [](std::span<const double> in, std::span<double> out) {
        const double m = std::accumulate(in.begin(), in.end(), 0.0) / static_cast<double>(in.size());
        out[0] = m;
        out[1] = 1000.0 * std::abs(m - 0.725);
      });
}

} // namespace conjsynth
