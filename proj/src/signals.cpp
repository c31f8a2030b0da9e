#include "conjsynth/signals.hpp"

#include "conjsynth/error.hpp"

#include <cmath>
#include <set>

namespace conjsynth {

void InputSpec::validate() const {
  if (variables.empty()) {
    throw config_error("input spec declares no variables");
  }
  std::set<std::string> names;
  for (const auto& v : variables) {
    if (v.name.empty()) {
      throw config_error("input variable with an empty name");
    }
    if (!names.insert(v.name).second) {
      throw config_error("duplicate input variable '" + v.name + "'");
    }
    if (!(v.lower < v.upper) || !std::isfinite(v.lower) || !std::isfinite(v.upper)) {
      throw config_error("input '" + v.name + "' needs finite bounds with lower < upper");
    }
    if (v.control_points == 0) {
      throw config_error("input '" + v.name + "' needs at least one control point");
    }
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw config_error("horizon must be positive");
  }
  if (!(sample_step > 0.0) || sample_step > horizon) {
    throw config_error("sample step must be positive and no larger than the horizon");
  }
  const double ratio = horizon / sample_step;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    throw config_error("horizon must be a multiple of the sample step");
  }
}

std::size_t InputSpec::sample_count() const {
  return static_cast<std::size_t>(std::llround(horizon / sample_step)) + 1;
}

std::size_t dimension(const InputSpec& spec) {
  std::size_t n = 0;
  for (const auto& v : spec.variables) {
    n += v.control_points;
  }
  return n;
}

std::vector<double> lower_bounds(const InputSpec& spec) {
  std::vector<double> out;
  for (const auto& v : spec.variables) {
    out.insert(out.end(), v.control_points, v.lower);
  }
  return out;
}

std::vector<double> upper_bounds(const InputSpec& spec) {
  std::vector<double> out;
  for (const auto& v : spec.variables) {
    out.insert(out.end(), v.control_points, v.upper);
  }
  return out;
}

Trace gen_signal(const InputSpec& spec, std::span<const double> x) {
  if (x.size() != dimension(spec)) {
    throw config_error("decision vector has " + std::to_string(x.size()) +
                       " coordinates, expected " + std::to_string(dimension(spec)));
  }
  const std::size_t n = spec.sample_count();
  std::vector<std::string> names;
  std::vector<std::vector<double>> cols;
  std::size_t offset = 0;
  for (const auto& v : spec.variables) {
    const auto m = v.control_points;
    for (std::size_t k = 0; k < m; ++k) {
      double c = x[offset + k];
      if (!(c >= v.lower && c <= v.upper)) {
        throw config_error("coordinate " + std::to_string(offset + k) + " of input '" +
                           v.name + "' is outside [" + std::to_string(v.lower) + ", " +
                           std::to_string(v.upper) + "]");
      }
    }
    std::vector<double> col(n);
    for (std::size_t s = 0; s < n; ++s) {
      const double t = static_cast<double>(s) * spec.sample_step;
      auto seg = static_cast<std::size_t>(
          std::floor(t * static_cast<double>(m) / spec.horizon + 1e-9));
      col[s] = x[offset + std::min(seg, m - 1)];
    }
    names.push_back(v.name);
    cols.push_back(std::move(col));
    offset += m;
  }
  return Trace(std::move(names), spec.sample_step, std::move(cols));
}

} // namespace conjsynth
