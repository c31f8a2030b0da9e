#pragma once

#include "conjsynth/trace.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace conjsynth {

/// One piecewise-constant input channel.
struct InputVariable {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  std::size_t control_points = 1;
  friend bool operator==(const InputVariable&, const InputVariable&) = default;
};

/// Search-space description: which inputs exist, their ranges, how many
/// control points each carries, and the time grid the signals are sampled on.
struct InputSpec {
  std::vector<InputVariable> variables;
  double horizon = 1.0;
  double sample_step = 0.1;

  /// Throws config_error on empty alphabets, lower >= upper, zero control
  /// points, nonpositive horizon/step, or a horizon that is not a multiple of
  /// the step (within 1e-9).
  void validate() const;

  /// Number of grid samples: horizon / sample_step + 1.
  std::size_t sample_count() const;

  friend bool operator==(const InputSpec&, const InputSpec&) = default;
};

using DecisionVector = std::vector<double>;

/// Search-space dimension: the sum of per-variable control points.
std::size_t dimension(const InputSpec& spec);

/// Per-coordinate box bounds in decision-vector layout.
std::vector<double> lower_bounds(const InputSpec& spec);
std::vector<double> upper_bounds(const InputSpec& spec);

/// Piecewise-constant input trace for decision vector `x`.
///
/// Layout is variable-major: the control points of variable 1, then those of
/// variable 2, and so on. Variable i's horizon is cut into m_i equal
/// segments; segment k is right-open except the last, which includes the
/// horizon endpoint. Throws config_error on a length mismatch or a coordinate
/// outside its variable's bounds.
Trace gen_signal(const InputSpec& spec, std::span<const double> x);

} // namespace conjsynth
