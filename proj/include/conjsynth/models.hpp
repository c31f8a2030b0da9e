#pragma once

#include "conjsynth/signals.hpp"
#include "conjsynth/trace.hpp"

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace conjsynth {

/// Black-box system under test: maps an input trace to an output trace on the
/// same time grid. Implementations must be deterministic and safe to call
/// concurrently.
class SystemModel {
public:
  virtual ~SystemModel() = default;

  virtual std::string name() const = 0;
  /// Input alphabet, bounds and a default parameterization.
  virtual const InputSpec& default_input() const = 0;
  virtual const std::vector<std::string>& outputs() const = 0;

  /// Throws simulation_error when the input lacks a declared input variable
  /// or the dynamics produce non-finite values. Inputs are clamped to their
  /// declared bounds before use.
  virtual Trace simulate(const Trace& input) const = 0;
};

// ---------------------------------------------------------------------------
// Automatic-transmission surrogate

/// Longitudinal vehicle dynamics with a four-gear shift automaton. Speeds are
/// in mph, forces are normalized so that force / mass is in mph/s.
struct AtParameters {
  double mass = 1500.0;
  double engine_gain = 3750.0;   ///< drive force at full throttle, gear factor 1
  double drag = 0.26;            ///< force per mph^2
  double brake_gain = 69.0;      ///< force per unit brake
  double idle_rpm = 800.0;
  double max_rpm = 6000.0;
  std::array<double, 4> rpm_per_mph{60.0, 36.0, 26.0, 20.0};
  std::array<double, 4> gear_factor{3.0, 2.0, 1.4, 1.0};
  /// Up-shift out of gears 1..3 when rpm exceeds
  /// up_low + (up_high - up_low) * throttle / 100. The defaults put the
  /// full-throttle shift points at 35, 45 and 55 mph.
  std::array<double, 3> up_low{1400.0, 1520.0, 1580.0};
  std::array<double, 3> up_high{2900.0, 2420.0, 2230.0};
  /// Down-shift out of gears 2..4 when rpm falls below this.
  std::array<double, 3> down{1050.0, 1100.0, 1100.0};
  double internal_step = 0.01;

  /// Throws config_error when a shift schedule could chatter (an up-shift
  /// landing below the next gear's down threshold, or a down-shift landing
  /// above the lower gear's up threshold) or a value is out of range.
  void validate() const;
};

struct AtState {
  double speed = 0.0;
  double rpm = 0.0;
  int gear = 1;
  friend bool operator==(const AtState&, const AtState&) = default;
};

/// One explicit Euler step. Inputs are clamped to [0,100] and [0,325].
/// Speed is floored at 0, rpm follows the gear ratio and is clamped to
/// [0, max_rpm], and at most one gear change happens per step.
AtState at_surrogate_step(const AtParameters& params, const AtState& state, double throttle,
                          double brake, double dt);

/// Up-shift threshold out of `gear` (1..3) at the given throttle.
double at_up_threshold(const AtParameters& params, int gear, double throttle);

class AtSurrogate final : public SystemModel {
public:
  explicit AtSurrogate(AtParameters params = {});

  std::string name() const override { return "at-surrogate"; }
  const InputSpec& default_input() const override { return input_; }
  const std::vector<std::string>& outputs() const override { return outputs_; }
  Trace simulate(const Trace& input) const override;

  const AtParameters& parameters() const noexcept { return params_; }

  /// Simulate with an explicit internal step (the reference integrations in
  /// the tests use a much finer one).
  Trace simulate_with_step(const Trace& input, double internal_step) const;

private:
  AtParameters params_;
  InputSpec input_;
  std::vector<std::string> outputs_{"speed", "rpm", "gear"};
};

// ---------------------------------------------------------------------------
// Closed-form models

/// Outputs are a pointwise closed-form function of the input values at the
/// same sample.
class AnalyticModel final : public SystemModel {
public:
  /// `fn(inputs, outputs)`: inputs in default_input variable order, outputs
  /// in `outputs` order.
  using PointFn = std::function<void(std::span<const double>, std::span<double>)>;

  AnalyticModel(std::string name, InputSpec input, std::vector<std::string> outputs, PointFn fn);

  std::string name() const override { return name_; }
  const InputSpec& default_input() const override { return input_; }
  const std::vector<std::string>& outputs() const override { return outputs_; }
  Trace simulate(const Trace& input) const override;

private:
  std::string name_;
  InputSpec input_;
  std::vector<std::string> outputs_;
  PointFn fn_;
};

/// (y1, y2) = (u, 1 - u) for u in [0, 1].
std::shared_ptr<const SystemModel> make_corner_model();

/// y = u for u in [0, 1].
std::shared_ptr<const SystemModel> make_identity_model();

/// Two conjuncts on scales three orders of magnitude apart; see scenarios.cpp
/// for the feasible region.
std::shared_ptr<const SystemModel> make_conflict_model();

} // namespace conjsynth
