#include "conjsynth/error.hpp"
#include "conjsynth/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace conjsynth {
namespace {

constexpr double kMaxThrottle = 100.0;
constexpr double kMaxBrake = 325.0;

double engine_rpm(const AtParameters& p, int gear, double speed) {
  return std::clamp(p.rpm_per_mph[static_cast<std::size_t>(gear - 1)] * speed + p.idle_rpm, 0.0,
                    p.max_rpm);
}

// rpm right after switching from `from` to `to` at the rpm `rpm`.
double rpm_after_shift(const AtParameters& p, int from, int to, double rpm) {
  const double speed = (rpm - p.idle_rpm) / p.rpm_per_mph[static_cast<std::size_t>(from - 1)];
  return p.rpm_per_mph[static_cast<std::size_t>(to - 1)] * speed + p.idle_rpm;
}

} // namespace

void AtParameters::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw config_error(std::string("AT parameter ") + what + " must be positive");
    }
  };
  positive(mass, "mass");
  positive(engine_gain, "engine_gain");
  positive(internal_step, "internal_step");
  positive(max_rpm, "max_rpm");
  if (drag < 0.0 || brake_gain < 0.0 || idle_rpm < 0.0 || idle_rpm >= max_rpm) {
    throw config_error("AT parameters drag, brake_gain and idle_rpm must be nonnegative, idle below max_rpm");
  }
  for (std::size_t g = 0; g < 4; ++g) {
    positive(rpm_per_mph[g], "rpm_per_mph");
    positive(gear_factor[g], "gear_factor");
    if (g > 0 && !(rpm_per_mph[g] < rpm_per_mph[g - 1])) {
      throw config_error("AT gear ratios must strictly decrease with the gear");
    }
  }
  for (std::size_t g = 0; g < 3; ++g) {
    const int lower_gear = static_cast<int>(g) + 1;
    if (!(up_low[g] <= up_high[g]) || !(up_high[g] < max_rpm)) {
      throw config_error("AT up-shift thresholds need up_low <= up_high < max_rpm");
    }
    if (!(down[g] > idle_rpm) || !(up_low[g] > down[g])) {
      throw config_error("AT shift schedule needs idle < down < up_low for gear " +
                         std::to_string(lower_gear + 1));
    }
    if (!(rpm_after_shift(*this, lower_gear, lower_gear + 1, up_low[g]) > down[g])) {
      throw config_error("AT up-shift out of gear " + std::to_string(lower_gear) +
                         " lands below the next down-shift threshold");
    }
    if (!(rpm_after_shift(*this, lower_gear + 1, lower_gear, down[g]) < up_low[g])) {
      throw config_error("AT down-shift into gear " + std::to_string(lower_gear) +
                         " lands above its up-shift threshold");
    }
  }
}

double at_up_threshold(const AtParameters& p, int gear, double throttle) {
  const auto g = static_cast<std::size_t>(gear - 1);
  const double t = std::clamp(throttle, 0.0, kMaxThrottle) / kMaxThrottle;
  return p.up_low[g] + (p.up_high[g] - p.up_low[g]) * t;
}

AtState at_surrogate_step(const AtParameters& p, const AtState& state, double throttle,
                          double brake, double dt) {
  throttle = std::clamp(throttle, 0.0, kMaxThrottle);
  brake = std::clamp(brake, 0.0, kMaxBrake);

  const auto g = static_cast<std::size_t>(state.gear - 1);
  const double drive = p.engine_gain * (throttle / kMaxThrottle) * p.gear_factor[g];
  const double force = drive - p.drag * state.speed * state.speed - p.brake_gain * brake;

  AtState next;
  next.speed = std::max(0.0, state.speed + dt * force / p.mass);
  next.gear = state.gear;
  const double rpm = engine_rpm(p, state.gear, next.speed);
  if (state.gear < 4 && rpm > at_up_threshold(p, state.gear, throttle)) {
    ++next.gear;
  } else if (state.gear > 1 && rpm < p.down[g - 1]) {
    --next.gear;
  }
  next.rpm = engine_rpm(p, next.gear, next.speed);
  return next;
}

AtSurrogate::AtSurrogate(AtParameters params) : params_(params) {
  params_.validate();
  input_.variables = {{"throttle", 0.0, kMaxThrottle, 5}, {"brake", 0.0, kMaxBrake, 5}};
  input_.horizon = 30.0;
  input_.sample_step = 0.1;
}

Trace AtSurrogate::simulate(const Trace& input) const {
  return simulate_with_step(input, params_.internal_step);
}

Trace AtSurrogate::simulate_with_step(const Trace& input, double internal_step) const {
  if (!(internal_step > 0.0)) {
    throw simulation_error("AT surrogate integration step must be positive");
  }
  const auto throttle_idx = input.find("throttle");
  const auto brake_idx = input.find("brake");
  if (!throttle_idx || !brake_idx) {
    throw simulation_error("AT surrogate input must carry throttle and brake");
  }
  const auto throttle = input.column(*throttle_idx);
  const auto brake = input.column(*brake_idx);
  const std::size_t n = input.size();

  // The grid step is covered by an integer number of equal substeps no
  // longer than the requested one.
  const auto substeps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(input.step() / internal_step - 1e-9)));
  const double dt = input.step() / static_cast<double>(substeps);

  std::vector<double> speed(n), rpm(n), gear(n);
  AtState s;
  s.rpm = engine_rpm(params_, 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      // Input sample k-1 holds on [t_{k-1}, t_k).
      for (std::size_t i = 0; i < substeps; ++i) {
        s = at_surrogate_step(params_, s, throttle[k - 1], brake[k - 1], dt);
      }
      if (!std::isfinite(s.speed) || !std::isfinite(s.rpm)) {
        throw simulation_error("AT surrogate state became non-finite at t = " +
                               std::to_string(input.time(k)));
      }
    }
    speed[k] = s.speed;
    rpm[k] = s.rpm;
    gear[k] = static_cast<double>(s.gear);
  }
  return Trace(outputs_, input.step(), {std::move(speed), std::move(rpm), std::move(gear)});
}

} // namespace conjsynth
