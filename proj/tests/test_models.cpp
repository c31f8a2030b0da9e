#include "conjsynth/error.hpp"
#include "conjsynth/models.hpp"
#include "conjsynth/stl.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

using conjsynth::AtParameters;
using conjsynth::AtState;
using conjsynth::AtSurrogate;
using conjsynth::Trace;

namespace {

Trace at_input(const std::vector<double>& x) {
  return conjsynth::gen_signal(AtSurrogate().default_input(), x);
}

Trace constant_input(double throttle, double brake) {
  std::vector<double> x(10);
  std::fill(x.begin(), x.begin() + 5, throttle);
  std::fill(x.begin() + 5, x.end(), brake);
  return at_input(x);
}

std::vector<double> random_at_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> thr(0, 100), brk(0, 325);
  std::vector<double> x(10);
  for (int i = 0; i < 5; ++i) {
    x[i] = thr(rng);
    // Sparse braking so the runs actually move.
    x[i + 5] = rng() % 3 == 0 ? brk(rng) : 0.0;
  }
  return x;
}

} // namespace

TEST(AtSurrogate, ZeroInputIsAFixedPoint) {
  const AtParameters p;
  AtState s;
  s.rpm = p.idle_rpm;
  EXPECT_EQ(conjsynth::at_surrogate_step(p, s, 0, 0, 0.01), s);
  EXPECT_EQ(conjsynth::at_surrogate_step(p, s, 0, 325, 0.01), s);
  const auto out = AtSurrogate().simulate(constant_input(0, 325));
  ASSERT_EQ(out.size(), 301u);
  for (std::size_t k = 0; k < out.size(); ++k) {
    ASSERT_EQ(out.column("speed")[k], 0.0);
    ASSERT_EQ(out.column("gear")[k], 1.0);
    ASSERT_EQ(out.column("rpm")[k], p.idle_rpm);
  }
}

TEST(AtSurrogate, FullThrottleClimbsThroughTheGears) {
  const auto out = AtSurrogate().simulate(constant_input(100, 0));
  const auto speed = out.column("speed");
  const auto gear = out.column("gear");
  for (std::size_t k = 1; k < out.size(); ++k) {
    ASSERT_GE(speed[k], speed[k - 1]);
    ASSERT_GE(gear[k], gear[k - 1]);
  }
  EXPECT_EQ(gear.back(), 4.0);
  EXPECT_GT(speed.back(), 60.0);
}

TEST(AtSurrogate, ShiftThresholdInterpolatesInThrottle) {
  const AtParameters p;
  EXPECT_EQ(conjsynth::at_up_threshold(p, 1, 0), 1400.0);
  EXPECT_EQ(conjsynth::at_up_threshold(p, 1, 100), 2900.0);
  EXPECT_EQ(conjsynth::at_up_threshold(p, 2, 50), 1970.0);
  EXPECT_EQ(conjsynth::at_up_threshold(p, 3, 250), 2230.0);
}

TEST(AtSurrogate, OutputsAreAlignedWithTheInputGrid) {
  const auto in = constant_input(60, 0);
  const auto out = AtSurrogate().simulate(in);
  EXPECT_EQ(out.size(), in.size());
  EXPECT_DOUBLE_EQ(out.step(), in.step());
  EXPECT_EQ(out.variables(), (std::vector<std::string>{"speed", "rpm", "gear"}));
}

TEST(AtSurrogate, RejectsMissingInputsAndBadParameters) {
  const Trace only_throttle({"throttle"}, 0.1, {{0.0, 1.0}});
  EXPECT_THROW(AtSurrogate().simulate(only_throttle), conjsynth::simulation_error);
  AtParameters p;
  p.down[0] = 1500; // above up_low of gear 1
  EXPECT_THROW(AtSurrogate{p}, conjsynth::config_error);
  AtParameters q;
  q.mass = 0;
  EXPECT_THROW(AtSurrogate{q}, conjsynth::config_error);
}

TEST(AtSurrogate, FineStepReferenceAgreesWithinOnePercent) {
  const AtSurrogate model;
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto in = at_input(random_at_point(rng));
    const auto coarse_trace = model.simulate(in);
    const auto fine_trace = model.simulate_with_step(in, 0.001);
    const auto coarse = coarse_trace.column("speed");
    const auto fine = fine_trace.column("speed");
    const double top = std::max(1.0, *std::max_element(fine.begin(), fine.end()));
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      ASSERT_NEAR(coarse[k], fine[k], 0.01 * top) << "trial " << trial << " sample " << k;
    }
  }
}

TEST(AtSurrogateProperty, RandomInputsKeepTheStateConsistent) {
  const AtSurrogate model;
  const auto& p = model.parameters();
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const auto out = model.simulate(at_input(random_at_point(rng)));
    const auto speed = out.column("speed");
    const auto rpm = out.column("rpm");
    const auto gear = out.column("gear");
    for (std::size_t k = 0; k < out.size(); ++k) {
      ASSERT_GE(speed[k], 0.0);
      ASSERT_TRUE(gear[k] == 1 || gear[k] == 2 || gear[k] == 3 || gear[k] == 4);
      const auto g = static_cast<std::size_t>(gear[k]) - 1;
      ASSERT_DOUBLE_EQ(rpm[k], std::min(p.max_rpm, p.rpm_per_mph[g] * speed[k] + p.idle_rpm));
      // rpm lives in the thousands while gear spans 1..4: the robustness
      // scales of the two differ by orders of magnitude.
      ASSERT_GE(rpm[k], p.idle_rpm);
    }
  }
}

TEST(AtSurrogateProperty, ConstantInputsNeverChatter) {
  // With constant inputs speed moves monotonically toward equilibrium, so the
  // gear sequence must be monotone too.
  const AtSurrogate model;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> thr(0, 100);
  for (int trial = 0; trial < 100; ++trial) {
    const auto out = model.simulate(constant_input(thr(rng), 0));
    const auto gear = out.column("gear");
    for (std::size_t k = 1; k < out.size(); ++k) {
      ASSERT_GE(gear[k], gear[k - 1]) << "trial " << trial;
      ASSERT_LE(gear[k] - gear[k - 1], 1.0);
    }
  }
}

TEST(AtSurrogateProperty, Deterministic) {
  const AtSurrogate model;
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const auto in = at_input(random_at_point(rng));
    const auto a = model.simulate(in);
    const auto b = model.simulate(in);
    for (const auto* name : {"speed", "rpm", "gear"}) {
      ASSERT_TRUE(std::ranges::equal(a.column(name), b.column(name)));
    }
  }
}

TEST(AnalyticModels, ClosedForms) {
  const auto corner = conjsynth::make_corner_model();
  const Trace u({"u"}, 0.5, {{0.25, 0.6, 1.7}});
  const auto out = corner->simulate(u);
  EXPECT_EQ(out.column("y1")[0], 0.25);
  EXPECT_EQ(out.column("y2")[1], 1.0 - 0.6);
  EXPECT_EQ(out.column("y1")[2], 1.0); // clamped to the box
  EXPECT_EQ(out.column("y2")[2], 0.0);

  const auto ident = conjsynth::make_identity_model();
  EXPECT_EQ(ident->simulate(u).column("y")[1], 0.6);

  const auto conflict = conjsynth::make_conflict_model();
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> d(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    double sum = 0;
    for (int i = 1; i <= 6; ++i) {
      names.push_back("u" + std::to_string(i));
      const double v = d(rng);
      sum += v;
      cols.push_back({v, v, v});
    }
    const double m = sum / 6.0;
    const auto o = conflict->simulate(Trace(names, 0.5, cols));
    ASSERT_NEAR(o.column("level")[0], m, 1e-12);
    ASSERT_NEAR(o.column("load")[2], 1000.0 * std::abs(m - 0.725), 1e-9);
  }
  EXPECT_THROW(conflict->simulate(u), conjsynth::simulation_error);
}

TEST(AtSurrogateProperty, At1ConjunctScalesDifferByTwoOrders) {
  // Ranges over random inputs of the three AT1 conjunct robustness values.
  const AtSurrogate model;
  const auto rpm = conjsynth::stl::parse_formula("alw_[0,30](rpm <= 2400)");
  const auto speed = conjsynth::stl::parse_formula("alw_[0,30](speed <= 60)");
  const auto gear = conjsynth::stl::parse_formula("ev_[0,30](gear >= 3)");
  std::mt19937_64 rng(26);
  std::array<double, 3> lo{INFINITY, INFINITY, INFINITY};
  std::array<double, 3> hi{-INFINITY, -INFINITY, -INFINITY};
  for (int trial = 0; trial < 300; ++trial) {
    const auto out = model.simulate(at_input(random_at_point(rng)));
    const std::array<double, 3> r{conjsynth::stl::robustness(out, rpm),
                                  conjsynth::stl::robustness(out, speed),
                                  conjsynth::stl::robustness(out, gear)};
    for (int j = 0; j < 3; ++j) {
      lo[j] = std::min(lo[j], r[j]);
      hi[j] = std::max(hi[j], r[j]);
    }
  }
  const double rpm_range = hi[0] - lo[0];
  const double gear_range = hi[2] - lo[2];
  EXPECT_GT(gear_range, 0.0);
  EXPECT_GE(rpm_range, 100.0 * gear_range);
  EXPECT_GE(rpm_range, 10.0 * (hi[1] - lo[1]));
}
