#pragma once

// Naive recursive STL evaluator used as a test oracle. It re-derives every
// value from the definitions sample by sample, with no sliding windows and
// no shared code with the library evaluator beyond the Formula/Trace types.

#include "conjsynth/stl.hpp"
#include "conjsynth/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

using conjsynth::Trace;
using conjsynth::stl::Formula;
using conjsynth::stl::Relation;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Offsets d >= 0 with d * dt in [lo, hi], tested directly against the bounds
// with a relative slack of 1e-9 of the step.
inline bool in_window(std::size_t offset, const conjsynth::stl::Interval& iv, double dt) {
  const double t = static_cast<double>(offset) * dt;
  const double slack = 1e-9 * dt;
  return t >= iv.lo - slack && t <= iv.hi + slack;
}

inline double affine_value(const Trace& tr, const conjsynth::stl::Atom& a, std::size_t k) {
  double v = a.expr.constant();
  for (const auto& term : a.expr.terms()) {
    v += term.coefficient * tr.column(term.variable)[k];
  }
  return v;
}

inline double naive_robustness(const Trace& tr, const Formula& f, std::size_t k) {
  using K = Formula::Kind;
  const std::size_t n = tr.size();
  switch (f.kind()) {
  case K::True:
    return kInf;
  case K::False:
    return -kInf;
  case K::Atom: {
    const auto& a = f.atom_data();
    const double v = affine_value(tr, a, k);
    switch (a.relation) {
    case Relation::Greater:
    case Relation::GreaterEq:
      return v - a.threshold;
    case Relation::Less:
    case Relation::LessEq:
      return a.threshold - v;
    case Relation::Equal:
      return 0.5 - std::abs(v - a.threshold);
    }
    return 0.0;
  }
  case K::Not:
    return -naive_robustness(tr, f.operand(), k);
  case K::And:
    return std::min(naive_robustness(tr, f.lhs(), k), naive_robustness(tr, f.rhs(), k));
  case K::Or:
    return std::max(naive_robustness(tr, f.lhs(), k), naive_robustness(tr, f.rhs(), k));
  case K::Implies:
    return std::max(-naive_robustness(tr, f.lhs(), k), naive_robustness(tr, f.rhs(), k));
  case K::Eventually: {
    double best = -kInf;
    for (std::size_t j = k; j < n; ++j) {
      if (in_window(j - k, f.interval(), tr.step())) {
        best = std::max(best, naive_robustness(tr, f.operand(), j));
      }
    }
    return best;
  }
  case K::Always: {
    double worst = kInf;
    for (std::size_t j = k; j < n; ++j) {
      if (in_window(j - k, f.interval(), tr.step())) {
        worst = std::min(worst, naive_robustness(tr, f.operand(), j));
      }
    }
    return worst;
  }
  case K::Until: {
    double best = -kInf;
    for (std::size_t j = k; j < n; ++j) {
      if (!in_window(j - k, f.interval(), tr.step())) {
        continue;
      }
      double v = naive_robustness(tr, f.rhs(), j);
      for (std::size_t i = k; i < j; ++i) {
        v = std::min(v, naive_robustness(tr, f.lhs(), i));
      }
      best = std::max(best, v);
    }
    return best;
  }
  case K::Release: {
    double worst = kInf;
    for (std::size_t j = k; j < n; ++j) {
      if (!in_window(j - k, f.interval(), tr.step())) {
        continue;
      }
      double v = naive_robustness(tr, f.rhs(), j);
      for (std::size_t i = k; i < j; ++i) {
        v = std::max(v, naive_robustness(tr, f.lhs(), i));
      }
      worst = std::min(worst, v);
    }
    return worst;
  }
  }
  return 0.0;
}

inline bool naive_satisfied(const Trace& tr, const Formula& f, std::size_t k) {
  using K = Formula::Kind;
  const std::size_t n = tr.size();
  switch (f.kind()) {
  case K::True:
    return true;
  case K::False:
    return false;
  case K::Atom: {
    const auto& a = f.atom_data();
    const double v = affine_value(tr, a, k);
    switch (a.relation) {
    case Relation::Greater:
      return v > a.threshold;
    case Relation::GreaterEq:
      return v >= a.threshold;
    case Relation::Less:
      return v < a.threshold;
    case Relation::LessEq:
      return v <= a.threshold;
    case Relation::Equal:
      return v == a.threshold;
    }
    return false;
  }
  case K::Not:
    return !naive_satisfied(tr, f.operand(), k);
  case K::And:
    return naive_satisfied(tr, f.lhs(), k) && naive_satisfied(tr, f.rhs(), k);
  case K::Or:
    return naive_satisfied(tr, f.lhs(), k) || naive_satisfied(tr, f.rhs(), k);
  case K::Implies:
    return !naive_satisfied(tr, f.lhs(), k) || naive_satisfied(tr, f.rhs(), k);
  case K::Eventually:
    for (std::size_t j = k; j < n; ++j) {
      if (in_window(j - k, f.interval(), tr.step()) && naive_satisfied(tr, f.operand(), j)) {
        return true;
      }
    }
    return false;
  case K::Always:
    for (std::size_t j = k; j < n; ++j) {
      if (in_window(j - k, f.interval(), tr.step()) && !naive_satisfied(tr, f.operand(), j)) {
        return false;
      }
    }
    return true;
  case K::Until:
  case K::Release: {
    // phi R psi == not (not phi U not psi)
    const bool release = f.kind() == K::Release;
    auto lhs = [&](std::size_t i) { return naive_satisfied(tr, f.lhs(), i) != release; };
    auto rhs = [&](std::size_t j) { return naive_satisfied(tr, f.rhs(), j) != release; };
    bool until = false;
    for (std::size_t j = k; j < n && !until; ++j) {
      if (!in_window(j - k, f.interval(), tr.step()) || !rhs(j)) {
        continue;
      }
      bool held = true;
      for (std::size_t i = k; i < j && held; ++i) {
        held = lhs(i);
      }
      until = held;
    }
    return until != release;
  }
  }
  return false;
}

} // namespace oracle
