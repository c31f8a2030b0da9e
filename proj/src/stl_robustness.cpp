#include "conjsynth/error.hpp"
#include "conjsynth/stl.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <type_traits>

namespace conjsynth::stl {
namespace {

constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

// Sample offsets covered by [lo, hi] on a grid of spacing `step`. The 1e-9
// slack absorbs representation error in bounds like 0.3 / 0.1.
struct Window {
  std::size_t first;
  std::size_t last; // inclusive, `unbounded` for +inf
};

Window window_of(const Interval& iv, double step) {
  const double a = std::ceil(iv.lo / step - 1e-9);
  Window w{static_cast<std::size_t>(std::max(0.0, a)), unbounded};
  if (std::isfinite(iv.hi)) {
    const double b = std::floor(iv.hi / step + 1e-9);
    w.last = static_cast<std::size_t>(std::max(0.0, b));
  }
  return w;
}

// Lattice operations shared by the quantitative and the Boolean evaluator.
// Boolean values are encoded as +1 / -1 so that and/or/not are min/max/negate.
struct RobustAtoms {
  static double eval(const Atom& atom, double value) {
    switch (atom.relation) {
      case Relation::Greater:
      case Relation::GreaterEq: return value - atom.threshold;
      case Relation::Less:
      case Relation::LessEq: return atom.threshold - value;
      case Relation::Equal: return 0.5 - std::abs(value - atom.threshold);
    }
    return 0.0;
  }
};

struct BooleanAtoms {
  static double eval(const Atom& atom, double value) {
    bool holds = false;
    switch (atom.relation) {
      case Relation::Greater: holds = value > atom.threshold; break;
      case Relation::GreaterEq: holds = value >= atom.threshold; break;
      case Relation::Less: holds = value < atom.threshold; break;
      case Relation::LessEq: holds = value <= atom.threshold; break;
      case Relation::Equal: holds = value == atom.threshold; break;
    }
    return holds ? 1.0 : -1.0;
  }
};

// out[k] = extreme of v over samples [k + w.first, k + w.last] clipped to the
// trace, or `empty` when that range starts past the end. Monotone deque, O(N).
std::vector<double> sliding_extreme(const std::vector<double>& v, Window w, bool take_max,
                                    double empty) {
  const std::size_t n = v.size();
  std::vector<double> out(n, empty);
  if (w.first > w.last) {
    return out;
  }
  auto better = [take_max](double x, double y) { return take_max ? x >= y : x <= y; };
  std::deque<std::size_t> dq;
  std::size_t next = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (w.first >= n - k) {
      break; // every later window starts past the end as well
    }
    const std::size_t lo = k + w.first;
    const std::size_t hi = (w.last >= n - 1 - k) ? n - 1 : k + w.last;
    for (; next <= hi; ++next) {
      while (!dq.empty() && better(v[next], v[dq.back()])) {
        dq.pop_back();
      }
      dq.push_back(next);
    }
    while (dq.front() < lo) {
      dq.pop_front();
    }
    out[k] = v[dq.front()];
  }
  return out;
}

template <class Atoms>
class Evaluator {
public:
  explicit Evaluator(const Trace& trace) : trace_(trace), n_(trace.size()) {}

  std::vector<double> eval(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True: return std::vector<double>(n_, top());
      case K::False: return std::vector<double>(n_, -top());
      case K::Atom: return atom(f.atom_data());
      case K::Not: {
        auto v = eval(f.operand());
        for (auto& x : v) {
          x = -x;
        }
        return v;
      }
      case K::And: return combine(eval(f.lhs()), eval(f.rhs()), false);
      case K::Or: return combine(eval(f.lhs()), eval(f.rhs()), true);
      case K::Implies: {
        auto a = eval(f.lhs());
        for (auto& x : a) {
          x = -x;
        }
        return combine(std::move(a), eval(f.rhs()), true);
      }
      case K::Eventually:
        return sliding_extreme(eval(f.operand()), window_of(f.interval(), trace_.step()), true,
                               -top());
      case K::Always:
        return sliding_extreme(eval(f.operand()), window_of(f.interval(), trace_.step()), false,
                               top());
      case K::Until: return until(f, false);
      case K::Release: return until(f, true);
    }
    return {};
  }

private:
  static constexpr double top() { return std::is_same_v<Atoms, RobustAtoms> ? infinity : 1.0; }

  std::vector<double> atom(const Atom& a) {
    std::vector<double> value(n_, a.expr.constant());
    for (const auto& term : a.expr.terms()) {
      auto col = trace_.column(term.variable);
      for (std::size_t k = 0; k < n_; ++k) {
        value[k] += term.coefficient * col[k];
      }
    }
    for (auto& x : value) {
      x = Atoms::eval(a, x);
    }
    return value;
  }

  static std::vector<double> combine(std::vector<double> a, const std::vector<double>& b,
                                     bool take_max) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      a[k] = take_max ? std::max(a[k], b[k]) : std::min(a[k], b[k]);
    }
    return a;
  }

  // Until:   max_{j in window} min(rhs[j], min_{k <= j' < j} lhs[j'])
  // Release: min_{j in window} max(rhs[j], max_{k <= j' < j} lhs[j'])
  std::vector<double> until(const Formula& f, bool release) {
    const auto lhs = eval(f.lhs());
    const auto rhs = eval(f.rhs());
    const Window w = window_of(f.interval(), trace_.step());
    const double outer_empty = release ? top() : -top();
    const double inner_empty = release ? -top() : top();
    std::vector<double> out(n_, outer_empty);
    if (w.first > w.last) {
      return out;
    }
    for (std::size_t k = 0; k < n_; ++k) {
      if (w.first >= n_ - k) {
        break;
      }
      const std::size_t lo = k + w.first;
      const std::size_t hi = (w.last >= n_ - 1 - k) ? n_ - 1 : k + w.last;
      double prefix = inner_empty;
      double acc = outer_empty;
      for (std::size_t j = k; j <= hi; ++j) {
        if (j >= lo) {
          double cand = release ? std::max(rhs[j], prefix) : std::min(rhs[j], prefix);
          acc = release ? std::min(acc, cand) : std::max(acc, cand);
        }
        prefix = release ? std::max(prefix, lhs[j]) : std::min(prefix, lhs[j]);
      }
      out[k] = acc;
    }
    return out;
  }

  const Trace& trace_;
  std::size_t n_;
};

void check_sample(const Trace& trace, std::size_t at_sample) {
  if (at_sample >= trace.size()) {
    throw evaluation_error("sample index " + std::to_string(at_sample) +
                           " is outside a trace of " + std::to_string(trace.size()) +
                           " samples");
  }
}

} // namespace

std::vector<double> robustness_signal(const Trace& trace, const Formula& formula) {
  if (trace.empty()) {
    throw evaluation_error("cannot evaluate a formula on an empty trace");
  }
  return Evaluator<RobustAtoms>(trace).eval(formula);
}

double robustness(const Trace& trace, const Formula& formula, std::size_t at_sample) {
  check_sample(trace, at_sample);
  return robustness_signal(trace, formula)[at_sample];
}

bool boolean_sat(const Trace& trace, const Formula& formula, std::size_t at_sample) {
  check_sample(trace, at_sample);
  return Evaluator<BooleanAtoms>(trace).eval(formula)[at_sample] > 0.0;
}

} // namespace conjsynth::stl
