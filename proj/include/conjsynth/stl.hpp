#pragma once

#include "conjsynth/trace.hpp"

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace conjsynth::stl {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// Sum of coefficient * variable terms plus a constant. Terms are kept sorted
/// by variable name with zero coefficients dropped, so structurally equal
/// expressions compare equal.
class AffineExpr {
public:
  struct Term {
    std::string variable;
    double coefficient;
    friend bool operator==(const Term&, const Term&) = default;
  };

  AffineExpr() = default;
  explicit AffineExpr(double constant) : constant_(constant) {}
  static AffineExpr variable(std::string name, double coefficient = 1.0);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  double constant() const noexcept { return constant_; }
  bool is_constant() const noexcept { return terms_.empty(); }

  AffineExpr operator+(const AffineExpr& rhs) const;
  AffineExpr operator-(const AffineExpr& rhs) const;
  AffineExpr operator*(double factor) const;
  AffineExpr without_constant() const;

  friend bool operator==(const AffineExpr&, const AffineExpr&) = default;

private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

enum class Relation { Greater, Less, GreaterEq, LessEq, Equal };

std::string_view to_string(Relation rel);

/// `expr relation threshold`. The parser moves every constant to the
/// threshold side, so `expr` carries no constant term.
struct Atom {
  AffineExpr expr;
  Relation relation;
  double threshold;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Closed time interval [lo, hi] in seconds; hi may be +inf. lo < hi.
struct Interval {
  double lo = 0.0;
  double hi = infinity;

  /// Throws config_error unless 0 <= lo < hi.
  static Interval checked(double lo, double hi);
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Immutable STL formula. Copies share the underlying tree.
class Formula {
public:
  enum class Kind {
    True,
    False,
    Atom,
    Not,
    And,
    Or,
    Implies,
    Until,
    Release,
    Eventually,
    Always,
  };

  /// The constant `true`.
  Formula() = default;

  static Formula top();
  static Formula bottom();
  static Formula atom(AffineExpr expr, Relation relation, double threshold);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula until(Interval interval, Formula lhs, Formula rhs);
  static Formula release(Interval interval, Formula lhs, Formula rhs);
  static Formula eventually(Interval interval, Formula operand);
  static Formula always(Interval interval, Formula operand);

  Kind kind() const noexcept;
  std::size_t arity() const noexcept;
  /// Operand i (0-based). Unary nodes have one operand, binary nodes two.
  const Formula& operand(std::size_t i = 0) const;
  const Formula& lhs() const { return operand(0); }
  const Formula& rhs() const { return operand(1); }
  /// Only valid for Atom nodes.
  const stl::Atom& atom_data() const;
  /// Only valid for temporal nodes.
  const Interval& interval() const;

  bool is_temporal() const noexcept;
  std::size_t depth() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parse the textual syntax:
///
///   atoms       expr rel expr, expr affine over identifiers and literals,
///               rel one of > < >= <= = (== accepted)
///   constants   true false
///   unary       not phi | alw_[a,b] phi | ev_[a,b] phi
///   binary      phi U_[a,b] psi | phi R_[a,b] psi | phi /\ psi | phi \/ psi
///               | phi -> psi
///
/// `b` may be `inf`. Precedence, tightest first: unary, U/R, /\, \/, ->.
/// `->` is right associative, the others left associative.
Formula parse_formula(std::string_view text);

/// Fully parenthesized text that parse_formula maps back to an equal formula.
std::string to_string(const Formula& formula);

/// Quantitative satisfaction of `formula` by `trace` at sample `at_sample`.
/// Temporal operators take min/max over the samples whose offset from the
/// evaluation sample lies in the interval, clipped to the trace; an empty
/// window makes Eventually -inf and Always +inf.
double robustness(const Trace& trace, const Formula& formula, std::size_t at_sample = 0);

/// Robustness at every sample of the trace.
std::vector<double> robustness_signal(const Trace& trace, const Formula& formula);

/// Classical Boolean satisfaction under the same sampling discipline.
bool boolean_sat(const Trace& trace, const Formula& formula, std::size_t at_sample = 0);

/// Flatten nested top-level conjunctions left to right.
std::vector<Formula> top_level_conjuncts(const Formula& formula);

/// Conjunction of the given formulas, left nested. Must be nonempty.
Formula conjoin(const std::vector<Formula>& conjuncts);

Formula negate(const Formula& formula);

/// Seconds of signal needed after the evaluation point for every temporal
/// window to be fully covered (+inf for unbounded intervals).
double required_horizon(const Formula& formula);

/// Every variable name referenced by an atom, sorted and unique.
std::vector<std::string> variables(const Formula& formula);

} // namespace conjsynth::stl
