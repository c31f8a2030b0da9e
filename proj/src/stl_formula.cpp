#include "conjsynth/error.hpp"
#include "conjsynth/stl.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>

namespace conjsynth::stl {

// ---------------------------------------------------------------------------
// AffineExpr

namespace {

std::vector<AffineExpr::Term> merge_terms(const std::vector<AffineExpr::Term>& a,
                                          const std::vector<AffineExpr::Term>& b,
                                          double b_sign) {
  std::vector<AffineExpr::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].variable < b[j].variable)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].variable < a[i].variable) {
      out.push_back({b[j].variable, b_sign * b[j].coefficient});
      ++j;
    } else {
      double c = a[i].coefficient + b_sign * b[j].coefficient;
      if (c != 0.0) {
        out.push_back({a[i].variable, c});
      }
      ++i;
      ++j;
    }
  }
  return out;
}

} // namespace

AffineExpr AffineExpr::variable(std::string name, double coefficient) {
  AffineExpr e;
  if (coefficient != 0.0) {
    e.terms_.push_back({std::move(name), coefficient});
  }
  return e;
}

AffineExpr AffineExpr::operator+(const AffineExpr& rhs) const {
  AffineExpr e;
  e.terms_ = merge_terms(terms_, rhs.terms_, 1.0);
  e.constant_ = constant_ + rhs.constant_;
  return e;
}

AffineExpr AffineExpr::operator-(const AffineExpr& rhs) const {
  AffineExpr e;
  e.terms_ = merge_terms(terms_, rhs.terms_, -1.0);
  e.constant_ = constant_ - rhs.constant_;
  return e;
}

AffineExpr AffineExpr::operator*(double factor) const {
  AffineExpr e;
  if (factor != 0.0) {
    e.terms_ = terms_;
    for (auto& t : e.terms_) {
      t.coefficient *= factor;
    }
  }
  e.constant_ = constant_ * factor;
  return e;
}

AffineExpr AffineExpr::without_constant() const {
  AffineExpr e = *this;
  e.constant_ = 0.0;
  return e;
}

std::string_view to_string(Relation rel) {
  switch (rel) {
    case Relation::Greater: return ">";
    case Relation::Less: return "<";
    case Relation::GreaterEq: return ">=";
    case Relation::LessEq: return "<=";
    case Relation::Equal: return "=";
  }
  return "?";
}

Interval Interval::checked(double lo, double hi) {
  if (!(lo >= 0.0) || !std::isfinite(lo)) {
    throw config_error("interval lower bound must be finite and nonnegative");
  }
  if (!(lo < hi)) {
    throw config_error("singular interval: lower bound must be below upper bound");
  }
  return Interval{lo, hi};
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Kind kind;
  stl::Atom atom{};
  Interval interval{};
  std::array<Formula, 2> operands{};
  std::size_t arity = 0;
  std::size_t depth = 1;
};

namespace {

std::size_t depth_of(const Formula& f) { return f.depth(); }

} // namespace

Formula Formula::top() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::True}));
  return f;
}

Formula Formula::bottom() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::False}));
  return f;
}

Formula Formula::atom(AffineExpr expr, Relation relation, double threshold) {
  Node n{Kind::Atom};
  n.atom = stl::Atom{std::move(expr), relation, threshold};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::negation(Formula operand) {
  Node n{Kind::Not};
  n.depth = depth_of(operand) + 1;
  n.operands[0] = std::move(operand);
  n.arity = 1;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

namespace {

template <class NodeT, class K>
NodeT binary_node(K kind, Formula lhs, Formula rhs) {
  NodeT n{kind};
  n.depth = std::max(lhs.depth(), rhs.depth()) + 1;
  n.operands[0] = std::move(lhs);
  n.operands[1] = std::move(rhs);
  n.arity = 2;
  return n;
}

} // namespace

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      binary_node<Node>(Kind::And, std::move(lhs), std::move(rhs))));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      binary_node<Node>(Kind::Or, std::move(lhs), std::move(rhs))));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      binary_node<Node>(Kind::Implies, std::move(lhs), std::move(rhs))));
}

Formula Formula::until(Interval interval, Formula lhs, Formula rhs) {
  auto n = binary_node<Node>(Kind::Until, std::move(lhs), std::move(rhs));
  n.interval = Interval::checked(interval.lo, interval.hi);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::release(Interval interval, Formula lhs, Formula rhs) {
  auto n = binary_node<Node>(Kind::Release, std::move(lhs), std::move(rhs));
  n.interval = Interval::checked(interval.lo, interval.hi);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::eventually(Interval interval, Formula operand) {
  Node n{Kind::Eventually};
  n.interval = Interval::checked(interval.lo, interval.hi);
  n.depth = depth_of(operand) + 1;
  n.operands[0] = std::move(operand);
  n.arity = 1;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::always(Interval interval, Formula operand) {
  Node n{Kind::Always};
  n.interval = Interval::checked(interval.lo, interval.hi);
  n.depth = depth_of(operand) + 1;
  n.operands[0] = std::move(operand);
  n.arity = 1;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula::Kind Formula::kind() const noexcept { return node_ ? node_->kind : Kind::True; }

std::size_t Formula::arity() const noexcept { return node_ ? node_->arity : 0; }

const Formula& Formula::operand(std::size_t i) const {
  if (!node_ || i >= node_->arity) {
    throw std::out_of_range("formula operand index out of range");
  }
  return node_->operands[i];
}

const stl::Atom& Formula::atom_data() const {
  if (kind() != Kind::Atom) {
    throw std::logic_error("atom_data() on a non-atom formula");
  }
  return node_->atom;
}

const Interval& Formula::interval() const {
  if (!is_temporal()) {
    throw std::logic_error("interval() on a non-temporal formula");
  }
  return node_->interval;
}

bool Formula::is_temporal() const noexcept {
  switch (kind()) {
    case Kind::Until:
    case Kind::Release:
    case Kind::Eventually:
    case Kind::Always: return true;
    default: return false;
  }
}

std::size_t Formula::depth() const noexcept { return node_ ? node_->depth : 1; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) {
    return true;
  }
  if (a.kind() != b.kind() || a.arity() != b.arity()) {
    return false;
  }
  if (a.kind() == Formula::Kind::Atom && !(a.atom_data() == b.atom_data())) {
    return false;
  }
  if (a.is_temporal() && !(a.interval() == b.interval())) {
    return false;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.operand(i) == b.operand(i))) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string number_text(double v) {
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  if (v == 0.0) {
    v = 0.0; // drop the sign of -0
  }
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

std::string expr_text(const AffineExpr& e) {
  std::string out;
  for (const auto& t : e.terms()) {
    double c = t.coefficient;
    if (out.empty()) {
      if (c < 0) {
        out += "-";
      }
    } else {
      out += c < 0 ? " - " : " + ";
    }
    double mag = std::abs(c);
    if (mag != 1.0) {
      out += number_text(mag) + "*";
    }
    out += t.variable;
  }
  if (e.constant() != 0.0 || out.empty()) {
    double c = e.constant();
    if (out.empty()) {
      out = number_text(c);
    } else {
      out += (c < 0 ? " - " : " + ") + number_text(std::abs(c));
    }
  }
  return out;
}

std::string interval_text(const Interval& i) {
  return "[" + number_text(i.lo) + "," + number_text(i.hi) + "]";
}

void print(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: out += "true"; return;
    case K::False: out += "false"; return;
    case K::Atom: {
      const auto& a = f.atom_data();
      out += expr_text(a.expr);
      out += " ";
      out += to_string(a.relation);
      out += " ";
      // A negative threshold prints as "-3", which the parser reads back as a
      // negated literal of the same value.
      out += number_text(a.threshold);
      return;
    }
    case K::Not:
      out += "not (";
      print(f.operand(), out);
      out += ")";
      return;
    case K::Eventually:
    case K::Always:
      out += f.kind() == K::Eventually ? "ev_" : "alw_";
      out += interval_text(f.interval());
      out += " (";
      print(f.operand(), out);
      out += ")";
      return;
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Until:
    case K::Release: {
      out += "(";
      print(f.lhs(), out);
      out += ")";
      switch (f.kind()) {
        case K::And: out += " /\\ "; break;
        case K::Or: out += " \\/ "; break;
        case K::Implies: out += " -> "; break;
        case K::Until: out += " U_" + interval_text(f.interval()) + " "; break;
        default: out += " R_" + interval_text(f.interval()) + " "; break;
      }
      out += "(";
      print(f.rhs(), out);
      out += ")";
      return;
    }
  }
}

void collect_conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Formula::Kind::And) {
    collect_conjuncts(f.lhs(), out);
    collect_conjuncts(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

void collect_variables(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Formula::Kind::Atom) {
    for (const auto& t : f.atom_data().expr.terms()) {
      out.insert(t.variable);
    }
  }
  for (std::size_t i = 0; i < f.arity(); ++i) {
    collect_variables(f.operand(i), out);
  }
}

} // namespace

std::string to_string(const Formula& formula) {
  std::string out;
  print(formula, out);
  return out;
}

std::vector<Formula> top_level_conjuncts(const Formula& formula) {
  std::vector<Formula> out;
  collect_conjuncts(formula, out);
  return out;
}

Formula conjoin(const std::vector<Formula>& conjuncts) {
  if (conjuncts.empty()) {
    throw std::invalid_argument("conjoin() needs at least one formula");
  }
  Formula f = conjuncts.front();
  for (std::size_t i = 1; i < conjuncts.size(); ++i) {
    f = Formula::conjunction(f, conjuncts[i]);
  }
  return f;
}

Formula negate(const Formula& formula) { return Formula::negation(formula); }

double required_horizon(const Formula& f) {
  double child = 0.0;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    child = std::max(child, required_horizon(f.operand(i)));
  }
  return f.is_temporal() ? f.interval().hi + child : child;
}

std::vector<std::string> variables(const Formula& formula) {
  std::set<std::string> names;
  collect_variables(formula, names);
  return {names.begin(), names.end()};
}

} // namespace conjsynth::stl
