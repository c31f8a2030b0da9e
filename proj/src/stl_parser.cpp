#include "conjsynth/error.hpp"
#include "conjsynth/stl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

namespace conjsynth::stl {
namespace {

enum class Tok {
  End,
  Number,
  Ident,
  Inf,
  True,
  False,
  Not,
  Always,     // alw_
  Eventually, // ev_
  Until,      // U_
  Release,    // R_
  And,        // /\ .
  Or,         // \/ .
  Implies,    // ->
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Plus,
  Minus,
  Star,
  Slash,
  Rel,
};

struct Token {
  Tok kind = Tok::End;
  std::size_t pos = 0;
  std::string text;
  double number = 0.0;
  Relation rel = Relation::Greater;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = pos_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && pos_ + 1 < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        lex_number(t);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        lex_word(t);
      } else {
        lex_symbol(t);
      }
      out.push_back(std::move(t));
    }
  }

private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  void lex_number(Token& t) {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        ++pos_;
      }
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      } else {
        pos_ = save;
      }
    }
    auto sv = text_.substr(start, pos_ - start);
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), t.number);
    if (ec != std::errc() || ptr != sv.data() + sv.size()) {
      throw parse_error("malformed number '" + std::string(sv) + "'", start);
    }
    t.kind = Tok::Number;
    t.text = std::string(sv);
  }

  void lex_word(Token& t) {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    t.text = std::string(text_.substr(start, pos_ - start));
    if (t.text == "alw_") {
      t.kind = Tok::Always;
    } else if (t.text == "ev_") {
      t.kind = Tok::Eventually;
    } else if (t.text == "U_") {
      t.kind = Tok::Until;
    } else if (t.text == "R_") {
      t.kind = Tok::Release;
    } else if (t.text == "not") {
      t.kind = Tok::Not;
    } else if (t.text == "true") {
      t.kind = Tok::True;
    } else if (t.text == "false") {
      t.kind = Tok::False;
    } else if (t.text == "inf") {
      t.kind = Tok::Inf;
    } else {
      t.kind = Tok::Ident;
    }
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  void lex_symbol(Token& t) {
    auto take = [&](Tok k, std::size_t len) {
      t.kind = k;
      t.text = std::string(text_.substr(pos_, len));
      pos_ += len;
    };
    auto take_rel = [&](Relation r, std::size_t len) {
      take(Tok::Rel, len);
      t.rel = r;
    };
    if (starts_with("/\\")) return take(Tok::And, 2);
    if (starts_with("\\/")) return take(Tok::Or, 2);
    if (starts_with("->")) return take(Tok::Implies, 2);
    if (starts_with(">=")) return take_rel(Relation::GreaterEq, 2);
    if (starts_with("<=")) return take_rel(Relation::LessEq, 2);
    if (starts_with("==")) return take_rel(Relation::Equal, 2);
    switch (text_[pos_]) {
      case '>': return take_rel(Relation::Greater, 1);
      case '<': return take_rel(Relation::Less, 1);
      case '=': return take_rel(Relation::Equal, 1);
      case '(': return take(Tok::LParen, 1);
      case ')': return take(Tok::RParen, 1);
      case '[': return take(Tok::LBracket, 1);
      case ']': return take(Tok::RBracket, 1);
      case ',': return take(Tok::Comma, 1);
      case '+': return take(Tok::Plus, 1);
      case '-': return take(Tok::Minus, 1);
      case '*': return take(Tok::Star, 1);
      case '/': return take(Tok::Slash, 1);
      default: break;
    }
    throw parse_error(std::string("unexpected character '") + text_[pos_] + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::End) {
      fail("unexpected '" + peek().text + "'");
    }
    return f;
  }

private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[i_];
    if (i_ + 1 < toks_.size()) {
      ++i_;
    }
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind == k) {
      next();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    if (peek().kind == Tok::End) {
      throw parse_error(msg.empty() ? "unexpected end of input" : msg + " (end of input)",
                        peek().pos);
    }
    throw parse_error(msg, peek().pos);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) {
      fail(std::string("expected ") + what);
    }
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Implies)) {
      return Formula::implication(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Or)) {
      f = Formula::disjunction(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = binary_temporal();
    while (accept(Tok::And)) {
      f = Formula::conjunction(f, binary_temporal());
    }
    return f;
  }

  Formula binary_temporal() {
    Formula f = unary();
    for (;;) {
      if (accept(Tok::Until)) {
        Interval i = interval();
        f = Formula::until(i, f, unary());
      } else if (accept(Tok::Release)) {
        Interval i = interval();
        f = Formula::release(i, f, unary());
      } else {
        return f;
      }
    }
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not: next(); return Formula::negation(unary());
      case Tok::Always: {
        next();
        Interval i = interval();
        return Formula::always(i, unary());
      }
      case Tok::Eventually: {
        next();
        Interval i = interval();
        return Formula::eventually(i, unary());
      }
      default: return primary();
    }
  }

  Formula primary() {
    switch (peek().kind) {
      case Tok::True: next(); return Formula::top();
      case Tok::False: next(); return Formula::bottom();
      case Tok::LParen: {
        // Either a parenthesized formula or an atom whose left expression
        // starts with '('. Try the atom first and fall back.
        std::size_t save = i_;
        if (auto a = try_atom()) {
          return *a;
        }
        i_ = save;
        next();
        Formula f = implication();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Number:
      case Tok::Ident:
      case Tok::Minus:
      case Tok::Plus: return atom();
      default: fail(peek().kind == Tok::End ? "" : "unexpected '" + peek().text + "'");
    }
  }

  std::optional<Formula> try_atom() {
    try {
      return atom();
    } catch (const parse_error&) {
      return std::nullopt;
    }
  }

  Formula atom() {
    AffineExpr lhs = expr();
    if (peek().kind != Tok::Rel) {
      fail("expected a comparison operator");
    }
    Relation rel = next().rel;
    AffineExpr rhs = expr();
    AffineExpr diff = lhs - rhs;
    return Formula::atom(diff.without_constant(), rel, -diff.constant());
  }

  AffineExpr expr() {
    AffineExpr e = term();
    for (;;) {
      if (accept(Tok::Plus)) {
        e = e + term();
      } else if (accept(Tok::Minus)) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  AffineExpr term() {
    AffineExpr e = signed_factor();
    for (;;) {
      if (peek().kind == Tok::Star) {
        std::size_t pos = next().pos;
        AffineExpr rhs = signed_factor();
        if (!e.is_constant() && !rhs.is_constant()) {
          throw parse_error("product of two variables is not affine", pos);
        }
        e = e.is_constant() ? rhs * e.constant() : e * rhs.constant();
      } else if (peek().kind == Tok::Slash) {
        std::size_t pos = next().pos;
        AffineExpr rhs = signed_factor();
        if (!rhs.is_constant() || rhs.constant() == 0.0) {
          throw parse_error("division must be by a nonzero constant", pos);
        }
        e = e * (1.0 / rhs.constant());
      } else {
        return e;
      }
    }
  }

  AffineExpr signed_factor() {
    if (accept(Tok::Minus)) {
      return signed_factor() * -1.0;
    }
    if (accept(Tok::Plus)) {
      return signed_factor();
    }
    return factor();
  }

  AffineExpr factor() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: next(); return AffineExpr(t.number);
      case Tok::Ident: next(); return AffineExpr::variable(t.text);
      case Tok::LParen: {
        next();
        AffineExpr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      default: fail("expected a number, variable or '('");
    }
  }

  double bound(bool allow_inf) {
    bool negative = accept(Tok::Minus);
    const Token& t = peek();
    if (t.kind == Tok::Inf && allow_inf && !negative) {
      next();
      return infinity;
    }
    if (t.kind != Tok::Number) {
      fail("expected an interval bound");
    }
    next();
    return negative ? -t.number : t.number;
  }

  Interval interval() {
    std::size_t pos = peek().pos;
    expect(Tok::LBracket, "'[' after temporal operator");
    double lo = bound(false);
    expect(Tok::Comma, "','");
    double hi = bound(true);
    expect(Tok::RBracket, "']'");
    if (lo < 0.0) {
      throw parse_error("interval lower bound must be nonnegative", pos);
    }
    if (!(lo < hi)) {
      throw parse_error("singular interval: lower bound must be below upper bound", pos);
    }
    return Interval{lo, hi};
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

} // namespace

Formula parse_formula(std::string_view text) {
  Parser p(Lexer(text).run());
  return p.parse();
}

} // namespace conjsynth::stl
