#ifndef SPRAYLIE_PARSER_HPP
#define SPRAYLIE_PARSER_HPP

// Surface syntax for scalar expressions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ['-' | '+'] INT | '(' ['-' | '+'] INT ')'
//   primary := INT | 'x'N | 'y'N | 'exp' '(' expr ')' | '(' expr ')'

#include "spraylie/symexpr.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace spraylie {

struct SourcePos {
  int line = 1;
  int column = 1;
};

class ParseError : public Error {
public:
  ParseError(SourcePos pos, const std::string& msg)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + msg), pos_(pos)
  {
  }
  SourcePos position() const { return pos_; }

private:
  SourcePos pos_;
};

struct ParseOptions {
  /// Largest admissible variable index; 0 accepts any positive index.
  int dim = 0;
};

struct Ast {
  enum class Kind { constant, variable, sum, product, negation, power, quotient, exp };

  Kind kind = Kind::constant;
  Rational value;
  Variable var;
  int exponent = 0;
  std::vector<Ast> children;
  SourcePos pos;
};

namespace detail {

class Parser {
public:
  Parser(std::string_view src, ParseOptions opts) : src_(src), opts_(opts) { advance(); }

  Ast parse_all()
  {
    if (tok_.kind == Tok::end) fail(tok_.pos, "empty expression");
    Ast e = expr();
    if (tok_.kind != Tok::end) fail(tok_.pos, "unexpected '" + tok_.text + "'");
    return e;
  }

private:
  enum class Tok { integer, ident, plus, minus, star, slash, caret, lparen, rparen, end };
  struct Token {
    Tok kind = Tok::end;
    std::string text;
    SourcePos pos;
  };

  [[noreturn]] static void fail(SourcePos p, const std::string& msg) { throw ParseError(p, msg); }

  char peek() const { return at_ < src_.size() ? src_[at_] : '\0'; }

  void bump()
  {
    if (src_[at_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++at_;
  }

  void advance()
  {
    while (at_ < src_.size() && std::isspace(static_cast<unsigned char>(peek()))) bump();
    tok_ = Token{Tok::end, "", pos_};
    if (at_ >= src_.size()) return;
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        tok_.text += peek();
        bump();
      }
      if (peek() == '.' || peek() == 'e' || peek() == 'E') fail(pos_, "floating-point literals are not supported");
      tok_.kind = Tok::integer;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        tok_.text += peek();
        bump();
      }
      tok_.kind = Tok::ident;
      return;
    }
    tok_.text = std::string(1, c);
    switch (c) {
    case '+': tok_.kind = Tok::plus; break;
    case '-': tok_.kind = Tok::minus; break;
    case '*': tok_.kind = Tok::star; break;
    case '/': tok_.kind = Tok::slash; break;
    case '^': tok_.kind = Tok::caret; break;
    case '(': tok_.kind = Tok::lparen; break;
    case ')': tok_.kind = Tok::rparen; break;
    default: fail(pos_, std::string("unexpected character '") + c + "'");
    }
    bump();
  }

  void expect(Tok k, const char* what)
  {
    if (tok_.kind != k) fail(tok_.pos, std::string("expected ") + what);
    advance();
  }

  static Ast node(Ast::Kind k, SourcePos p, std::vector<Ast> children = {})
  {
    Ast a;
    a.kind = k;
    a.pos = p;
    a.children = std::move(children);
    return a;
  }

  Ast expr()
  {
    Ast lhs = term();
    while (tok_.kind == Tok::plus || tok_.kind == Tok::minus) {
      const bool minus = tok_.kind == Tok::minus;
      const SourcePos p = tok_.pos;
      advance();
      Ast rhs = term();
      if (minus) rhs = node(Ast::Kind::negation, p, {std::move(rhs)});
      lhs = node(Ast::Kind::sum, p, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Ast term()
  {
    Ast lhs = unary();
    while (tok_.kind == Tok::star || tok_.kind == Tok::slash) {
      const auto k = tok_.kind == Tok::star ? Ast::Kind::product : Ast::Kind::quotient;
      const SourcePos p = tok_.pos;
      advance();
      lhs = node(k, p, {std::move(lhs), unary()});
    }
    return lhs;
  }

  Ast unary()
  {
    if (tok_.kind == Tok::minus) {
      const SourcePos p = tok_.pos;
      advance();
      return node(Ast::Kind::negation, p, {unary()});
    }
    if (tok_.kind == Tok::plus) {
      advance();
      return unary();
    }
    return power();
  }

  Ast power()
  {
    Ast base = primary();
    if (tok_.kind != Tok::caret) return base;
    const SourcePos p = tok_.pos;
    advance();
    Ast pw = node(Ast::Kind::power, p, {std::move(base)});
    pw.exponent = exponent();
    if (tok_.kind == Tok::caret) fail(tok_.pos, "chained '^' is ambiguous; add parentheses");
    return pw;
  }

  int exponent()
  {
    const bool paren = tok_.kind == Tok::lparen;
    if (paren) advance();
    int sign = 1;
    if (tok_.kind == Tok::minus || tok_.kind == Tok::plus) {
      if (tok_.kind == Tok::minus) sign = -1;
      advance();
    }
    if (tok_.kind != Tok::integer) fail(tok_.pos, "non-integer exponent");
    if (tok_.text.size() > 6) fail(tok_.pos, "exponent too large");
    const int e = sign * std::stoi(tok_.text);
    advance();
    if (paren) {
      if (tok_.kind != Tok::rparen) fail(tok_.pos, "non-integer exponent");
      advance();
    }
    return e;
  }

  Ast primary()
  {
    const Token t = tok_;
    switch (t.kind) {
    case Tok::integer: {
      advance();
      Ast a = node(Ast::Kind::constant, t.pos);
      a.value = Rational(Integer(t.text));
      return a;
    }
    case Tok::ident: {
      advance();
      if (t.text == "exp") {
        expect(Tok::lparen, "'(' after exp");
        Ast arg = expr();
        expect(Tok::rparen, "')'");
        return node(Ast::Kind::exp, t.pos, {std::move(arg)});
      }
      Ast a = node(Ast::Kind::variable, t.pos);
      a.var = variable(t);
      return a;
    }
    case Tok::lparen: {
      advance();
      Ast inner = expr();
      expect(Tok::rparen, "')'");
      return inner;
    }
    case Tok::end: fail(t.pos, "unexpected end of input");
    default: fail(t.pos, "unexpected '" + t.text + "'");
    }
  }

  Variable variable(const Token& t) const
  {
    const std::string& s = t.text;
    const bool shape = s.size() >= 2 && (s[0] == 'x' || s[0] == 'y') && s[1] != '0' && s.size() <= 6 &&
                       s.find_first_not_of("0123456789", 1) == std::string::npos;
    if (!shape) fail(t.pos, "unknown identifier '" + s + "'");
    const int idx = std::stoi(s.substr(1));
    if (opts_.dim > 0 && idx > opts_.dim) fail(t.pos, "unknown identifier '" + s + "' (dimension is " + std::to_string(opts_.dim) + ")");
    return {s[0] == 'x' ? VarKind::x : VarKind::y, idx};
  }

  std::string_view src_;
  ParseOptions opts_;
  std::size_t at_ = 0;
  SourcePos pos_;
  Token tok_;
};

inline std::string where(const Ast& a) { return std::to_string(a.pos.line) + ":" + std::to_string(a.pos.column) + ": "; }

} // namespace detail

inline Ast parse(std::string_view source, ParseOptions opts = {}) { return detail::Parser(source, opts).parse_all(); }

/// Reduces an AST to its normal form. Divisors must be units c*exp(l) and exp
/// arguments must be linear forms in the x variables without constant part.
inline Expr canonicalize(const Ast& a)
{
  using K = Ast::Kind;
  switch (a.kind) {
  case K::constant: return Expr(a.value);
  case K::variable: return Expr::variable(a.var);
  case K::sum: return canonicalize(a.children[0]) + canonicalize(a.children[1]);
  case K::product: return canonicalize(a.children[0]) * canonicalize(a.children[1]);
  case K::negation: return -canonicalize(a.children[0]);
  case K::power: {
    Expr base = canonicalize(a.children[0]);
    if (a.exponent < 0 && !base.is_unit()) throw DomainError(detail::where(a) + "negative power of non-unit " + base.str());
    return base.pow(a.exponent);
  }
  case K::quotient: {
    Expr den = canonicalize(a.children[1]);
    if (!den.is_unit()) throw DomainError(detail::where(a) + "division by non-unit " + den.str());
    return canonicalize(a.children[0]) * den.unit_inverse();
  }
  case K::exp: {
    Expr arg = canonicalize(a.children[0]);
    LinForm l;
    for (const auto& [k, c] : arg.terms()) {
      const auto& m = k.monomial;
      const bool linear_x = k.exponent.empty() && m.y_exponents().empty() && m.x_exponents().size() == 1 &&
                            m.x_exponents().begin()->second == 1;
      if (!linear_x) {
        if (k == TermKey{}) throw DomainError(detail::where(a) + "exp argument has a constant part: " + arg.str());
        throw DomainError(detail::where(a) + "exp argument is not a linear form in x: " + arg.str());
      }
      l.add(m.x_exponents().begin()->first, c);
    }
    return Expr::exponential(l);
  }
  }
  throw InvariantError("unknown AST node");
}

inline Expr parse_expr(std::string_view source, ParseOptions opts = {}) { return canonicalize(parse(source, opts)); }

/// Fully parenthesised rendering of the tree.
inline std::string to_string(const Ast& a)
{
  using K = Ast::Kind;
  switch (a.kind) {
  case K::constant: return to_string(a.value);
  case K::variable: return a.var.name();
  case K::sum: return "(" + to_string(a.children[0]) + " + " + to_string(a.children[1]) + ")";
  case K::product: return "(" + to_string(a.children[0]) + " * " + to_string(a.children[1]) + ")";
  case K::quotient: return "(" + to_string(a.children[0]) + " / " + to_string(a.children[1]) + ")";
  case K::negation: return "(-" + to_string(a.children[0]) + ")";
  case K::power: return "(" + to_string(a.children[0]) + "^" + std::to_string(a.exponent) + ")";
  case K::exp: return "exp(" + to_string(a.children[0]) + ")";
  }
  return "?";
}

} // namespace spraylie

#endif // SPRAYLIE_PARSER_HPP
