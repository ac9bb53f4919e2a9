#pragma once

// Single-variable expression trees: parse / evaluate / differentiate / print.
//
// Grammar (infix, 'x' is the variable):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?            -- '^' right-associative
//   unary  := '-' unary | atom
//   atom   := NUMBER | 'x' | FUNC '(' expr ')' | '(' expr ')'
//   FUNC   := sin | cos | tan | exp | ln
// 'pi' and 'e' lex as number literals.  Trees are immutable; differentiate
// returns a new tree built with conservative local simplification (constant
// folding and neutral-element removal, no trig rewriting).

#include <charconv>
#include <cmath>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bigeo/errors.hpp"

namespace bigeo {

enum class ExprKind {
  number,
  variable,
  add,
  sub,
  mul,
  div,
  pow,
  neg,
  sin,
  cos,
  tan,
  exp,
  ln,
};

class Expr {
 public:
  static Expr number(double v) { return make(ExprKind::number, v, nullptr, nullptr); }
  static Expr variable() { return make(ExprKind::variable, 0.0, nullptr, nullptr); }
  static Expr add(Expr a, Expr b) { return make(ExprKind::add, 0.0, a.n_, b.n_); }
  static Expr sub(Expr a, Expr b) { return make(ExprKind::sub, 0.0, a.n_, b.n_); }
  static Expr mul(Expr a, Expr b) { return make(ExprKind::mul, 0.0, a.n_, b.n_); }
  static Expr div(Expr a, Expr b) { return make(ExprKind::div, 0.0, a.n_, b.n_); }
  static Expr pow(Expr a, Expr b) { return make(ExprKind::pow, 0.0, a.n_, b.n_); }
  static Expr neg(Expr a) { return make(ExprKind::neg, 0.0, a.n_, nullptr); }
  static Expr sin(Expr a) { return make(ExprKind::sin, 0.0, a.n_, nullptr); }
  static Expr cos(Expr a) { return make(ExprKind::cos, 0.0, a.n_, nullptr); }
  static Expr tan(Expr a) { return make(ExprKind::tan, 0.0, a.n_, nullptr); }
  static Expr exp(Expr a) { return make(ExprKind::exp, 0.0, a.n_, nullptr); }
  static Expr ln(Expr a) { return make(ExprKind::ln, 0.0, a.n_, nullptr); }

  ExprKind kind() const { return n_->kind; }
  double number_value() const { return n_->value; }
  Expr left() const { return Expr(n_->a); }
  Expr right() const { return Expr(n_->b); }
  Expr operand() const { return Expr(n_->a); }

  bool same(const Expr& o) const { return same_nodes(n_.get(), o.n_.get()); }

 private:
  struct Node {
    ExprKind kind;
    double value;
    std::shared_ptr<const Node> a, b;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit Expr(NodePtr n) : n_(std::move(n)) {}
  static Expr make(ExprKind k, double v, NodePtr a, NodePtr b) {
    return Expr(std::make_shared<const Node>(Node{k, v, std::move(a), std::move(b)}));
  }
  static bool same_nodes(const Node* x, const Node* y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind) return false;
    if (x->kind == ExprKind::number && x->value != y->value) return false;
    return same_nodes(x->a.get(), y->a.get()) && same_nodes(x->b.get(), y->b.get());
  }

  NodePtr n_;
};

inline bool has_variable(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::number:
      return false;
    case ExprKind::variable:
      return true;
    case ExprKind::add:
    case ExprKind::sub:
    case ExprKind::mul:
    case ExprKind::div:
    case ExprKind::pow:
      return has_variable(e.left()) || has_variable(e.right());
    default:
      return has_variable(e.operand());
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

enum class TokKind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  TokKind kind;
  double num = 0.0;
  std::string id;
  std::size_t col = 0;  // 1-based
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  while (i < n) {
    char c = src[i];
    std::size_t col = i + 1;
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c >= '0' && c <= '9') {
      std::size_t j = i;
      while (j < n && src[j] >= '0' && src[j] <= '9') ++j;
      if (j < n && src[j] == '.') {
        ++j;
        while (j < n && src[j] >= '0' && src[j] <= '9') ++j;
      }
      if (j < n && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < n && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < n && src[k] >= '0' && src[k] <= '9') {
          while (k < n && src[k] >= '0' && src[k] <= '9') ++k;
          j = k;  // exponent only counts when digits follow
        }
      }
      double v = 0.0;
      auto res = std::from_chars(src.data() + i, src.data() + j, v);
      if (res.ec != std::errc{}) throw parse_error(col, "bad number literal");
      out.push_back({TokKind::number, v, {}, col});
      i = j;
      continue;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::size_t j = i;
      while (j < n && ((src[j] >= 'a' && src[j] <= 'z') || (src[j] >= 'A' && src[j] <= 'Z') ||
                       (src[j] >= '0' && src[j] <= '9') || src[j] == '_'))
        ++j;
      std::string word(src.substr(i, j - i));
      if (word == "pi") {
        out.push_back({TokKind::number, 3.14159265358979323846, {}, col});
      } else if (word == "e") {
        out.push_back({TokKind::number, 2.71828182845904523536, {}, col});
      } else if (word == "x" || word == "sin" || word == "cos" || word == "tan" ||
                 word == "exp" || word == "ln") {
        out.push_back({TokKind::ident, 0.0, word, col});
      } else {
        throw parse_error(col, "unknown identifier '" + word + "'");
      }
      i = j;
      continue;
    }
    TokKind k;
    switch (c) {
      case '+': k = TokKind::plus; break;
      case '-': k = TokKind::minus; break;
      case '*': k = TokKind::star; break;
      case '/': k = TokKind::slash; break;
      case '^': k = TokKind::caret; break;
      case '(': k = TokKind::lparen; break;
      case ')': k = TokKind::rparen; break;
      default:
        throw parse_error(col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, 0.0, {}, col});
    ++i;
  }
  out.push_back({TokKind::end, 0.0, {}, n + 1});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Expr run() {
    Expr e = expr();
    if (peek().kind != TokKind::end) {
      throw parse_error(peek().col, "unexpected trailing input");
    }
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }

  static bool starts_atom(const Token& t) {
    return t.kind == TokKind::number || t.kind == TokKind::ident ||
           t.kind == TokKind::lparen || t.kind == TokKind::minus;
  }

  // A binary/unary operator whose operand is missing reports at the
  // operator's own column.
  void require_operand(const Token& op, const char* what) const {
    if (!starts_atom(peek())) {
      throw parse_error(op.col, std::string("expected operand after '") + what + "'");
    }
  }

  Expr expr() {
    Expr e = term();
    while (peek().kind == TokKind::plus || peek().kind == TokKind::minus) {
      const Token op = advance();
      require_operand(op, op.kind == TokKind::plus ? "+" : "-");
      Expr rhs = term();
      e = op.kind == TokKind::plus ? Expr::add(e, rhs) : Expr::sub(e, rhs);
    }
    return e;
  }

  Expr term() {
    Expr e = factor();
    while (peek().kind == TokKind::star || peek().kind == TokKind::slash) {
      const Token op = advance();
      require_operand(op, op.kind == TokKind::star ? "*" : "/");
      Expr rhs = factor();
      e = op.kind == TokKind::star ? Expr::mul(e, rhs) : Expr::div(e, rhs);
    }
    return e;
  }

  Expr factor() {
    Expr base = unary();
    if (peek().kind == TokKind::caret) {
      const Token op = advance();
      require_operand(op, "^");
      return Expr::pow(base, factor());
    }
    return base;
  }

  Expr unary() {
    if (peek().kind == TokKind::minus) {
      const Token op = advance();
      require_operand(op, "-");
      return Expr::neg(unary());
    }
    return atom();
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::number:
        advance();
        return Expr::number(t.num);
      case TokKind::ident: {
        const Token name = advance();
        if (name.id == "x") return Expr::variable();
        if (peek().kind != TokKind::lparen) {
          throw parse_error(peek().col, "expected '(' after '" + name.id + "'");
        }
        advance();
        Expr inner = expr();
        if (peek().kind != TokKind::rparen) {
          throw parse_error(peek().col, "expected ')'");
        }
        advance();
        if (name.id == "sin") return Expr::sin(inner);
        if (name.id == "cos") return Expr::cos(inner);
        if (name.id == "tan") return Expr::tan(inner);
        if (name.id == "exp") return Expr::exp(inner);
        return Expr::ln(inner);
      }
      case TokKind::lparen: {
        advance();
        Expr inner = expr();
        if (peek().kind != TokKind::rparen) {
          throw parse_error(peek().col, "expected ')'");
        }
        advance();
        return inner;
      }
      case TokKind::end:
        throw parse_error(t.col, "unexpected end of input");
      default:
        throw parse_error(t.col, "unexpected token");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view src) { return detail::Parser(src).run(); }

// ---------------------------------------------------------------------------
// Evaluation (IEEE doubles; only the listed domain faults throw)

inline double evaluate(const Expr& e, double x) {
  switch (e.kind()) {
    case ExprKind::number:
      return e.number_value();
    case ExprKind::variable:
      return x;
    case ExprKind::add:
      return evaluate(e.left(), x) + evaluate(e.right(), x);
    case ExprKind::sub:
      return evaluate(e.left(), x) - evaluate(e.right(), x);
    case ExprKind::mul:
      return evaluate(e.left(), x) * evaluate(e.right(), x);
    case ExprKind::div: {
      double a = evaluate(e.left(), x), b = evaluate(e.right(), x);
      if (b == 0.0) throw domain_error("evaluate: division by zero");
      return a / b;
    }
    case ExprKind::pow: {
      double b = evaluate(e.left(), x), p = evaluate(e.right(), x);
      if (b == 0.0 && p < 0.0) throw domain_error("evaluate: zero base with negative exponent");
      double r = std::pow(b, p);
      if (std::isnan(r) && !std::isnan(b) && !std::isnan(p)) {
        throw domain_error("evaluate: negative base with non-integer exponent");
      }
      return r;
    }
    case ExprKind::neg:
      return -evaluate(e.operand(), x);
    case ExprKind::sin:
      return std::sin(evaluate(e.operand(), x));
    case ExprKind::cos:
      return std::cos(evaluate(e.operand(), x));
    case ExprKind::tan: {
      double v = evaluate(e.operand(), x);
      if (std::fabs(std::remainder(v - 1.57079632679489661923, 3.14159265358979323846)) < 1e-12) {
        throw domain_error("evaluate: tangent pole");
      }
      return std::tan(v);
    }
    case ExprKind::exp:
      return std::exp(evaluate(e.operand(), x));
    case ExprKind::ln: {
      double v = evaluate(e.operand(), x);
      if (!(v > 0.0)) throw domain_error("evaluate: log of a non-positive value");
      return std::log(v);
    }
  }
  throw std::logic_error("evaluate: bad node");
}

// ---------------------------------------------------------------------------
// Simplifying constructors (local and deterministic)

namespace detail {

inline bool is_num(const Expr& e, double v) {
  return e.kind() == ExprKind::number && e.number_value() == v;
}
inline bool is_const(const Expr& e) { return e.kind() == ExprKind::number; }

inline Expr fold_or(Expr raw, double v) {
  return std::isfinite(v) ? Expr::number(v) : raw;
}

inline Expr s_add(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) {
    return fold_or(Expr::add(a, b), a.number_value() + b.number_value());
  }
  if (is_num(a, 0.0)) return b;
  if (is_num(b, 0.0)) return a;
  return Expr::add(a, b);
}

inline Expr s_neg(Expr a) {
  if (is_const(a)) return Expr::number(-a.number_value());
  if (a.kind() == ExprKind::neg) return a.operand();
  return Expr::neg(a);
}

inline Expr s_sub(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) {
    return fold_or(Expr::sub(a, b), a.number_value() - b.number_value());
  }
  if (is_num(b, 0.0)) return a;
  if (is_num(a, 0.0)) return s_neg(b);
  if (a.same(b)) return Expr::number(0.0);
  return Expr::sub(a, b);
}

inline Expr s_mul(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) {
    return fold_or(Expr::mul(a, b), a.number_value() * b.number_value());
  }
  if (is_num(a, 0.0) || is_num(b, 0.0)) return Expr::number(0.0);
  if (is_num(a, 1.0)) return b;
  if (is_num(b, 1.0)) return a;
  // (p/q)*q -> p, like the u/u rule below; keeps derivative towers compact.
  if (a.kind() == ExprKind::div && a.right().same(b)) return a.left();
  if (b.kind() == ExprKind::div && b.right().same(a)) return b.left();
  return Expr::mul(a, b);
}

inline Expr s_div(Expr a, Expr b) {
  if (is_const(a) && is_const(b) && b.number_value() != 0.0) {
    return fold_or(Expr::div(a, b), a.number_value() / b.number_value());
  }
  if (is_num(a, 0.0) && !is_num(b, 0.0)) return Expr::number(0.0);
  if (is_num(b, 1.0)) return a;
  if (a.same(b)) return Expr::number(1.0);
  // Cancel a factor shared between a product and the divisor.
  if (a.kind() == ExprKind::mul) {
    if (a.left().same(b)) return a.right();
    if (a.right().same(b)) return a.left();
  }
  if (b.kind() == ExprKind::mul) {
    if (b.left().same(a)) return s_div(Expr::number(1.0), b.right());
    if (b.right().same(a)) return s_div(Expr::number(1.0), b.left());
  }
  return Expr::div(a, b);
}

inline Expr s_pow(Expr a, Expr b) {
  if (is_num(b, 1.0)) return a;
  if (is_num(b, 0.0)) return Expr::number(1.0);
  if (is_const(a) && is_const(b)) {
    return fold_or(Expr::pow(a, b), std::pow(a.number_value(), b.number_value()));
  }
  return Expr::pow(a, b);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Differentiation

inline Expr differentiate(const Expr& e) {
  using namespace detail;
  if (!has_variable(e)) return Expr::number(0.0);
  switch (e.kind()) {
    case ExprKind::variable:
      return Expr::number(1.0);
    case ExprKind::add:
      return s_add(differentiate(e.left()), differentiate(e.right()));
    case ExprKind::sub:
      return s_sub(differentiate(e.left()), differentiate(e.right()));
    case ExprKind::neg:
      return s_neg(differentiate(e.operand()));
    case ExprKind::mul: {
      Expr a = e.left(), b = e.right();
      return s_add(s_mul(differentiate(a), b), s_mul(a, differentiate(b)));
    }
    case ExprKind::div: {
      Expr a = e.left(), b = e.right();
      return s_div(s_sub(s_mul(differentiate(a), b), s_mul(a, differentiate(b))),
                   s_pow(b, Expr::number(2.0)));
    }
    case ExprKind::sin:
      return s_mul(Expr::cos(e.operand()), differentiate(e.operand()));
    case ExprKind::cos:
      return s_neg(s_mul(Expr::sin(e.operand()), differentiate(e.operand())));
    case ExprKind::tan:
      return s_div(differentiate(e.operand()),
                   s_pow(Expr::cos(e.operand()), Expr::number(2.0)));
    case ExprKind::exp:
      return s_mul(Expr::exp(e.operand()), differentiate(e.operand()));
    case ExprKind::ln:
      return s_div(differentiate(e.operand()), e.operand());
    case ExprKind::pow: {
      Expr u = e.left(), v = e.right();
      if (!has_variable(v)) {
        double c = evaluate(v, 0.0);
        return s_mul(s_mul(Expr::number(c), s_pow(u, Expr::number(c - 1.0))),
                     differentiate(u));
      }
      if (!has_variable(u)) {
        double base = evaluate(u, 0.0);
        if (!(base > 0.0)) {
          throw domain_error("differentiate: variable power over a non-positive constant base");
        }
      }
      // u^v -> exp(v*ln(u)); requires u > 0 wherever this is evaluated.
      Expr du = differentiate(u), dv = differentiate(v);
      return s_mul(Expr::exp(s_mul(v, Expr::ln(u))),
                   s_add(s_mul(dv, Expr::ln(u)), s_mul(v, s_div(du, u))));
    }
    default:
      throw std::logic_error("differentiate: bad node");
  }
}

// ---------------------------------------------------------------------------
// Printing: canonical infix that reparses to the same shape

namespace detail {

// Effective precedence for parenthesization; negative literals act like a
// unary minus so that printed forms re-lex unambiguously.
inline int eff_prec(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::add:
    case ExprKind::sub:
      return 1;
    case ExprKind::mul:
    case ExprKind::div:
      return 2;
    case ExprKind::neg:
      return 3;
    case ExprKind::pow:
      return 4;
    case ExprKind::number:
      return e.number_value() < 0.0 ? 3 : 5;
    default:
      return 5;
  }
}

inline std::string number_str(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline void print_rec(const Expr& e, std::string& out);

inline void print_child(const Expr& c, bool parens, std::string& out) {
  if (parens) out += '(';
  print_rec(c, out);
  if (parens) out += ')';
}

inline void print_rec(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case ExprKind::number:
      out += number_str(e.number_value());
      return;
    case ExprKind::variable:
      out += 'x';
      return;
    case ExprKind::add:
    case ExprKind::sub: {
      print_child(e.left(), eff_prec(e.left()) < 1, out);
      out += e.kind() == ExprKind::add ? '+' : '-';
      int rp = eff_prec(e.right());
      print_child(e.right(), rp <= 1 || rp == 3, out);
      return;
    }
    case ExprKind::mul:
    case ExprKind::div: {
      print_child(e.left(), eff_prec(e.left()) < 2, out);
      out += e.kind() == ExprKind::mul ? '*' : '/';
      int rp = eff_prec(e.right());
      print_child(e.right(), rp <= 2 || rp == 3, out);
      return;
    }
    case ExprKind::neg: {
      out += '-';
      int p = eff_prec(e.operand());
      print_child(e.operand(), p < 3 || p == 4, out);
      return;
    }
    case ExprKind::pow: {
      print_child(e.left(), eff_prec(e.left()) < 5, out);
      out += '^';
      print_child(e.right(), eff_prec(e.right()) < 4, out);
      return;
    }
    case ExprKind::sin:
    case ExprKind::cos:
    case ExprKind::tan:
    case ExprKind::exp:
    case ExprKind::ln: {
      switch (e.kind()) {
        case ExprKind::sin: out += "sin("; break;
        case ExprKind::cos: out += "cos("; break;
        case ExprKind::tan: out += "tan("; break;
        case ExprKind::exp: out += "exp("; break;
        default: out += "ln("; break;
      }
      print_rec(e.operand(), out);
      out += ')';
      return;
    }
  }
}

}  // namespace detail

inline std::string print(const Expr& e) {
  std::string out;
  detail::print_rec(e, out);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << print(e); }

}  // namespace bigeo
