#include "foliant/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "foliant/errors.hpp"

namespace foliant {

namespace {

constexpr int kMaxDepth = 256;

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind = Tok::End;
  double number = 0.0;
  bool is_int = false;
  long long int_value = 0;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() &&
           (src_[i_] == ' ' || src_[i_] == '\t' || src_[i_] == '\r' ||
            src_[i_] == '\n')) {
      ++i_;
    }
    cur_ = Token{};
    cur_.pos = i_;
    if (i_ >= src_.size()) {
      cur_.kind = Tok::End;
      return;
    }
    char c = src_[i_];
    switch (c) {
      case '+': cur_.kind = Tok::Plus; ++i_; return;
      case '-': cur_.kind = Tok::Minus; ++i_; return;
      case '*': cur_.kind = Tok::Star; ++i_; return;
      case '/': cur_.kind = Tok::Slash; ++i_; return;
      case '^': cur_.kind = Tok::Caret; ++i_; return;
      case '(': cur_.kind = Tok::LParen; ++i_; return;
      case ')': cur_.kind = Tok::RParen; ++i_; return;
      case ',': cur_.kind = Tok::Comma; ++i_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[i_])) ||
              src_[i_] == '_')) {
        ++i_;
      }
      cur_.kind = Tok::Ident;
      cur_.text = src_.substr(start, i_ - start);
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

  void lex_number() {
    std::size_t start = i_;
    bool is_int = true;
    while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
    if (i_ < src_.size() && src_[i_] == '.') {
      is_int = false;
      ++i_;
      if (i_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[i_]))) {
        throw ParseError("expected digits after decimal point", i_);
      }
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
    }
    if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
      is_int = false;
      ++i_;
      if (i_ < src_.size() && (src_[i_] == '+' || src_[i_] == '-')) ++i_;
      if (i_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[i_]))) {
        throw ParseError("expected digits in exponent", i_);
      }
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
    }
    std::string lexeme = src_.substr(start, i_ - start);
    cur_.kind = Tok::Number;
    cur_.number = std::strtod(lexeme.c_str(), nullptr);
    cur_.is_int = is_int;
    if (is_int) {
      errno = 0;
      char* end = nullptr;
      long long v = std::strtoll(lexeme.c_str(), &end, 10);
      if (errno != 0) {
        cur_.is_int = false;
      } else {
        cur_.int_value = v;
      }
    }
    if (!std::isfinite(cur_.number)) {
      throw ParseError("numeric literal out of range", start);
    }
  }

  const std::string& src_;
  std::size_t i_ = 0;
  Token cur_;
};

ExprPtr make_literal(double v, bool is_int) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Literal;
  e->value = v;
  e->int_literal = is_int;
  return e;
}

ExprPtr make_unary(ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Unary;
  e->op = '-';
  e->a = std::move(a);
  return e;
}

ExprPtr make_binary(char op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Binary;
  e->op = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

ExprPtr make_rational_pow(ExprPtr base, long long p, long long q, std::size_t pos) {
  if (q == 0) throw ParseError("rational power with zero root", pos);
  if (q < 0) {
    p = -p;
    q = -q;
  }
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::RationalPow;
  e->a = std::move(base);
  e->p = p;
  e->q = q;
  return e;
}

bool is_known_function(const std::string& name) {
  return name == "sin" || name == "cos" || name == "exp" || name == "abs" ||
         name == "sqrt" || name == "cbrt";
}

// Extract a signed integer literal from an AST that is Literal or
// Unary(Literal); used to fold X^(p/q) and pow(X,p,q).
bool signed_int_of(const Expr& e, long long* out) {
  if (e.kind == ExprKind::Literal && e.int_literal) {
    *out = static_cast<long long>(e.value);
    return true;
  }
  if (e.kind == ExprKind::Unary && e.a->kind == ExprKind::Literal &&
      e.a->int_literal) {
    *out = -static_cast<long long>(e.a->value);
    return true;
  }
  return false;
}

class Parser {
 public:
  Parser(const std::string& src, std::size_t dimension)
      : lex_(src), dim_(dimension) {}

  ExprPtr parse() {
    ExprPtr e = parse_expression(0, 0);
    if (lex_.peek().kind != Tok::End) {
      throw ParseError("unexpected trailing input", lex_.peek().pos);
    }
    return e;
  }

 private:
  // Binding powers: +,- (10) < *,/ (20) < unary minus (25) < ^ (30,
  // right-associative).
  static int left_bp(Tok t) {
    switch (t) {
      case Tok::Plus:
      case Tok::Minus: return 10;
      case Tok::Star:
      case Tok::Slash: return 20;
      case Tok::Caret: return 31;
      default: return -1;
    }
  }

  ExprPtr parse_expression(int min_bp, int depth) {
    if (depth > kMaxDepth) {
      throw ParseError("expression too deeply nested", lex_.peek().pos);
    }
    ExprPtr lhs = parse_prefix(depth);
    for (;;) {
      Tok t = lex_.peek().kind;
      int lbp = left_bp(t);
      if (lbp < min_bp) break;
      Token op = lex_.take();
      switch (t) {
        case Tok::Plus: lhs = make_binary('+', lhs, parse_expression(11, depth + 1)); break;
        case Tok::Minus: lhs = make_binary('-', lhs, parse_expression(11, depth + 1)); break;
        case Tok::Star: lhs = make_binary('*', lhs, parse_expression(21, depth + 1)); break;
        case Tok::Slash: lhs = make_binary('/', lhs, parse_expression(21, depth + 1)); break;
        case Tok::Caret: {
          ExprPtr rhs = parse_expression(30, depth + 1);
          // Fold the surface form X^(p/q) with integer p, q into a
          // rational power with odd-root semantics.
          long long p = 0, q = 0;
          if (rhs->kind == ExprKind::Binary && rhs->op == '/' &&
              signed_int_of(*rhs->a, &p) && signed_int_of(*rhs->b, &q)) {
            lhs = make_rational_pow(lhs, p, q, op.pos);
          } else {
            lhs = make_binary('^', lhs, rhs);
          }
          break;
        }
        default: throw ParseError("unexpected operator", op.pos);
      }
    }
    return lhs;
  }

  ExprPtr parse_prefix(int depth) {
    if (depth > kMaxDepth) {
      throw ParseError("expression too deeply nested", lex_.peek().pos);
    }
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Number:
        return make_literal(t.is_int ? double(t.int_value) : t.number,
                            t.is_int);
      case Tok::Minus:
        return make_unary(parse_expression(25, depth + 1));
      case Tok::LParen: {
        ExprPtr e = parse_expression(0, depth + 1);
        if (lex_.peek().kind != Tok::RParen) {
          throw ParseError("unbalanced parenthesis: expected ')'", lex_.peek().pos);
        }
        lex_.take();
        return e;
      }
      case Tok::Ident:
        return parse_ident(t, depth);
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected token", t.pos);
    }
  }

  ExprPtr parse_ident(const Token& t, int depth) {
    if (lex_.peek().kind == Tok::LParen) {
      if (t.text == "pow") return parse_pow_call(t, depth);
      if (!is_known_function(t.text)) {
        throw ParseError("unknown function '" + t.text + "'", t.pos);
      }
      lex_.take();  // (
      ExprPtr arg = parse_expression(0, depth + 1);
      if (lex_.peek().kind != Tok::RParen) {
        throw ParseError("unbalanced parenthesis in call to '" + t.text + "'",
                         lex_.peek().pos);
      }
      lex_.take();
      auto e = std::make_shared<Expr>();
      e->kind = ExprKind::Call;
      e->name = t.text;
      e->a = std::move(arg);
      return e;
    }
    return parse_variable(t);
  }

  ExprPtr parse_pow_call(const Token& t, int depth) {
    lex_.take();  // (
    ExprPtr base = parse_expression(0, depth + 1);
    long long p = 0, q = 0;
    p = expect_int_arg();
    q = expect_int_arg();
    if (lex_.peek().kind != Tok::RParen) {
      throw ParseError("unbalanced parenthesis in call to 'pow'", lex_.peek().pos);
    }
    lex_.take();
    return make_rational_pow(std::move(base), p, q, t.pos);
  }

  long long expect_int_arg() {
    if (lex_.peek().kind != Tok::Comma) {
      throw ParseError("pow(base, p, q) expects three arguments", lex_.peek().pos);
    }
    lex_.take();
    bool neg = false;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      neg = true;
    }
    Token n = lex_.take();
    if (n.kind != Tok::Number || !n.is_int) {
      throw ParseError("pow exponent must be an integer literal", n.pos);
    }
    return neg ? -n.int_value : n.int_value;
  }

  ExprPtr parse_variable(const Token& t) {
    std::size_t index = 0;
    bool ok = false;
    const std::string& name = t.text;
    auto parse_index = [&](std::size_t offset, std::size_t base,
                           std::size_t limit) {
      if (name.size() <= offset) return false;
      std::size_t idx = 0;
      for (std::size_t i = offset; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
        idx = idx * 10 + std::size_t(name[i] - '0');
        if (idx > 1000) break;
      }
      if (idx < 1 || idx > limit) {
        throw ParseError("variable index out of range for dimension " +
                             std::to_string(dim_) + ": '" + name + "'",
                         t.pos);
      }
      index = base + idx - 1;
      return true;
    };
    if (name == "s") {
      if (dim_ < 1) {
        throw ParseError("variable 's' needs dimension >= 1", t.pos);
      }
      index = 0;
      ok = true;
    } else if (name[0] == 'z') {
      ok = parse_index(1, 0, dim_);
    } else if (name[0] == 'y') {
      ok = parse_index(1, 1, dim_ == 0 ? 0 : dim_ - 1);
    }
    if (!ok) {
      throw ParseError("unknown identifier '" + name + "'", t.pos);
    }
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Variable;
    e->var = index;
    e->name = name;
    return e;
  }

  Lexer lex_;
  std::size_t dim_;
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw EvalError(std::string("non-finite result in ") + what);
  }
  return v;
}

long long iabs(long long v) { return v < 0 ? -v : v; }

double int_pow(double base, long long p) {
  if (p < 0) {
    if (base == 0.0) throw EvalError("zero raised to a negative power");
    return 1.0 / int_pow(base, -p);
  }
  double r = 1.0, b = base;
  long long e = p;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

double eval_rational_pow(double x, long long p, long long q) {
  // q > 0 by construction.
  if (q % 2 == 0) {
    if (x < 0.0) {
      throw EvalError("even root of a negative value");
    }
    if (x == 0.0) {
      if (p < 0) throw EvalError("zero raised to a negative power");
      return p == 0 ? 1.0 : 0.0;
    }
    return checked(std::pow(x, double(p) / double(q)), "rational power");
  }
  // Odd root: sign(x)^p * |x|^{p/q}.
  if (x == 0.0) {
    if (p < 0) throw EvalError("zero raised to a negative power");
    return p == 0 ? 1.0 : 0.0;
  }
  double sign = (x < 0.0 && (iabs(p) % 2 == 1)) ? -1.0 : 1.0;
  double mag;
  if (q == 3) {
    // cbrt keeps e.g. (-8)^(2/3) exactly 4.
    mag = int_pow(std::cbrt(std::abs(x)), p);
  } else {
    mag = std::pow(std::abs(x), double(p) / double(q));
  }
  return checked(sign * mag, "rational power");
}

}  // namespace

ExprPtr parse_expr(const std::string& text, std::size_t dimension) {
  if (text.empty()) throw ParseError("empty expression", 0);
  Parser p(text, dimension);
  return p.parse();
}

double eval_expr(const Expr& e, const EvalContext& ctx) {
  switch (e.kind) {
    case ExprKind::Literal:
      return e.value;
    case ExprKind::Variable:
      if (e.var >= ctx.values.dim() || ctx.values.dim() != ctx.dimension) {
        throw EvalError("evaluation context does not match expression dimension");
      }
      return ctx.values[e.var];
    case ExprKind::Unary:
      return -eval_expr(*e.a, ctx);
    case ExprKind::Binary: {
      double a = eval_expr(*e.a, ctx);
      double b = eval_expr(*e.b, ctx);
      switch (e.op) {
        case '+': return checked(a + b, "addition");
        case '-': return checked(a - b, "subtraction");
        case '*': return checked(a * b, "multiplication");
        case '/':
          if (b == 0.0) throw EvalError("division by zero");
          return checked(a / b, "division");
        case '^': {
          if (a > 0.0) return checked(std::pow(a, b), "power");
          if (a == 0.0) {
            if (b > 0.0) return 0.0;
            throw EvalError("zero base with nonpositive exponent");
          }
          // Negative base: only integral exponents have real values here;
          // fractional powers must be written as X^(p/q).
          if (std::nearbyint(b) == b && std::abs(b) < 9.007199254740992e15) {
            return checked(std::pow(a, b), "power");
          }
          throw EvalError(
              "negative base with non-integer exponent (use X^(p/q) for real "
              "odd-root powers)");
        }
        default:
          throw EvalError("corrupt expression node");
      }
    }
    case ExprKind::Call: {
      double a = eval_expr(*e.a, ctx);
      if (e.name == "sin") return checked(std::sin(a), "sin");
      if (e.name == "cos") return checked(std::cos(a), "cos");
      if (e.name == "exp") return checked(std::exp(a), "exp");
      if (e.name == "abs") return std::abs(a);
      if (e.name == "cbrt") return checked(std::cbrt(a), "cbrt");
      if (e.name == "sqrt") {
        if (a < 0.0) throw EvalError("sqrt of a negative value");
        return std::sqrt(a);
      }
      throw EvalError("corrupt expression node (unknown call)");
    }
    case ExprKind::RationalPow:
      return eval_rational_pow(eval_expr(*e.a, ctx), e.p, e.q);
  }
  throw EvalError("corrupt expression node");
}

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Binary:
      return (e.op == '+' || e.op == '-') ? 10 : (e.op == '^' ? 30 : 20);
    case ExprKind::Unary:
      return 25;
    case ExprKind::RationalPow:
      return 30;
    default:
      return 100;
  }
}

std::string format_literal(const Expr& e) {
  if (e.int_literal) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(e.value));
    return buf;
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", e.value);
  return buf;
}

void print(const Expr& e, std::string& out) {
  auto child = [&out](const Expr& c, bool parens) {
    if (parens) out += '(';
    print(c, out);
    if (parens) out += ')';
  };
  switch (e.kind) {
    case ExprKind::Literal:
      out += format_literal(e);
      return;
    case ExprKind::Variable:
      out += e.name;
      return;
    case ExprKind::Unary:
      out += '-';
      child(*e.a, precedence(*e.a) < 25);
      return;
    case ExprKind::Binary: {
      int p = precedence(e);
      bool right_assoc = e.op == '^';
      bool lp = right_assoc ? precedence(*e.a) <= p : precedence(*e.a) < p;
      bool rp;
      if (right_assoc) {
        rp = precedence(*e.b) < p;
      } else {
        rp = (e.op == '-' || e.op == '/') ? precedence(*e.b) <= p
                                          : precedence(*e.b) < p;
      }
      child(*e.a, lp);
      out += ' ';
      out += e.op;
      out += ' ';
      child(*e.b, rp);
      return;
    }
    case ExprKind::Call:
      out += e.name;
      out += '(';
      print(*e.a, out);
      out += ')';
      return;
    case ExprKind::RationalPow: {
      child(*e.a, precedence(*e.a) <= 30);
      out += "^(";
      out += std::to_string(e.p);
      out += '/';
      out += std::to_string(e.q);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool expr_uses_var(const Expr& e, std::size_t var) {
  switch (e.kind) {
    case ExprKind::Variable:
      return e.var == var;
    case ExprKind::Unary:
    case ExprKind::Call:
    case ExprKind::RationalPow:
      return expr_uses_var(*e.a, var);
    case ExprKind::Binary:
      return expr_uses_var(*e.a, var) || expr_uses_var(*e.b, var);
    default:
      return false;
  }
}

}  // namespace foliant
