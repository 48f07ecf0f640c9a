#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "foliant/linalg.hpp"

// Arithmetic expression language for scalar components of vector fields and
// foliation maps.  Variables are z1..z{dim}, with aliases s = z1 and
// yK = z{K+1} for use in (s,y) foliation coordinates.  Rational powers
// written X^(p/q) use real odd-root semantics, so e.g. X^(2/3) is defined
// and nonnegative for every real X.

namespace foliant {

enum class ExprKind { Literal, Variable, Unary, Binary, Call, RationalPow };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  // Literal
  double value = 0.0;
  bool int_literal = false;
  // Variable (0-based slot) / Call (function name); name as written
  std::size_t var = 0;
  std::string name;
  // Unary ('-') and Binary ('+','-','*','/','^')
  char op = 0;
  ExprPtr a, b;  // operands; Unary/Call use a; RationalPow base is a
  // RationalPow exponent p/q, q > 0
  long long p = 0, q = 1;
};

struct EvalContext {
  std::size_t dimension = 0;
  Vector values;
};

// Throws ParseError with position info on any malformed input.
ExprPtr parse_expr(const std::string& text, std::size_t dimension);

// Throws EvalError on domain failures (division by zero, even root of a
// negative, non-finite results).
double eval_expr(const Expr& e, const EvalContext& ctx);

inline double eval_expr(const ExprPtr& e, const EvalContext& ctx) {
  return eval_expr(*e, ctx);
}

std::string to_string(const Expr& e);
inline std::string to_string(const ExprPtr& e) { return to_string(*e); }

// True when the AST reads variable slot `var` anywhere.
bool expr_uses_var(const Expr& e, std::size_t var);

}  // namespace foliant
