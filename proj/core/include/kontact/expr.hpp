#ifndef KONTACT_EXPR_HPP
#define KONTACT_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>

#include "kontact/jet.hpp"

namespace kontact {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree over variables x1, x2, ... (stored 0-based).
///
/// Grammar (whitespace-insensitive):
///   expr     := term (('+'|'-') term)*
///   term     := factor (('*'|'/') factor)*
///   factor   := base ('^' exponent)?
///   base     := number | 'x'digits | '(' expr ')' | func '(' expr ')' | '-' base
///   func     := 'sin' | 'cos' | 'exp' | 'sqrt'
///   exponent := '-'? number
///
/// Note the unary minus lives in `base`, so "-x1^2" parses as (-x1)^2.
struct Expr {
  enum class Kind { Num, Var, Add, Sub, Mul, Div, Neg, Pow, Fun };
  enum class Fn { Sin, Cos, Exp, Sqrt };

  Kind kind;
  double num = 0.0;       // Num
  int var = 0;            // Var, 0-based
  ExprPtr a, b;           // children (a for unary, a/b for binary)
  double exp_value = 0.0; // Pow exponent as written
  bool exp_integer = false;
  long long exp_int = 0;
  Fn fn = Fn::Sin;             // Fun
  std::size_t src_offset = 0;  // byte offset in the source string (0 if built)
};

/// Parse an expression; throws ParseError with a byte offset on bad input.
ExprPtr parse_expression(std::string_view src);

/// Canonical text form; parse_expression(to_string(e)) reproduces e
/// structurally for every parseable tree.
std::string to_string(const ExprPtr& e);

/// parse(print(e)): canonicalizes programmatically built trees (e.g. folds
/// negative literals into Neg nodes) for structural comparison.
ExprPtr normalize(const ExprPtr& e);

bool structurally_equal(const ExprPtr& x, const ExprPtr& y);

/// Smallest chart dimension this expression fits in (max variable index + 1).
int min_dimension(const ExprPtr& e);

/// Evaluate with derivatives up to `order` (0, 1 or 2) at point x.
/// Throws DomainError (with the offending subexpression) on division by
/// zero, sqrt/real-power domain violations, or non-finite results; throws
/// Error if a variable index is outside the point's dimension.
Jet eval_jet(const ExprPtr& e, const Vec& x, int order);

// AST builders for programmatic construction (deformations, tests).
ExprPtr expr_num(double v);
ExprPtr expr_var(int index_zero_based);
ExprPtr expr_add(ExprPtr a, ExprPtr b);
ExprPtr expr_sub(ExprPtr a, ExprPtr b);
ExprPtr expr_mul(ExprPtr a, ExprPtr b);
ExprPtr expr_div(ExprPtr a, ExprPtr b);
ExprPtr expr_neg(ExprPtr a);
ExprPtr expr_pow_int(ExprPtr a, long long n);
ExprPtr expr_pow_real(ExprPtr a, double r);
ExprPtr expr_fun(Expr::Fn fn, ExprPtr a);

} // namespace kontact

#endif
