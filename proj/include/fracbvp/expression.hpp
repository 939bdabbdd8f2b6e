#pragma once

#include <memory>
#include <span>
#include <string>

#include "fracbvp/errors.hpp"

namespace fracbvp {

// One scalar expression over t, x1..xm, u1..ur with +, -, *, /, ^, unary
// minus, the functions sin cos tan exp ln abs tanh sqrt, and the constants pi
// and e. Parsed once into an immutable tree; evaluation is pure and
// deterministic. Derivatives come from a forward dual-number pass and are the
// exact derivatives of the tree, not finite differences.
//
// Grammar (lowest to highest binding):
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' atom)*
//   atom  := number | name | name '(' expr ')' | '(' expr ')'
// All binary operators associate left to right, so a^b^c = (a^b)^c; a
// negative exponent needs parentheses, as in t^(-1/3).
//
// abs carries derivative sign(x) with sign(0) := 0 (measure-zero kink).
// A non-integer exponent requires a positive base at evaluation time;
// integer exponents work for any base.
class Expression {
public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  // m and r bound the legal variable indices; x4 with m = 3 is rejected at
  // parse time. Throws ParseError with the byte offset of the offending
  // token.
  static Expression parse(const std::string& text, int m, int r);

  double eval(double t, std::span<const double> x, std::span<const double> u) const;

  // d(expr)/d(x_seed) when seed in [0, m), d(expr)/d(u_{seed-m}) when seed in
  // [m, m+r). `value` (if non-null) receives the plain value of the same
  // pass.
  double eval_derivative(double t, std::span<const double> x,
                         std::span<const double> u, int seed,
                         double* value = nullptr) const;

  // Canonical fully parenthesized form; parsing it back yields a structurally
  // identical tree (literals printed with round-trip precision).
  std::string to_string() const;

  bool same_tree(const Expression& other) const;

  int declared_m() const noexcept { return m_; }
  int declared_r() const noexcept { return r_; }
  // Highest variable indices actually referenced (0 when absent).
  int max_x_index() const noexcept { return max_x_; }
  int max_u_index() const noexcept { return max_u_; }
  bool uses_t() const noexcept { return uses_t_; }

  // base + eps * direction, as a new tree; used for parameter-shift studies.
  static Expression shifted_by(const Expression& base, const Expression& direction,
                               double eps);

private:
  Expression(NodePtr root, int m, int r);

  NodePtr root_;
  int m_ = 0;
  int r_ = 0;
  int max_x_ = 0;
  int max_u_ = 0;
  bool uses_t_ = false;
};

}  // namespace fracbvp
