#pragma once

// Expressions in the single variable `s`.
//
// Grammar (whitespace insignificant):
//   expr    := term (("+"|"-") term)*
//   term    := factor (("*"|"/") factor)*
//   factor  := unary ("^" factor)?
//   unary   := "-" unary | primary
//   primary := NUMBER | "s" | FUNC "(" expr ")" | "(" expr ")"
//   FUNC    := ln | exp | sin | cos | sqrt | abs
//
// Expr is an immutable tree with shared subtrees; copies are cheap and all
// operations are safe to call from several threads.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "trapbound/interval.hpp"

namespace trapbound {

enum class UnaryOp { Neg, Ln, Exp, Sin, Cos, Sqrt, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

class Expr {
 public:
  struct Constant;
  struct Variable;
  struct Unary;
  struct Binary;
  using Node = std::variant<Constant, Variable, Unary, Binary>;

  static Expr constant(double v);
  static Expr variable();
  static Expr unary(UnaryOp op, Expr child);
  static Expr binary(BinaryOp op, Expr left, Expr right);

  const Node& node() const noexcept;

  bool is_constant() const noexcept;
  // Only meaningful when is_constant().
  double constant_value() const noexcept;

  // Recursive floating-point evaluation at s. Throws DomainError naming the
  // offending subexpression.
  double eval(double s) const;

  // Minimal-parenthesis rendering that parses back to an equal tree.
  std::string to_string() const;

  // Structural equality.
  friend bool operator==(const Expr& lhs, const Expr& rhs);

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Expr::Constant {
  double value;
};
struct Expr::Variable {};
struct Expr::Unary {
  UnaryOp op;
  Expr child;
};
struct Expr::Binary {
  BinaryOp op;
  Expr left;
  Expr right;
};

inline const Expr::Node& Expr::node() const noexcept { return *node_; }

Expr parse(std::string_view text);

// Symbolic d/ds. Throws NotDifferentiableError for abs.
Expr differentiate(const Expr& e);
Expr differentiate(const Expr& e, int order);

std::string_view name(UnaryOp op) noexcept;
char symbol(BinaryOp op) noexcept;

struct FunctionDef {
  Expr expr;
  std::string name;
  std::optional<Interval> domain_hint;  // where f is known positive

  static FunctionDef from_text(std::string_view text, std::string label = {});
  double operator()(double s) const { return expr.eval(s); }
};

}  // namespace trapbound
