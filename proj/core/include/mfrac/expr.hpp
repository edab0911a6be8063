#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mfrac/dual.hpp"
#include "mfrac/errors.hpp"

namespace mfrac {

enum class NodeKind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Call };

enum class Function { Sin, Cos, Exp, Ln, Sqrt, Abs };

const char* function_name(Function f);

// Immutable expression tree in one real variable. Copies share nodes.
class Expr {
 public:
  struct Node;

  static Expr constant(double c);
  static Expr variable();
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr pow(Expr base, Expr exponent);
  static Expr neg(Expr a);
  static Expr call(Function f, Expr arg);

  NodeKind kind() const;
  /// Constant value; 0 for other kinds.
  double constant_value() const;
  /// Called function; only meaningful for NodeKind::Call.
  Function function() const;
  /// Operands: two for binary nodes, one for Neg and Call, none for leaves.
  std::vector<Expr> operands() const;

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;

  friend const Node& node_of(const Expr& e);
  friend Expr wrap_node(std::shared_ptr<const Node> node);
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);

// Position-carrying parse failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset) : Error(what), offset_(offset) {}
  /// Byte offset into the source text.
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class SyntaxError : public ParseError {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string found);
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::vector<std::string> expected_;
  std::string found_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(std::size_t offset, std::string identifier);
  const std::string& identifier() const noexcept { return identifier_; }

 private:
  std::string identifier_;
};

/// Recursive-descent parser for
///
///     expr    := term (('+' | '-') term)*
///     term    := factor (('*' | '/') factor)*
///     factor  := unary ('^' factor)?
///     unary   := '-' unary | primary
///     primary := number | 'x' | 't' | func '(' expr ')' | '(' expr ')'
///
/// with func one of sin, cos, exp, ln, sqrt, abs. 'x' and 't' name the same
/// variable. Whitespace is ignored.
Expr parse(std::string_view source);

/// Canonical text form. parse(print(e)) == e for every parsed e.
std::string print(const Expr& e);

/// Real evaluation at t. Throws DomainError naming the offending node for
/// ln/sqrt of a negative value, division by zero, and negative bases raised
/// to non-integer powers.
double eval(const Expr& e, double t);

/// Value and derivative at t by forward-mode dual arithmetic. The value is
/// bitwise identical to eval(e, t). Additionally throws DomainError where
/// the expression is not differentiable (abs at 0, sqrt at 0).
DualNumber eval_dual(const Expr& e, double t);

}  // namespace mfrac
