#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ricsol {

/// Named real constants bound at evaluation time (c1, c2, lambda, ...).
using ParameterSet = std::map<std::string, double, std::less<>>;

enum class NodeKind : std::uint8_t {
  Number,
  Symbol,
  Negate,
  Add,
  Subtract,
  Multiply,
  Divide,
  Power,
  Call,
};

enum class Function : std::uint8_t { Exp, Ln, Sin, Cos, Tan, Cot, Sqrt };

std::string_view function_name(Function fn);

struct Node;

/// Immutable scalar expression over chart coordinates and named parameters.
///
/// An Expr is a cheap handle to a shared, immutable node. Derived expressions
/// share subtrees freely, so a tree is really a DAG; every traversal in this
/// library is memoized on node identity.
class Expr {
 public:
  /// The literal zero.
  Expr();

  static Expr number(double value);
  static Expr symbol(std::string name);

  NodeKind kind() const;
  double value() const;  // Number only
  const std::string& name() const;  // Symbol only
  Function function() const;  // Call only
  std::size_t arity() const;
  const Expr& operand(std::size_t i) const;

  bool is_number() const { return kind() == NodeKind::Number; }
  bool is_number(double v) const { return is_number() && value() == v; }
  bool is_zero() const { return is_number(0.0); }

  /// Conservative dependency test: false means the expression certainly does
  /// not contain `var`.
  bool may_depend_on(std::string_view var) const;

  /// Structural hash (equal trees hash equal).
  std::size_t hash() const;
  const Node* id() const { return node_.get(); }

  // Raw constructors: build exactly the requested node, no rewriting.
  static Expr raw_unary(NodeKind kind, Expr operand);
  static Expr raw_binary(NodeKind kind, Expr lhs, Expr rhs);
  static Expr raw_call(Function fn, Expr arg);

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Smart constructors. These fold numeric constants and apply the identity
// rules x+0, x*1, x*0, 0/x, x^1, x^0 locally, so derived tensors come out
// simplified as they are built.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr call(Function fn, const Expr& arg);

inline Expr operator+(const Expr& a, double b) { return a + Expr::number(b); }
inline Expr operator+(double a, const Expr& b) { return Expr::number(a) + b; }
inline Expr operator-(const Expr& a, double b) { return a - Expr::number(b); }
inline Expr operator-(double a, const Expr& b) { return Expr::number(a) - b; }
inline Expr operator*(const Expr& a, double b) { return a * Expr::number(b); }
inline Expr operator*(double a, const Expr& b) { return Expr::number(a) * b; }
inline Expr operator/(const Expr& a, double b) { return a / Expr::number(b); }
inline Expr operator/(double a, const Expr& b) { return Expr::number(a) / b; }

/// Sum of a range of expressions with zero terms dropped.
Expr sum(std::span<const Expr> terms);

/// Syntax error in expression text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t offset, std::vector<std::string> expected);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Numeric evaluation left the domain of an operation (ln of a non-positive
/// value, division by zero, cot at a multiple of pi, ...).
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string what, std::string subexpression, std::vector<double> point);
  const std::string& subexpression() const { return subexpression_; }
  const std::vector<double>& point() const { return point_; }

 private:
  std::string subexpression_;
  std::vector<double> point_;
};

/// A symbol could not be bound to a coordinate or a parameter.
class UnboundSymbolError : public std::runtime_error {
 public:
  explicit UnboundSymbolError(const std::string& symbol);
};

/// Parses the grammar
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?
///   primary := number | name | name '(' expr ')' | '(' expr ')'
///
/// so '^' is right-associative and binds tighter than unary minus
/// (-x^2 == -(x^2)). `pi` and `e` are the usual constants. Functions:
/// exp, ln, sin, cos, tan, cot, sqrt. The result is the literal tree; call
/// simplify() to fold it.
Expr parse(std::string_view text);

/// Text that parse() maps back to an evaluation-identical tree.
std::string render(const Expr& e);

std::set<std::string> free_symbols(const Expr& e);

/// Exact symbolic derivative with respect to `var`.
Expr differentiate(const Expr& e, std::string_view var);

/// Memoizes derivatives across many calls. Use one cache while deriving a
/// family of related expressions (connection, curvature) so shared
/// subexpressions are differentiated once and stay shared.
class DerivativeCache {
 public:
  DerivativeCache();
  ~DerivativeCache();
  DerivativeCache(const DerivativeCache&) = delete;
  DerivativeCache& operator=(const DerivativeCache&) = delete;

  Expr operator()(const Expr& e, std::string_view var);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Recursive constant folding and identity rules.
Expr simplify(const Expr& e);

/// Replace symbols by expressions.
Expr substitute(const Expr& e, const std::map<std::string, Expr, std::less<>>& replacements);

/// Evaluates `e` with coordinate values `point` bound to `coordinates` and
/// all remaining symbols looked up in `params`.
double evaluate(const Expr& e, std::span<const std::string> coordinates, std::span<const double> point,
                const ParameterSet& params = {});

/// Number of distinct nodes reachable from `e`.
std::size_t node_count(const Expr& e);

}  // namespace ricsol
