#include "ricsol/expression.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <optional>
#include <unordered_map>
#include <utility>

#include "ricsol/program.hpp"

namespace ricsol {

struct Node {
  NodeKind kind = NodeKind::Number;
  Function fn = Function::Exp;
  double value = 0.0;
  std::string name;
  std::optional<Expr> lhs;
  std::optional<Expr> rhs;
  std::size_t hash = 0;
  std::uint64_t symbol_mask = 0;  // bloom mask of contained symbols
};

namespace {

std::uint64_t symbol_bit(std::string_view name) {
  return std::uint64_t{1} << (std::hash<std::string_view>{}(name) % 64);
}

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t double_bits(double v) {
  std::uint64_t bits = 0;
  if (v == 0.0) v = 0.0;  // merge +0/-0
  std::memcpy(&bits, &v, sizeof bits);
  return static_cast<std::size_t>(bits);
}

}  // namespace

std::string_view function_name(Function fn) {
  switch (fn) {
    case Function::Exp: return "exp";
    case Function::Ln: return "ln";
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Tan: return "tan";
    case Function::Cot: return "cot";
    case Function::Sqrt: return "sqrt";
  }
  return "?";
}

Expr::Expr() : Expr(number(0.0)) {}

Expr Expr::number(double value) {
  // Shared literals for the most common constants.
  static const auto zero = [] {
    auto n = std::make_shared<Node>();
    n->hash = mix(0, double_bits(0.0));
    return std::shared_ptr<const Node>(std::move(n));
  }();
  if (value == 0.0) return Expr(zero);
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Number;
  n->value = value;
  n->hash = mix(0, double_bits(value));
  return Expr(std::move(n));
}

Expr Expr::symbol(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Symbol;
  n->hash = mix(1, std::hash<std::string>{}(name));
  n->symbol_mask = symbol_bit(name);
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::raw_unary(NodeKind kind, Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->hash = mix(static_cast<std::size_t>(kind) + 16, operand.hash());
  n->symbol_mask = operand.node_->symbol_mask;
  n->lhs = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::raw_binary(NodeKind kind, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->hash = mix(mix(static_cast<std::size_t>(kind) + 16, lhs.hash()), rhs.hash());
  n->symbol_mask = lhs.node_->symbol_mask | rhs.node_->symbol_mask;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::raw_call(Function fn, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Call;
  n->fn = fn;
  n->hash = mix(mix(64, static_cast<std::size_t>(fn)), arg.hash());
  n->symbol_mask = arg.node_->symbol_mask;
  n->lhs = std::move(arg);
  return Expr(std::move(n));
}

NodeKind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
Function Expr::function() const { return node_->fn; }
std::size_t Expr::hash() const { return node_->hash; }

std::size_t Expr::arity() const {
  switch (node_->kind) {
    case NodeKind::Number:
    case NodeKind::Symbol: return 0;
    case NodeKind::Negate:
    case NodeKind::Call: return 1;
    default: return 2;
  }
}

const Expr& Expr::operand(std::size_t i) const { return i == 0 ? *node_->lhs : *node_->rhs; }

bool Expr::may_depend_on(std::string_view var) const { return (node_->symbol_mask & symbol_bit(var)) != 0; }

// ---------------------------------------------------------------------------
// Smart constructors

namespace {

// Folding must not turn a domain error into a number, so only fold when the
// result is an ordinary finite value.
bool foldable(double v) { return std::isfinite(v); }

double apply_function(Function fn, double x) {
  switch (fn) {
    case Function::Exp: return std::exp(x);
    case Function::Ln: return x > 0 ? std::log(x) : NAN;
    case Function::Sin: return std::sin(x);
    case Function::Cos: return std::cos(x);
    case Function::Tan: return std::tan(x);
    case Function::Cot: return std::sin(x) != 0.0 ? std::cos(x) / std::sin(x) : NAN;
    case Function::Sqrt: return x >= 0 ? std::sqrt(x) : NAN;
  }
  return NAN;
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_number() && b.is_number()) return Expr::number(a.value() + b.value());
  if (b.kind() == NodeKind::Negate) return a - b.operand(0);
  return Expr::raw_binary(NodeKind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.is_number() && b.is_number()) return Expr::number(a.value() - b.value());
  if (a.id() == b.id()) return Expr();
  if (b.kind() == NodeKind::Negate) return a + b.operand(0);
  return Expr::raw_binary(NodeKind::Subtract, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_number()) return Expr::number(-a.value());
  if (a.kind() == NodeKind::Negate) return a.operand(0);
  return Expr::raw_unary(NodeKind::Negate, a);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_number(1.0)) return b;
  if (b.is_number(1.0)) return a;
  if (a.is_number(-1.0)) return -b;
  if (b.is_number(-1.0)) return -a;
  if (a.is_number() && b.is_number()) return Expr::number(a.value() * b.value());
  if (a.kind() == NodeKind::Negate && b.kind() == NodeKind::Negate) return a.operand(0) * b.operand(0);
  if (a.kind() == NodeKind::Negate) return -(a.operand(0) * b);
  if (b.kind() == NodeKind::Negate) return -(a * b.operand(0));
  return Expr::raw_binary(NodeKind::Multiply, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_number(1.0)) return a;
  if (a.is_zero() && !b.is_zero()) return Expr();
  if (a.is_number() && b.is_number() && b.value() != 0.0) return Expr::number(a.value() / b.value());
  if (a.kind() == NodeKind::Negate) return -(a.operand(0) / b);
  if (b.kind() == NodeKind::Negate) return -(a / b.operand(0));
  return Expr::raw_binary(NodeKind::Divide, a, b);
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (exponent.is_zero()) return Expr::number(1.0);
  if (exponent.is_number(1.0)) return base;
  if (base.is_number() && exponent.is_number()) {
    const double v = std::pow(base.value(), exponent.value());
    if (foldable(v)) return Expr::number(v);
  }
  return Expr::raw_binary(NodeKind::Power, base, exponent);
}

Expr call(Function fn, const Expr& arg) {
  if (arg.is_number()) {
    const double v = apply_function(fn, arg.value());
    if (foldable(v)) return Expr::number(v);
  }
  return Expr::raw_call(fn, arg);
}

Expr sum(std::span<const Expr> terms) {
  Expr acc;
  for (const auto& t : terms) acc = acc + t;
  return acc;
}

// ---------------------------------------------------------------------------
// Errors

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

std::string format_point(const std::vector<double>& point) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < point.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.17g", i ? ", " : "", point[i]);
    out += buf;
  }
  return out + ")";
}

}  // namespace

ParseError::ParseError(std::string message, std::size_t offset, std::vector<std::string> expected)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + message +
                         (expected.empty() ? std::string() : " (expected " + join(expected) + ")")),
      offset_(offset),
      expected_(std::move(expected)) {}

DomainError::DomainError(std::string what, std::string subexpression, std::vector<double> point)
    : std::runtime_error(what + " in '" + subexpression + "' at " + format_point(point)),
      subexpression_(std::move(subexpression)),
      point_(std::move(point)) {}

UnboundSymbolError::UnboundSymbolError(const std::string& symbol)
    : std::runtime_error("unbound symbol '" + symbol + "'") {}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Add:
    case NodeKind::Subtract: return 1;
    case NodeKind::Multiply:
    case NodeKind::Divide: return 2;
    case NodeKind::Negate: return 3;
    case NodeKind::Power: return 4;
    case NodeKind::Number: return e.value() < 0 || std::signbit(e.value()) ? 3 : 5;
    default: return 5;
  }
}

std::string render_number(double v) {
  if (v == std::numbers::pi) return "pi";
  if (v == std::numbers::e) return "e";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Shortest text that still round-trips.
  for (int digits = 1; digits < 17; ++digits) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", digits, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

class Renderer {
 public:
  std::string operator()(const Expr& e) {
    if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second;
    std::string out = build(e);
    cache_.emplace(e.id(), out);
    return out;
  }

 private:
  std::string wrap(const Expr& e, bool parens) { return parens ? "(" + (*this)(e) + ")" : (*this)(e); }

  std::string build(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::Number: return render_number(e.value());
      case NodeKind::Symbol: return e.name();
      case NodeKind::Negate: return "-" + wrap(e.operand(0), precedence(e.operand(0)) < 3);
      case NodeKind::Call:
        return std::string(function_name(e.function())) + "(" + (*this)(e.operand(0)) + ")";
      case NodeKind::Add:
      case NodeKind::Subtract: {
        const char* op = e.kind() == NodeKind::Add ? "+" : "-";
        return wrap(e.operand(0), precedence(e.operand(0)) < 1) + op +
               wrap(e.operand(1), precedence(e.operand(1)) <= 1);
      }
      case NodeKind::Multiply:
      case NodeKind::Divide: {
        const char* op = e.kind() == NodeKind::Multiply ? "*" : "/";
        return wrap(e.operand(0), precedence(e.operand(0)) < 2) + op +
               wrap(e.operand(1), precedence(e.operand(1)) <= 2);
      }
      case NodeKind::Power:
        return wrap(e.operand(0), precedence(e.operand(0)) <= 4) + "^" +
               wrap(e.operand(1), precedence(e.operand(1)) < 3);
    }
    return {};
  }

  std::unordered_map<const Node*, std::string> cache_;
};

}  // namespace

std::string render(const Expr& e) { return Renderer{}(e); }

// ---------------------------------------------------------------------------
// Traversals

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  std::unordered_map<const Node*, bool> seen;
  std::function<void(const Expr&)> visit = [&](const Expr& x) {
    if (!seen.emplace(x.id(), true).second) return;
    if (x.kind() == NodeKind::Symbol) out.insert(x.name());
    for (std::size_t i = 0; i < x.arity(); ++i) visit(x.operand(i));
  };
  visit(e);
  return out;
}

std::size_t node_count(const Expr& e) {
  std::unordered_map<const Node*, bool> seen;
  std::function<void(const Expr&)> visit = [&](const Expr& x) {
    if (!seen.emplace(x.id(), true).second) return;
    for (std::size_t i = 0; i < x.arity(); ++i) visit(x.operand(i));
  };
  visit(e);
  return seen.size();
}

namespace {

/// Rebuilds a DAG bottom-up through the smart constructors, with an optional
/// hook for leaves.
class Rebuilder {
 public:
  explicit Rebuilder(std::function<Expr(const Expr&)> leaf) : leaf_(std::move(leaf)) {}

  Expr operator()(const Expr& e) {
    if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second;
    Expr out = build(e);
    cache_.emplace(e.id(), out);
    return out;
  }

 private:
  Expr build(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::Number:
      case NodeKind::Symbol: return leaf_(e);
      case NodeKind::Negate: return -(*this)(e.operand(0));
      case NodeKind::Call: return call(e.function(), (*this)(e.operand(0)));
      case NodeKind::Add: return (*this)(e.operand(0)) + (*this)(e.operand(1));
      case NodeKind::Subtract: return (*this)(e.operand(0)) - (*this)(e.operand(1));
      case NodeKind::Multiply: return (*this)(e.operand(0)) * (*this)(e.operand(1));
      case NodeKind::Divide: return (*this)(e.operand(0)) / (*this)(e.operand(1));
      case NodeKind::Power: return pow((*this)(e.operand(0)), (*this)(e.operand(1)));
    }
    return e;
  }

  std::function<Expr(const Expr&)> leaf_;
  std::unordered_map<const Node*, Expr> cache_;
};

}  // namespace

Expr simplify(const Expr& e) {
  return Rebuilder([](const Expr& leaf) { return leaf; })(e);
}

Expr substitute(const Expr& e, const std::map<std::string, Expr, std::less<>>& replacements) {
  return Rebuilder([&](const Expr& leaf) {
    if (leaf.kind() == NodeKind::Symbol) {
      if (auto it = replacements.find(leaf.name()); it != replacements.end()) return it->second;
    }
    return leaf;
  })(e);
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

using Memo = std::unordered_map<const Node*, std::pair<Expr, Expr>>;  // node -> (key, derivative)

class Differentiator {
 public:
  Differentiator(std::string_view var, Memo& memo) : var_(var), memo_(memo) {}

  Expr operator()(const Expr& e) {
    if (!e.may_depend_on(var_)) return Expr();
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second.second;
    Expr out = build(e);
    memo_.emplace(e.id(), std::make_pair(e, out));
    return out;
  }

 private:
  Expr build(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::Number: return Expr();
      case NodeKind::Symbol: return Expr::number(e.name() == var_ ? 1.0 : 0.0);
      case NodeKind::Negate: return -(*this)(e.operand(0));
      case NodeKind::Add: return (*this)(e.operand(0)) + (*this)(e.operand(1));
      case NodeKind::Subtract: return (*this)(e.operand(0)) - (*this)(e.operand(1));
      case NodeKind::Multiply: {
        const Expr& u = e.operand(0);
        const Expr& v = e.operand(1);
        return (*this)(u) * v + u * (*this)(v);
      }
      case NodeKind::Divide: {
        const Expr& u = e.operand(0);
        const Expr& v = e.operand(1);
        if (!v.may_depend_on(var_)) return (*this)(u) / v;
        return ((*this)(u) * v - u * (*this)(v)) / pow(v, Expr::number(2.0));
      }
      case NodeKind::Power: {
        const Expr& u = e.operand(0);
        const Expr& v = e.operand(1);
        if (!v.may_depend_on(var_)) {
          return v * pow(u, v - Expr::number(1.0)) * (*this)(u);
        }
        if (!u.may_depend_on(var_)) {
          const Expr log_base = u.is_number(std::numbers::e) ? Expr::number(1.0) : call(Function::Ln, u);
          return e * log_base * (*this)(v);
        }
        return e * ((*this)(v) * call(Function::Ln, u) + v * (*this)(u) / u);
      }
      case NodeKind::Call: {
        const Expr& u = e.operand(0);
        const Expr du = (*this)(u);
        switch (e.function()) {
          case Function::Exp: return e * du;
          case Function::Ln: return du / u;
          case Function::Sin: return call(Function::Cos, u) * du;
          case Function::Cos: return -(call(Function::Sin, u) * du);
          case Function::Tan: return du / pow(call(Function::Cos, u), Expr::number(2.0));
          case Function::Cot: return -(du / pow(call(Function::Sin, u), Expr::number(2.0)));
          case Function::Sqrt: return du / (Expr::number(2.0) * e);
        }
      }
    }
    return Expr();
  }

  std::string var_;
  Memo& memo_;
};

}  // namespace

Expr differentiate(const Expr& e, std::string_view var) {
  Memo memo;
  return Differentiator(var, memo)(e);
}

struct DerivativeCache::Impl {
  std::map<std::string, Memo, std::less<>> per_variable;
};

DerivativeCache::DerivativeCache() : impl_(std::make_unique<Impl>()) {}
DerivativeCache::~DerivativeCache() = default;

Expr DerivativeCache::operator()(const Expr& e, std::string_view var) {
  auto it = impl_->per_variable.find(var);
  if (it == impl_->per_variable.end()) it = impl_->per_variable.emplace(std::string(var), Memo{}).first;
  return Differentiator(var, it->second)(e);
}

// ---------------------------------------------------------------------------

double evaluate(const Expr& e, std::span<const std::string> coordinates, std::span<const double> point,
                const ParameterSet& params) {
  const Program program(std::span<const Expr>(&e, 1), coordinates, params);
  double out = 0.0;
  program.run(point, std::span<double>(&out, 1));
  return out;
}

}  // namespace ricsol
