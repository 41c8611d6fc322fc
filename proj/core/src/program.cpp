#include "ricsol/program.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <unordered_map>

namespace ricsol {
namespace {

struct Key {
  int op;
  std::uint32_t a;
  std::uint32_t b;
  std::uint64_t bits;

  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = std::hash<std::uint64_t>{}(k.bits);
    h ^= (static_cast<std::size_t>(k.op) << 1) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(k.a) * 0x100000001b3ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(k.b) * 0xc2b2ae3d27d4eb4fULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::uint64_t bits_of(double v) {
  if (v == 0.0) v = 0.0;
  std::uint64_t b = 0;
  static_assert(sizeof b == sizeof v);
  std::memcpy(&b, &v, sizeof b);
  return b;
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

Program::Program(std::span<const Expr> outputs, std::span<const std::string> coordinates,
                 const ParameterSet& params) {
  std::unordered_map<const Node*, std::uint32_t> by_node;
  std::unordered_map<Key, std::uint32_t, KeyHash> by_key;

  auto emit = [&](const Expr& origin, Op op, std::uint32_t a, std::uint32_t b, double value) {
    const Key key{static_cast<int>(op), a, b, bits_of(value)};
    if (auto it = by_key.find(key); it != by_key.end()) return it->second;
    const auto slot = static_cast<std::uint32_t>(code_.size());
    code_.push_back({op, a, b, value});
    origin_.push_back(origin);
    by_key.emplace(key, slot);
    return slot;
  };

  auto lower = [&](auto&& self, const Expr& e) -> std::uint32_t {
    if (auto it = by_node.find(e.id()); it != by_node.end()) return it->second;
    std::uint32_t slot = 0;
    switch (e.kind()) {
      case NodeKind::Number: slot = emit(e, Op::Const, 0, 0, e.value()); break;
      case NodeKind::Symbol: {
        bool bound = false;
        for (std::size_t i = 0; i < coordinates.size(); ++i) {
          if (coordinates[i] == e.name()) {
            slot = emit(e, Op::Coord, static_cast<std::uint32_t>(i), 0, 0.0);
            bound = true;
            break;
          }
        }
        if (!bound) {
          const auto it = params.find(e.name());
          if (it == params.end()) throw UnboundSymbolError(e.name());
          slot = emit(e, Op::Const, 0, 0, it->second);
        }
        break;
      }
      case NodeKind::Negate: slot = emit(e, Op::Neg, self(self, e.operand(0)), 0, 0.0); break;
      case NodeKind::Call: {
        static constexpr Op table[] = {Op::Exp, Op::Ln, Op::Sin, Op::Cos, Op::Tan, Op::Cot, Op::Sqrt};
        slot = emit(e, table[static_cast<int>(e.function())], self(self, e.operand(0)), 0, 0.0);
        break;
      }
      default: {
        Op op = Op::Add;
        switch (e.kind()) {
          case NodeKind::Add: op = Op::Add; break;
          case NodeKind::Subtract: op = Op::Sub; break;
          case NodeKind::Multiply: op = Op::Mul; break;
          case NodeKind::Divide: op = Op::Div; break;
          default: op = Op::Pow; break;
        }
        const std::uint32_t a = self(self, e.operand(0));
        const std::uint32_t b = self(self, e.operand(1));
        slot = emit(e, op, a, b, 0.0);
        break;
      }
    }
    by_node.emplace(e.id(), slot);
    return slot;
  };

  outputs_.reserve(outputs.size());
  for (const auto& e : outputs) outputs_.push_back(lower(lower, e));
}

void Program::fail(std::size_t pc, const char* what, std::span<const double> point) const {
  throw DomainError(what, render(origin_[pc]), std::vector<double>(point.begin(), point.end()));
}

void Program::run(std::span<const double> point, std::span<double> out) const {
  thread_local std::vector<double> regs;
  regs.resize(code_.size());
  for (std::size_t pc = 0; pc < code_.size(); ++pc) {
    const Instruction& in = code_[pc];
    const double a = (in.op == Op::Const || in.op == Op::Coord) ? 0.0 : regs[in.a];
    double r = 0.0;
    switch (in.op) {
      case Op::Const: r = in.value; break;
      case Op::Coord: r = point[in.a]; break;
      case Op::Neg: r = -a; break;
      case Op::Add: r = a + regs[in.b]; break;
      case Op::Sub: r = a - regs[in.b]; break;
      case Op::Mul: r = a * regs[in.b]; break;
      case Op::Div:
        if (regs[in.b] == 0.0) fail(pc, "division by zero", point);
        r = a / regs[in.b];
        break;
      case Op::Pow: {
        const double b = regs[in.b];
        if (a == 0.0 && b < 0.0) fail(pc, "zero raised to a negative power", point);
        if (a < 0.0 && std::floor(b) != b) fail(pc, "negative base with non-integer exponent", point);
        r = std::pow(a, b);
        break;
      }
      case Op::Exp: r = std::exp(a); break;
      case Op::Ln:
        if (!(a > 0.0)) fail(pc, "logarithm of a non-positive value", point);
        r = std::log(a);
        break;
      case Op::Sin: r = std::sin(a); break;
      case Op::Cos: r = std::cos(a); break;
      case Op::Tan: {
        const double c = std::cos(a);
        if (std::abs(c) <= 4 * kEps * std::max(1.0, std::abs(a))) fail(pc, "tan at an odd multiple of pi/2", point);
        r = std::tan(a);
        break;
      }
      case Op::Cot: {
        const double s = std::sin(a);
        if (std::abs(s) <= 4 * kEps * std::max(1.0, std::abs(a))) fail(pc, "cot at a multiple of pi", point);
        r = std::cos(a) / s;
        break;
      }
      case Op::Sqrt:
        if (a < 0.0) fail(pc, "square root of a negative value", point);
        r = std::sqrt(a);
        break;
    }
    if (!std::isfinite(r)) fail(pc, "non-finite value", point);
    regs[pc] = r;
  }
  for (std::size_t i = 0; i < outputs_.size(); ++i) out[i] = regs[outputs_[i]];
}

std::vector<double> Program::run(std::span<const double> point) const {
  std::vector<double> out(outputs_.size());
  run(point, out);
  return out;
}

}  // namespace ricsol
