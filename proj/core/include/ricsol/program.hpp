#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ricsol/expression.hpp"

namespace ricsol {

/// A batch of expressions lowered to a flat instruction tape.
///
/// Structurally identical subexpressions across the whole batch are merged,
/// so evaluating the components of a derived tensor costs one pass over the
/// shared DAG. Symbols are resolved once at compile time: coordinates by
/// position, everything else from the parameter set.
class Program {
 public:
  Program(std::span<const Expr> outputs, std::span<const std::string> coordinates, const ParameterSet& params);

  std::size_t output_count() const { return outputs_.size(); }
  std::size_t instruction_count() const { return code_.size(); }

  /// Evaluates every output at `point`. Throws DomainError.
  void run(std::span<const double> point, std::span<double> out) const;
  std::vector<double> run(std::span<const double> point) const;

 private:
  enum class Op : std::uint8_t {
    Const,
    Coord,
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Exp,
    Ln,
    Sin,
    Cos,
    Tan,
    Cot,
    Sqrt,
  };
  struct Instruction {
    Op op;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double value = 0.0;
  };

  [[noreturn]] void fail(std::size_t pc, const char* what, std::span<const double> point) const;

  std::vector<Instruction> code_;
  std::vector<Expr> origin_;  // source node per instruction, for diagnostics
  std::vector<std::uint32_t> outputs_;
};

}  // namespace ricsol
