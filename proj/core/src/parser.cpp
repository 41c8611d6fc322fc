#include <cctype>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <string>

#include "ricsol/expression.hpp"

namespace ricsol {
namespace {

std::optional<Function> lookup_function(std::string_view name) {
  if (name == "exp") return Function::Exp;
  if (name == "ln") return Function::Ln;
  if (name == "sin") return Function::Sin;
  if (name == "cos") return Function::Cos;
  if (name == "tan") return Function::Tan;
  if (name == "cot") return Function::Cot;
  if (name == "sqrt") return Function::Sqrt;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_, {"expression"});
    Expr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_,
                       {"operator", "')'", "end of input"});
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::raw_binary(NodeKind::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::raw_binary(NodeKind::Subtract, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::raw_binary(NodeKind::Multiply, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::raw_binary(NodeKind::Divide, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::raw_unary(NodeKind::Negate, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return Expr::raw_binary(NodeKind::Power, base, parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ == text_.size()) {
      throw ParseError("unexpected end of input", pos_, {"number", "name", "'('", "'-'"});
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
    if (accept('(')) {
      Expr inner = parse_expr();
      if (!accept(')')) throw ParseError("unbalanced parenthesis", pos_, {"')'"});
      return inner;
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_, {"number", "name", "'('", "'-'"});
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError("malformed number", start, {"digit"});
    // An exponent needs at least one digit; otherwise 'e' is left for the
    // caller (and "2e" becomes a syntax error).
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string literal(text_.substr(start, pos_ - start));
    return Expr::number(std::strtod(literal.c_str(), nullptr));
  }

  Expr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      const auto fn = lookup_function(name);
      if (!fn) {
        throw ParseError("unknown function '" + std::string(name) + "'", start,
                         {"exp", "ln", "sin", "cos", "tan", "cot", "sqrt"});
      }
      ++pos_;
      Expr arg = parse_expr();
      if (!accept(')')) throw ParseError("unbalanced parenthesis", pos_, {"')'"});
      return Expr::raw_call(*fn, arg);
    }
    if (name == "pi") return Expr::number(std::numbers::pi);
    if (name == "e") return Expr::number(std::numbers::e);
    return Expr::symbol(std::string(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace ricsol
