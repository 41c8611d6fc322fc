#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "ricsol/program.hpp"
#include "support.hpp"

using namespace ricsol;
using ricsol::test::E;

namespace {

double at(const char* text, std::vector<std::string> coords, std::vector<double> point, const ParameterSet& p = {}) {
  return evaluate(parse(text), coords, point, p);
}

}  // namespace

TEST(Parse, SasakianPotentialHasSingleFreeSymbol) {
  const Expr p = parse("4*exp(y)/(16+exp(2*y))");
  EXPECT_EQ(free_symbols(p), (std::set<std::string>{"y"}));
  EXPECT_NEAR(evaluate(p, std::vector<std::string>{"y"}, std::vector<double>{0.0}), 4.0 / 17.0, 1e-15);
}

TEST(Parse, ZeroLiteral) {
  const Expr z = parse("0");
  EXPECT_TRUE(z.is_number());
  EXPECT_TRUE(z.is_zero());
  EXPECT_TRUE(free_symbols(z).empty());
}

TEST(Parse, PythagoreanIdentity) {
  const Expr e = parse("sin(z)^2 + cos(z)^2");
  for (double z : {-3.0, -0.4, 0.0, 0.7, 2.5, 10.0}) {
    EXPECT_NEAR(evaluate(e, std::vector<std::string>{"z"}, std::vector<double>{z}), 1.0, 1e-15);
  }
}

TEST(Parse, PowerIsRightAssociative) { EXPECT_EQ(at("2^3^2", {}, {}), 512.0); }

TEST(Parse, UnaryMinusBindsLooserThanPower) {
  EXPECT_EQ(at("-x^2", {"x"}, {3.0}), -9.0);
  EXPECT_EQ(at("(-x)^2", {"x"}, {3.0}), 9.0);
  EXPECT_EQ(at("2^-1", {}, {}), 0.5);
}

TEST(Parse, Precedence) {
  EXPECT_EQ(at("2+3*4", {}, {}), 14.0);
  EXPECT_EQ(at("(2+3)*4", {}, {}), 20.0);
  EXPECT_EQ(at("8/4/2", {}, {}), 1.0);
  EXPECT_EQ(at("8-4-2", {}, {}), 2.0);
}

TEST(Parse, NumbersAndConstants) {
  EXPECT_EQ(at("1.5e3", {}, {}), 1500.0);
  EXPECT_EQ(at("2.5E-1", {}, {}), 0.25);
  EXPECT_EQ(at(".5", {}, {}), 0.5);
  EXPECT_DOUBLE_EQ(at("pi", {}, {}), M_PI);
  EXPECT_DOUBLE_EQ(at("e", {}, {}), std::exp(1.0));
  EXPECT_DOUBLE_EQ(at("2*e", {}, {}), 2.0 * std::exp(1.0));
}

TEST(Parse, ReportsFreeSymbols) {
  EXPECT_EQ(free_symbols(parse("a*x + sin(b) - pi")), (std::set<std::string>{"a", "b", "x"}));
}

TEST(Parse, SyntaxErrorCarriesOffsetAndExpectation) {
  try {
    parse("1 + * 2");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
    EXPECT_FALSE(e.expected().empty());
  }
  try {
    parse("(x + 1");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 6u);
    EXPECT_EQ(e.expected(), std::vector<std::string>{"')'"});
  }
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("   "), ParseError);
  EXPECT_THROW(parse("x y"), ParseError);
  EXPECT_THROW(parse("2e"), ParseError);
  EXPECT_THROW(parse("x $ 1"), ParseError);
}

TEST(Parse, UnknownFunction) {
  try {
    parse("1 + sinh(x)");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
    EXPECT_NE(std::strstr(e.what(), "sinh"), nullptr);
    EXPECT_EQ(e.expected().size(), 7u);
  }
}

TEST(Differentiate, LogSine) {
  const Expr d = differentiate(parse("ln(sin(z))"), "z");
  EXPECT_EQ(render(d), "cos(z)/sin(z)");
}

TEST(Differentiate, QAtOrigin) {
  const Expr d = differentiate(parse("-exp(2*y)/(16+exp(2*y))"), "y");
  EXPECT_NEAR(evaluate(d, std::vector<std::string>{"y"}, std::vector<double>{0.0}), -32.0 / 289.0, 1e-15);
}

TEST(Differentiate, ConstantGivesZero) {
  EXPECT_TRUE(differentiate(parse("7"), "x").is_zero());
  EXPECT_TRUE(differentiate(parse("sin(y)*exp(y)"), "x").is_zero());
}

TEST(Differentiate, Rules) {
  const std::vector<std::string> x{"x"};
  const std::vector<double> pt{0.7};
  auto d = [&](const char* s) { return evaluate(differentiate(parse(s), "x"), x, pt); };
  const double v = 0.7;
  EXPECT_NEAR(d("x^3"), 3 * v * v, 1e-14);
  EXPECT_NEAR(d("2^x"), std::log(2.0) * std::pow(2.0, v), 1e-14);
  EXPECT_NEAR(d("x^x"), std::pow(v, v) * (std::log(v) + 1), 1e-14);
  EXPECT_NEAR(d("tan(x)"), 1 / (std::cos(v) * std::cos(v)), 1e-14);
  EXPECT_NEAR(d("cot(x)"), -1 / (std::sin(v) * std::sin(v)), 1e-14);
  EXPECT_NEAR(d("sqrt(x)"), 0.5 / std::sqrt(v), 1e-14);
  EXPECT_NEAR(d("ln(x)"), 1 / v, 1e-14);
  EXPECT_NEAR(d("exp(-x^2)"), -2 * v * std::exp(-v * v), 1e-14);
  EXPECT_NEAR(d("1/x"), -1 / (v * v), 1e-14);
}

TEST(Differentiate, CacheAgreesWithDirectDerivative) {
  DerivativeCache cache;
  const Expr e = parse("exp(y)*sin(x*y)/(1+x^2)");
  const std::vector<std::string> c{"x", "y"};
  const std::vector<double> p{0.3, -1.1};
  for (const char* v : {"x", "y"}) {
    EXPECT_EQ(evaluate(cache(e, v), c, p), evaluate(differentiate(e, v), c, p));
    EXPECT_EQ(cache(e, v).id(), cache(e, v).id());
  }
}

TEST(Simplify, IdentityRules) {
  EXPECT_EQ(render(simplify(parse("(y*0) + x*1"))), "x");
  EXPECT_EQ(render(simplify(parse("sin(z)*1 + 0/y"))), "sin(z)");
  EXPECT_EQ(render(simplify(parse("x^1"))), "x");
  EXPECT_EQ(render(simplify(parse("x^0"))), "1");
  EXPECT_EQ(render(simplify(parse("0 + x"))), "x");
}

TEST(Simplify, ConstantFolding) {
  const Expr e = simplify(parse("2+3*4"));
  ASSERT_TRUE(e.is_number());
  EXPECT_EQ(e.value(), 14.0);
}

TEST(Simplify, DoesNotFoldIntoDomainErrors) {
  const Expr e = simplify(parse("ln(0) + x"));
  EXPECT_THROW(evaluate(e, std::vector<std::string>{"x"}, std::vector<double>{1.0}), DomainError);
}

TEST(Evaluate, SasakianCoefficientsAtOrigin) {
  const std::vector<std::string> c{"y"};
  const std::vector<double> p{0.0};
  EXPECT_NEAR(evaluate(parse(test::kP), c, p), 0.2352941176470588, 1e-15);
  // eta_x = -q
  EXPECT_NEAR(evaluate(-parse(test::kQ), c, p), 0.0588235294117647, 1e-15);
}

TEST(Evaluate, DomainErrors) {
  try {
    at("ln(y)", {"y"}, {0.0});
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.subexpression(), "ln(y)");
    EXPECT_EQ(e.point(), std::vector<double>{0.0});
  }
  EXPECT_THROW(at("1/x", {"x"}, {0.0}), DomainError);
  EXPECT_THROW(at("cot(z)", {"z"}, {0.0}), DomainError);
  EXPECT_THROW(at("cot(z)", {"z"}, {M_PI}), DomainError);
  EXPECT_THROW(at("sqrt(x)", {"x"}, {-1.0}), DomainError);
  EXPECT_THROW(at("x^0.5", {"x"}, {-1.0}), DomainError);
  EXPECT_THROW(at("tan(z)", {"z"}, {M_PI / 2}), DomainError);
  EXPECT_NO_THROW(at("(-2)^3", {}, {}));
  EXPECT_NEAR(at("cot(z)", {"z"}, {M_PI / 2}), 0.0, 1e-15);
}

TEST(Evaluate, UnboundSymbol) { EXPECT_THROW(at("a*x", {"x"}, {1.0}), UnboundSymbolError); }

TEST(Evaluate, ParametersBindByName) {
  ParameterSet p{{"c1", 2.0}, {"lambda", -0.5}};
  EXPECT_EQ(at("c1*x + lambda", {"x"}, {3.0}, p), 5.5);
}

TEST(Evaluate, Deterministic) {
  const Expr e = parse("exp(sin(x*y))/(1+y^2) - sqrt(x^2+1)*ln(2+cos(y))");
  const std::vector<std::string> c{"x", "y"};
  const std::vector<double> p{0.123456789, -1.987654321};
  const double a = evaluate(e, c, p);
  for (int i = 0; i < 10; ++i) {
    const double b = evaluate(e, c, p);
    EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
  }
}

TEST(Program, SharesCommonSubexpressions) {
  const Expr a = parse("exp(2*y)/(16+exp(2*y))");
  const Expr b = parse("(16+exp(2*y))^2");
  const Program prog(std::vector<Expr>{a, b}, std::vector<std::string>{"y"}, ParameterSet{});
  // y, 2, 2*y, exp, 16, +, /, 2, ^  - with exp(2*y) and (16+exp(2*y)) shared.
  EXPECT_LE(prog.instruction_count(), 9u);
  const auto out = prog.run(std::vector<double>{0.0});
  EXPECT_NEAR(out[0], 1.0 / 17.0, 1e-15);
  EXPECT_NEAR(out[1], 289.0, 1e-12);
}

// ---------------------------------------------------------------------------
// Properties

namespace {

/// Random expression over x and y with values kept away from domain edges.
Expr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 12);
  std::uniform_real_distribution<double> num(-3.0, 3.0);
  switch (pick(rng)) {
    case 0: return Expr::symbol("x");
    case 1: return Expr::symbol("y");
    case 2: return Expr::number(std::round(num(rng) * 100.0) / 100.0);
    case 3: return Expr::raw_binary(NodeKind::Add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return Expr::raw_binary(NodeKind::Subtract, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: return Expr::raw_binary(NodeKind::Multiply, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 6: {
      // a / (1 + b^2) never divides by zero
      const Expr b = random_expr(rng, depth - 1);
      return Expr::raw_binary(NodeKind::Divide, random_expr(rng, depth - 1),
                              Expr::raw_binary(NodeKind::Add, Expr::number(1.0),
                                               Expr::raw_binary(NodeKind::Multiply, b, b)));
    }
    case 7: return Expr::raw_unary(NodeKind::Negate, random_expr(rng, depth - 1));
    case 8: return Expr::raw_call(Function::Sin, random_expr(rng, depth - 1));
    case 9: return Expr::raw_call(Function::Cos, random_expr(rng, depth - 1));
    case 10: {
      const Expr b = random_expr(rng, depth - 1);
      return Expr::raw_call(Function::Ln, Expr::raw_binary(NodeKind::Add, Expr::number(1.0),
                                                           Expr::raw_binary(NodeKind::Multiply, b, b)));
    }
    case 11: return Expr::raw_call(Function::Exp, Expr::raw_call(Function::Sin, random_expr(rng, depth - 1)));
    default:
      return Expr::raw_binary(NodeKind::Power, random_expr(rng, depth - 1),
                              Expr::number(static_cast<double>(std::uniform_int_distribution<int>(0, 3)(rng))));
  }
}

}  // namespace

TEST(ExpressionProperty, RenderParseRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  const std::vector<std::string> c{"x", "y"};
  for (int trial = 0; trial < 500; ++trial) {
    const Expr e = random_expr(rng, 4);
    const std::string text = render(e);
    const Expr back = parse(text);
    EXPECT_EQ(render(back), text);
    for (int k = 0; k < 5; ++k) {
      const std::vector<double> p{coord(rng), coord(rng)};
      double a = 0, b = 0;
      try {
        a = evaluate(e, c, p);
      } catch (const DomainError&) {
        EXPECT_THROW(evaluate(back, c, p), DomainError);
        continue;
      }
      b = evaluate(back, c, p);
      EXPECT_EQ(a, b) << text;
    }
  }
}

TEST(ExpressionProperty, SimplifyPreservesValue) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  const std::vector<std::string> c{"x", "y"};
  for (int trial = 0; trial < 500; ++trial) {
    const Expr e = random_expr(rng, 4);
    const Expr s = simplify(e);
    for (int k = 0; k < 5; ++k) {
      const std::vector<double> p{coord(rng), coord(rng)};
      double a = 0;
      try {
        a = evaluate(e, c, p);
      } catch (const DomainError&) {
        continue;
      }
      const double b = evaluate(s, c, p);
      EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a))) << render(e);
    }
  }
}

TEST(ExpressionProperty, DerivativeMatchesFiniteDifferenceOnRandomTrees) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> coord(-1.5, 1.5);
  const Chart chart({"x", "y"});
  for (int trial = 0; trial < 200; ++trial) {
    const Expr e = random_expr(rng, 3);
    for (std::size_t i = 0; i < 2; ++i) {
      const Expr d = differentiate(e, chart.coordinate(i));
      const Point p{coord(rng), coord(rng)};
      double exact = 0, fd = 0;
      try {
        exact = test::eval(d, chart, p);
        fd = test::central_difference(e, chart, p, i, 1e-5);
      } catch (const DomainError&) {
        continue;
      }
      EXPECT_LE(std::abs(exact - fd), 1e-6 * std::max(1.0, std::abs(exact))) << render(e);
    }
  }
}
