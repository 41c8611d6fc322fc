#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ricsol/chart.hpp"
#include "ricsol/contact.hpp"
#include "ricsol/expression.hpp"
#include "ricsol/manifest.hpp"
#include "ricsol/tensor.hpp"

namespace ricsol::test {

inline Expr E(const char* text) { return simplify(parse(text)); }

inline ExprMatrix matrix(const std::vector<std::vector<const char*>>& rows) {
  ExprMatrix m;
  for (const auto& r : rows) {
    std::vector<Expr> row;
    for (const char* s : r) row.push_back(E(s));
    m.push_back(row);
  }
  return m;
}

inline std::vector<Expr> exprs(const std::vector<const char*>& items) {
  std::vector<Expr> out;
  for (const char* s : items) out.push_back(E(s));
  return out;
}

inline double eval(const Expr& e, const Chart& chart, const Point& p, const ParameterSet& params = {}) {
  return evaluate(e, chart.coordinates(), p, params);
}

inline Chart hyperbolic_chart() { return Chart({"x", "y"}, {{"y", Interval{0.0}}}); }
inline Chart cone_chart() { return Chart({"x", "y", "z"}, {{"x", Interval{0.0}}}); }
inline Chart sasakian_chart() { return Chart({"x", "y", "z"}, {{"z", Interval{0.0, M_PI}}}); }
inline Chart euclidean_chart(std::size_t n) {
  std::vector<std::string> names = {"x", "y", "z", "u", "v"};
  names.resize(n);
  return Chart(names);
}

inline Geometry hyperbolic() { return Geometry(MetricField(hyperbolic_chart(), matrix({{"1/y^2", "0"}, {"0", "1/y^2"}}))); }
inline Geometry cone() {
  return Geometry(MetricField(cone_chart(), matrix({{"1", "0", "0"}, {"0", "x^2", "0"}, {"0", "0", "x^2"}})));
}
inline Geometry euclidean(std::size_t n) {
  ExprMatrix m(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Expr::number(1.0);
  return Geometry(MetricField(euclidean_chart(n), m));
}

// p = 4 e^y / (16 + e^2y), q = -e^2y / (16 + e^2y)
inline const char* kP = "4*exp(y)/(16+exp(2*y))";
inline const char* kQ = "-exp(2*y)/(16+exp(2*y))";

inline Expr p_expr() { return E(kP); }
inline Expr q_expr() { return E(kQ); }

inline Geometry sasakian() {
  const Expr p = p_expr(), q = q_expr();
  const Expr zero;
  const ExprMatrix g{{p * p + q * q, zero, -q}, {zero, p * p, zero}, {-q, zero, Expr::number(1.0)}};
  return Geometry(MetricField(sasakian_chart(), g));
}

/// phi^i_j as printed: column j is phi(d_j).
inline TensorField sasakian_phi(bool transposed = false) {
  const Expr q = q_expr();
  const Expr zero, one = Expr::number(1.0);
  std::vector<Expr> rows{zero, -one, zero, one, zero, zero, zero, -q, zero};
  if (transposed) {
    std::vector<Expr> t(9);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) t[i * 3 + j] = rows[j * 3 + i];
    }
    rows = t;
  }
  return TensorField(Valence::Endo, 3, rows);
}

inline TensorField sasakian_xi() { return vector_field(exprs({"0", "0", "1"})); }
inline TensorField sasakian_eta() { return one_form({-q_expr(), Expr(), Expr::number(1.0)}); }

inline AlmostContactStructure sasakian_structure() {
  return make_structure(sasakian(), sasakian_phi(), sasakian_xi(), sasakian_eta());
}

/// Potentials of the Sasakian example for (c1, c2, lambda) = (-1, 0, 1).
inline Expr sasakian_f1() { return E("(ln(16+exp(2*y)) - 2*ln(sin(z)))/2"); }
inline Expr sasakian_f2() { return E("-(2*ln(sin(z)) - ln(16+exp(2*y)))/2"); }

/// Central finite difference of `e` along coordinate `i`.
inline double central_difference(const Expr& e, const Chart& chart, Point p, std::size_t i, double h,
                                 const ParameterSet& params = {}) {
  const double x = p[i];
  p[i] = x + h;
  const double fp = eval(e, chart, p, params);
  p[i] = x - h;
  const double fm = eval(e, chart, p, params);
  return (fp - fm) / (2.0 * h);
}

/// Largest of |a - b| / max(1, |a|, |b|).
inline double scaled_gap(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace ricsol::test
