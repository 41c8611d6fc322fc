#include "ricsol/soliton.hpp"

#include <cmath>

namespace ricsol {

namespace {

std::vector<Expr> upper_triangle(const TensorField& t) {
  const std::size_t n = t.dimension();
  std::vector<Expr> out;
  out.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) out.push_back(t.at(i, j));
  }
  return out;
}

std::vector<Expr> components(const TensorField& t) { return {t.components().begin(), t.components().end()}; }

/// d_i - eta(d_i) xi
TensorField transverse(const AlmostContactStructure& s, std::size_t i) {
  const std::size_t n = s.dimension();
  std::vector<Expr> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = Expr::number(k == i ? 1.0 : 0.0) - s.eta.at(i) * s.xi.at(k);
  return vector_field(std::move(c));
}

}  // namespace

TensorField gradient_form_tensor(const Geometry& geo, const Expr& f1, const Expr& f2, const SolitonConstants& c) {
  const TensorField hess = hessian(geo, f1);
  const TensorField df2 = differential(geo.chart(), f2);
  TensorField r = add(hess, sym_product(df2, df2), c.c1);
  r = add(r, geo.ricci(), -c.c2);
  return add(r, geo.metric_tensor(), -c.lambda);
}

TensorField vector_form_tensor(const Geometry& geo, const TensorField& x1, const TensorField& x2,
                               const SolitonConstants& c) {
  const TensorField lie = lie_derivative_sym2(geo.chart(), geo.metric_tensor(), x1);
  const TensorField flat = musical_flat(geo.metric(), x2);
  TensorField r = add(lie, sym_product(flat, flat), 2.0 * c.c1);
  r = add(r, geo.ricci(), -2.0 * c.c2);
  return add(r, geo.metric_tensor(), -2.0 * c.lambda);
}

ResidualReport residual_gradient_form(const SolitonSpec& spec, const SampleSet& samples, double tolerance) {
  const auto& p = std::get<GradientPotentials>(spec.potentials);
  const TensorField r = gradient_form_tensor(spec.geometry, p.f1, p.f2, spec.constants);
  const TensorField hess = hessian(spec.geometry, p.f1);
  return measure("soliton_gradient", components(r), upper_triangle(hess), spec.geometry.chart(), samples, tolerance);
}

ResidualReport residual_vector_form(const SolitonSpec& spec, const SampleSet& samples, double tolerance) {
  const auto& p = std::get<VectorPotentials>(spec.potentials);
  const TensorField r = vector_form_tensor(spec.geometry, p.x1, p.x2, spec.constants);
  const TensorField lie = lie_derivative_sym2(spec.geometry.chart(), spec.geometry.metric_tensor(), p.x1);
  return measure("soliton_vector", components(r), upper_triangle(lie), spec.geometry.chart(), samples, tolerance);
}

ZetaResult zeta_condition(const AlmostContactStructure& s, const Expr& f1, const Expr& f2, double c1,
                          const SampleSet& samples, double tolerance) {
  const Chart& chart = s.chart();
  const std::size_t n = s.dimension();
  const TensorField grad1 = gradient(s.geometry, f1);
  const TensorField grad2 = gradient(s.geometry, f2);
  const Expr xf2 = directional_derivative(chart, s.xi, f2);
  const Expr xxf2 = directional_derivative(chart, s.xi, xf2);
  const TensorField nabla = covariant_derivative(s.geometry, s.xi, grad2);

  std::vector<Expr> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = grad1.at(k) + c1 * xxf2 * grad2.at(k) - c1 * xf2 * nabla.at(k);
  const Expr xf1 = directional_derivative(chart, s.xi, f1);

  std::vector<Expr> res(n);
  for (std::size_t k = 0; k < n; ++k) res[k] = z[k] - xf1 * s.xi.at(k);
  ResidualReport report = measure("theorem_zeta", res, z, chart, samples, tolerance);
  return ZetaResult{vector_field(std::move(z)), xf1, std::move(report)};
}

ResidualReport lemma3_check(const AlmostContactStructure& s, const Expr& f1, const Expr& f2,
                            const SolitonConstants& c, const SampleSet& samples, double tolerance) {
  const std::size_t n = s.dimension();
  const TensorField grad1 = gradient(s.geometry, f1);
  const TensorField grad2 = gradient(s.geometry, f2);
  const TensorField lhs = covariant_derivative(s.geometry, s.xi, grad1);
  const Expr xf2 = directional_derivative(s.chart(), s.xi, f2);
  const double k = c.lambda + 2.0 * c.c2 * static_cast<double>(s.n);
  std::vector<Expr> res(n);
  for (std::size_t i = 0; i < n; ++i) res[i] = lhs.at(i) - k * s.xi.at(i) + c.c1 * xf2 * grad2.at(i);
  return measure("lemma3", res, components(lhs), s.chart(), samples, tolerance);
}

ResidualReport ricci_xi_check(const AlmostContactStructure& s, const SampleSet& samples, double tolerance) {
  const std::size_t n = s.dimension();
  const TensorField& ric = s.geometry.ricci();
  const double two_n = 2.0 * static_cast<double>(s.n);
  std::vector<Expr> res(n), lhs(n);
  for (std::size_t j = 0; j < n; ++j) {
    Expr acc;
    for (std::size_t i = 0; i < n; ++i) {
      if (!s.xi.at(i).is_zero()) acc = acc + s.xi.at(i) * ric.at(i, j);
    }
    lhs[j] = acc;
    res[j] = acc - two_n * s.eta.at(j);
  }
  return measure("ricci_xi", res, lhs, s.chart(), samples, tolerance);
}

CheckReport proof_identities_check(const AlmostContactStructure& s, const Expr& f1, const Expr& f2, double c1,
                                   const SampleSet& samples, double tolerance) {
  const Chart& chart = s.chart();
  const std::size_t n = s.dimension();
  const auto& g = s.metric();
  const TensorField x1 = gradient(s.geometry, f1);
  CheckReport report;

  // Lemma 1
  const TensorField lx1g = lie_derivative_sym2(chart, s.geometry.metric_tensor(), x1);
  const TensorField lxi_lx1g = lie_derivative_sym2(chart, lx1g, s.xi);
  const TensorField nx = covariant_derivative(s.geometry, s.xi, x1);
  const TensorField nnx = covariant_derivative(s.geometry, s.xi, nx);
  const Expr h = inner(g, nx, s.xi);
  std::vector<Expr> res, lhs;
  for (std::size_t i = 0; i < n; ++i) {
    const TensorField y = transverse(s, i);
    const Expr left = bilinear(lxi_lx1g, y, s.xi);
    const Expr right = inner(g, x1, y) + inner(g, nnx, y) + directional_derivative(chart, y, h);
    res.push_back(left - right);
    lhs.push_back(left);
  }
  report.entries.push_back(measure("lemma1", res, lhs, chart, samples, tolerance));

  // Lemma 2
  const TensorField df2 = differential(chart, f2);
  const TensorField lxi_t = lie_derivative_sym2(chart, sym_product(df2, df2), s.xi);
  const Expr xf2 = directional_derivative(chart, s.xi, f2);
  const Expr xxf2 = directional_derivative(chart, s.xi, xf2);
  res.clear();
  lhs.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const TensorField y = coordinate_field(n, i);
    const Expr left = bilinear(lxi_t, y, s.xi);
    const Expr right = directional_derivative(chart, y, xf2) * xf2 + directional_derivative(chart, y, f2) * xxf2;
    res.push_back(left - right);
    lhs.push_back(left);
  }
  report.entries.push_back(measure("lemma2", res, lhs, chart, samples, tolerance));

  // Reduced form of the Lie-differentiated soliton equation
  const TensorField ngrad2 = covariant_derivative(s.geometry, s.xi, gradient(s.geometry, f2));
  res.clear();
  lhs.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const TensorField y = transverse(s, i);
    const Expr yf1 = directional_derivative(chart, y, f1);
    res.push_back(yf1 + c1 * xxf2 * directional_derivative(chart, y, f2) - c1 * xf2 * inner(g, ngrad2, y));
    lhs.push_back(yf1);
  }
  report.entries.push_back(measure("reduction_identity", res, lhs, chart, samples, tolerance));
  return report;
}

std::set<std::string> classify_constants(const SolitonConstants& c, std::size_t dimension) {
  constexpr double tol = 1e-12;
  auto eq = [](double a, double b) { return std::abs(a - b) <= tol; };
  const double n = static_cast<double>(dimension);
  std::set<std::string> labels;
  if (eq(c.c1, 0) && eq(c.c2, 0) && eq(c.lambda, 0)) labels.insert("Killing");
  if (eq(c.c1, 0) && eq(c.c2, 0)) labels.insert("homothety");
  if (eq(c.c1, 0) && eq(c.c2, -1)) labels.insert("Ricci soliton");
  if (dimension >= 3 && eq(c.c1, 1) && eq(c.c2, -1.0 / (n - 2.0))) labels.insert("Einstein-Weyl");
  if (dimension >= 3 && eq(c.c1, 1) && eq(c.c2, -1.0 / (n - 1.0)) && eq(c.lambda, 0)) {
    labels.insert("projective");
  }
  if (eq(c.c1, 1) && eq(c.c2, 0.5)) labels.insert("vacuum near-horizon");
  return labels;
}

}  // namespace ricsol
