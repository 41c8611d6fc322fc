#include "ricsol/contact.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace ricsol {

namespace {

std::string describe(const std::string& axiom, double residual, const Point& worst) {
  if (worst.empty()) return fmt::format("structure check '{}' failed", axiom);
  return fmt::format("structure check '{}' failed: residual {:.3e} at ({})", axiom, residual,
                     fmt::join(worst, ", "));
}

TensorField column(const TensorField& endo, std::size_t j) {
  const std::size_t n = endo.dimension();
  std::vector<Expr> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = endo.at(k, j);
  return vector_field(std::move(c));
}

Expr delta(std::size_t i, std::size_t j) { return Expr::number(i == j ? 1.0 : 0.0); }

ResidualReport run(const std::string& name, const std::vector<Expr>& residual, const std::vector<Expr>& lhs,
                   const AlmostContactStructure& s, const SampleSet& samples, double tolerance) {
  return measure(name, residual, lhs, s.chart(), samples, tolerance);
}

}  // namespace

const char* convention_name(DConvention c) { return c == DConvention::Half ? "half" : "plain"; }

StructureError::StructureError(std::string axiom, double residual, Point worst_point)
    : std::runtime_error(describe(axiom, residual, worst_point)),
      axiom_(std::move(axiom)),
      residual_(residual),
      worst_(std::move(worst_point)) {}

AlmostContactStructure make_structure(Geometry geometry, TensorField phi, TensorField xi, TensorField eta) {
  const std::size_t dim = geometry.dimension();
  if (dim % 2 == 0) throw StructureError("odd-dimension", 0.0, {});
  if (phi.valence() != Valence::Endo || phi.dimension() != dim) throw StructureError("phi-shape", 0.0, {});
  if (xi.valence() != Valence::Vector || xi.dimension() != dim) throw StructureError("xi-shape", 0.0, {});
  if (eta.valence() != Valence::OneForm || eta.dimension() != dim) throw StructureError("eta-shape", 0.0, {});
  return AlmostContactStructure{std::move(geometry), std::move(phi), std::move(xi), std::move(eta), (dim - 1) / 2};
}

CheckReport almost_contact_axioms(const AlmostContactStructure& s, const SampleSet& samples, double tolerance) {
  const std::size_t n = s.dimension();
  const auto& g = s.metric();
  CheckReport report;

  const Expr eta_xi = contract(s.eta, s.xi);
  report.entries.push_back(run("structure.eta_xi", {eta_xi - 1.0}, {eta_xi}, s, samples, tolerance));

  const TensorField phi2 = compose(s.phi, s.phi);
  std::vector<Expr> res, lhs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      res.push_back(phi2.at(i, j) + delta(i, j) - s.xi.at(i) * s.eta.at(j));
      lhs.push_back(phi2.at(i, j));
    }
  }
  report.entries.push_back(run("structure.phi_squared", res, lhs, s, samples, tolerance));

  res.clear();
  lhs.clear();
  std::vector<TensorField> columns;
  for (std::size_t j = 0; j < n; ++j) columns.push_back(column(s.phi, j));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Expr gpp = inner(g, columns[i], columns[j]);
      res.push_back(gpp - g.at(i, j) + s.eta.at(i) * s.eta.at(j));
      lhs.push_back(gpp);
    }
  }
  report.entries.push_back(run("structure.compatibility", res, lhs, s, samples, tolerance));

  const TensorField phi_xi = apply(s.phi, s.xi);
  std::vector<Expr> pxi(phi_xi.components().begin(), phi_xi.components().end());
  report.entries.push_back(run("structure.phi_xi", pxi, {}, s, samples, tolerance));

  res.clear();
  for (std::size_t j = 0; j < n; ++j) res.push_back(contract(s.eta, columns[j]));
  report.entries.push_back(run("structure.eta_phi", res, {}, s, samples, tolerance));
  return report;
}

AlmostContactStructure assemble_structure(Geometry geometry, TensorField phi, TensorField xi, TensorField eta,
                                          const SampleSet& samples, double tolerance) {
  auto s = make_structure(std::move(geometry), std::move(phi), std::move(xi), std::move(eta));
  const CheckReport axioms = almost_contact_axioms(s, samples, tolerance);
  const ResidualReport* worst = nullptr;
  for (const auto& e : axioms.entries) {
    if (!e.pass && (worst == nullptr || e.rel_sup > worst->rel_sup)) worst = &e;
  }
  if (worst != nullptr) throw StructureError(worst->name, worst->rel_sup, worst->worst_point);
  return s;
}

TensorField fundamental_form(const AlmostContactStructure& s) {
  const std::size_t n = s.dimension();
  std::vector<Expr> c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Expr acc;
      for (std::size_t a = 0; a < n; ++a) acc = acc + s.metric().at(i, a) * s.phi.at(a, j);
      c[i * n + j] = acc;
    }
  }
  return TensorField(Valence::Form2, n, std::move(c));
}

TensorField exterior_derivative_oneform(const Chart& chart, const TensorField& eta, DConvention convention) {
  if (eta.valence() != Valence::OneForm) throw std::invalid_argument("exterior_derivative_oneform expects a one-form");
  const std::size_t n = chart.dimension();
  const double factor = convention == DConvention::Half ? 0.5 : 1.0;
  std::vector<Expr> c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Expr v = factor * (differentiate(eta.at(j), chart.coordinate(i)) -
                               differentiate(eta.at(i), chart.coordinate(j)));
      c[i * n + j] = v;
      c[j * n + i] = -v;
    }
  }
  return TensorField(Valence::Form2, n, std::move(c));
}

TensorField nijenhuis_torsion(const AlmostContactStructure& s) {
  const std::size_t n = s.dimension();
  const Chart& chart = s.chart();
  std::vector<TensorField> pe;
  for (std::size_t j = 0; j < n; ++j) pe.push_back(column(s.phi, j));
  std::vector<Expr> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const TensorField ei = coordinate_field(n, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const TensorField ej = coordinate_field(n, j);
      const TensorField a = lie_bracket(chart, pe[i], pe[j]);
      const TensorField b = apply(s.phi, lie_bracket(chart, pe[i], ej));
      const TensorField d = apply(s.phi, lie_bracket(chart, ei, pe[j]));
      for (std::size_t k = 0; k < n; ++k) {
        const Expr v = a.at(k) - b.at(k) - d.at(k);
        c[(k * n + i) * n + j] = v;
        c[(k * n + j) * n + i] = -v;
      }
    }
  }
  return TensorField(Valence::Tensor12, n, std::move(c));
}

StructureReport classify_structure(const AlmostContactStructure& s, const SampleSet& samples, double tolerance,
                                   DConvention convention) {
  const std::size_t n = s.dimension();
  StructureReport report;
  report.convention = convention;
  report.checks = almost_contact_axioms(s, samples, tolerance);
  auto& entries = report.checks.entries;

  const TensorField phi_form = fundamental_form(s);
  const TensorField deta = exterior_derivative_oneform(s.chart(), s.eta, convention);
  std::vector<Expr> res, lhs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      res.push_back(deta.at(i, j) - phi_form.at(i, j));
      lhs.push_back(deta.at(i, j));
    }
  }
  entries.push_back(run("structure.contact", res, lhs, s, samples, tolerance));

  const TensorField lxg = lie_derivative_sym2(s.chart(), s.geometry.metric_tensor(), s.xi);
  res.clear();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) res.push_back(lxg.at(i, j));
  }
  entries.push_back(run("structure.killing_xi", res, {}, s, samples, tolerance));

  res.clear();
  lhs.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const TensorField nabla = covariant_derivative(s.geometry, coordinate_field(n, i), s.xi);
    for (std::size_t k = 0; k < n; ++k) {
      res.push_back(nabla.at(k) + s.phi.at(k, i));
      lhs.push_back(nabla.at(k));
    }
  }
  entries.push_back(run("structure.k_contact", res, lhs, s, samples, tolerance));

  const TensorField nij = nijenhuis_torsion(s);
  res.clear();
  lhs.clear();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        res.push_back(nij.at(k, i, j) + 2.0 * deta.at(i, j) * s.xi.at(k));
        lhs.push_back(nij.at(k, i, j));
      }
    }
  }
  entries.push_back(run("structure.normal", res, lhs, s, samples, tolerance));

  const CheckReport sas = check_sasakian_identities(s, samples, tolerance);
  ResidualReport fs1 = sas.at("form_sas1");
  fs1.name = "structure.form_sas1";
  entries.push_back(std::move(fs1));

  auto passed = [&](std::string_view name) { return report.checks.at(name).pass; };
  StructureFlags& f = report.flags;
  f.almost_contact_metric = passed("structure.eta_xi") && passed("structure.phi_squared") &&
                            passed("structure.compatibility") && passed("structure.phi_xi") &&
                            passed("structure.eta_phi");
  f.contact_metric = f.almost_contact_metric && passed("structure.contact");
  f.k_contact = f.contact_metric && passed("structure.killing_xi") && passed("structure.k_contact");
  f.normal = f.almost_contact_metric && passed("structure.normal");
  f.sasakian = f.contact_metric && f.normal && f.k_contact;
  report.form_sas1_consistent = f.sasakian == (f.almost_contact_metric && passed("structure.form_sas1"));
  return report;
}

CheckReport check_sasakian_identities(const AlmostContactStructure& s, const SampleSet& samples, double tolerance) {
  const std::size_t n = s.dimension();
  const auto& g = s.metric();
  CheckReport report;

  const TensorField nphi = covariant_derivative_endo(s.geometry, s.phi);
  std::vector<Expr> res, lhs;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Expr rhs = g.at(i, j) * s.xi.at(k) - s.eta.at(j) * delta(k, i);
        res.push_back(nphi.at(k, i, j) - rhs);
        lhs.push_back(nphi.at(k, i, j));
      }
    }
  }
  report.entries.push_back(run("form_sas1", res, lhs, s, samples, tolerance));

  res.clear();
  lhs.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const TensorField nabla = covariant_derivative(s.geometry, coordinate_field(n, i), s.xi);
    for (std::size_t k = 0; k < n; ++k) {
      res.push_back(nabla.at(k) + s.phi.at(k, i));
      lhs.push_back(nabla.at(k));
    }
  }
  report.entries.push_back(run("form_sas2_xi", res, lhs, s, samples, tolerance));

  const TensorField neta = covariant_derivative_oneform(s.geometry, s.eta);
  res.clear();
  lhs.clear();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Expr g_phi;  // g(phi d_i, d_j)
      for (std::size_t a = 0; a < n; ++a) g_phi = g_phi + g.at(a, j) * s.phi.at(a, i);
      res.push_back(neta.at(i, j) + g_phi);
      lhs.push_back(neta.at(i, j));
    }
  }
  report.entries.push_back(run("form_sas2_eta", res, lhs, s, samples, tolerance));

  const TensorField& r = s.geometry.riemann();
  res.clear();
  lhs.clear();
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Expr rxi;
        for (std::size_t k = 0; k < n; ++k) {
          if (!s.xi.at(k).is_zero()) rxi = rxi + r.at(l, i, j, k) * s.xi.at(k);
        }
        res.push_back(rxi - s.eta.at(j) * delta(l, i) + s.eta.at(i) * delta(l, j));
        lhs.push_back(rxi);
      }
    }
  }
  report.entries.push_back(run("curvature_xi", res, lhs, s, samples, tolerance));
  return report;
}

}  // namespace ricsol
