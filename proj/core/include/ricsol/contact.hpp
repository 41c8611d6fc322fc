#pragma once

#include <stdexcept>
#include <string>

#include "ricsol/residual.hpp"
#include "ricsol/tensor.hpp"

namespace ricsol {

/// Factor convention for the exterior derivative of a one-form:
/// Half:  d eta(X, Y) = 1/2 (X(eta(Y)) - Y(eta(X)) - eta([X, Y]))
/// Plain: d eta(X, Y) =      X(eta(Y)) - Y(eta(X)) - eta([X, Y])
enum class DConvention { Half, Plain };

const char* convention_name(DConvention c);

/// (phi, xi, eta, g) on one chart of dimension 2n+1.
///
/// phi is an Endo field stored as phi^i_j, so column j is phi(d/dx^j).
struct AlmostContactStructure {
  Geometry geometry;
  TensorField phi;
  TensorField xi;
  TensorField eta;
  std::size_t n = 0;

  const Chart& chart() const { return geometry.chart(); }
  const MetricField& metric() const { return geometry.metric(); }
  std::size_t dimension() const { return geometry.dimension(); }
};

/// Raised when a structure fails a precondition or an axiom.
class StructureError : public std::runtime_error {
 public:
  StructureError(std::string axiom, double residual, Point worst_point);
  const std::string& axiom() const { return axiom_; }
  double residual() const { return residual_; }
  const Point& worst_point() const { return worst_; }

 private:
  std::string axiom_;
  double residual_;
  Point worst_;
};

/// Bundles the fields after checking shapes and odd dimension, without
/// evaluating any axiom. Use this when failures should become report content.
AlmostContactStructure make_structure(Geometry geometry, TensorField phi, TensorField xi, TensorField eta);

/// Residuals of eta(xi) = 1, phi^2 = -Id + eta (x) xi,
/// g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y), phi xi = 0, eta o phi = 0.
CheckReport almost_contact_axioms(const AlmostContactStructure& s, const SampleSet& samples, double tolerance);

/// make_structure followed by the axiom check; throws StructureError naming
/// the worst axiom when any relative residual exceeds `tolerance`.
AlmostContactStructure assemble_structure(Geometry geometry, TensorField phi, TensorField xi, TensorField eta,
                                          const SampleSet& samples, double tolerance = 1e-8);

/// Phi(X, Y) = g(X, phi Y).
TensorField fundamental_form(const AlmostContactStructure& s);

TensorField exterior_derivative_oneform(const Chart& chart, const TensorField& eta,
                                        DConvention convention = DConvention::Half);

/// [phi, phi](d_i, d_j) = [phi d_i, phi d_j] - phi[phi d_i, d_j] - phi[d_i, phi d_j]
/// as a Tensor12 field [k][i][j] (coordinate brackets vanish).
TensorField nijenhuis_torsion(const AlmostContactStructure& s);

struct StructureFlags {
  bool almost_contact_metric = false;
  bool contact_metric = false;
  bool k_contact = false;
  bool normal = false;
  bool sasakian = false;
};

struct StructureReport {
  StructureFlags flags;
  /// Axioms ("structure.eta_xi", ...) and ladder conditions
  /// ("structure.contact", "structure.killing_xi", "structure.k_contact",
  /// "structure.normal", "structure.form_sas1").
  CheckReport checks;
  DConvention convention = DConvention::Half;
  /// True when the Sasakian flag agrees with the FormSas1 characterization.
  bool form_sas1_consistent = false;
};

/// Evaluates the ladder almost contact metric -> contact metric -> K-contact
/// -> normal -> Sasakian. Sasakian is reported only when contact metric,
/// normal and K-contact all hold, so the output is ladder-consistent.
StructureReport classify_structure(const AlmostContactStructure& s, const SampleSet& samples,
                                   double tolerance = 1e-8, DConvention convention = DConvention::Half);

/// Residuals of (nabla_X phi)Y = g(X, Y) xi - eta(Y) X ("form_sas1"),
/// nabla_X xi = -phi X ("form_sas2_xi"), (nabla_X eta)Y = -g(phi X, Y)
/// ("form_sas2_eta") and R(X, Y) xi = eta(Y) X - eta(X) Y ("curvature_xi")
/// over all coordinate fields.
CheckReport check_sasakian_identities(const AlmostContactStructure& s, const SampleSet& samples,
                                      double tolerance = 1e-8);

}  // namespace ricsol
