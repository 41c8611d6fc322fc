#pragma once

#include <set>
#include <string>
#include <variant>

#include "ricsol/contact.hpp"
#include "ricsol/residual.hpp"
#include "ricsol/tensor.hpp"

namespace ricsol {

struct SolitonConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double lambda = 0.0;
};

/// Hess f1 = -c1 df2 . df2 + c2 Ric + lambda g
struct GradientPotentials {
  Expr f1;
  Expr f2;
};

/// L_{X1} g = -2 c1 X2_flat . X2_flat + 2 c2 Ric + 2 lambda g
struct VectorPotentials {
  TensorField x1;
  TensorField x2;
};

struct SolitonSpec {
  Geometry geometry;
  std::variant<GradientPotentials, VectorPotentials> potentials;
  SolitonConstants constants;

  bool gradient_mode() const { return std::holds_alternative<GradientPotentials>(potentials); }
};

/// Residual Hess f1 + c1 df2 . df2 - c2 Ric - lambda g, normalized by
/// sup |Hess f1|. Named "soliton_gradient".
ResidualReport residual_gradient_form(const SolitonSpec& spec, const SampleSet& samples, double tolerance);

/// Residual L_{X1} g + 2 c1 X2_flat . X2_flat - 2 c2 Ric - 2 lambda g,
/// normalized by sup |L_{X1} g|. Named "soliton_vector".
ResidualReport residual_vector_form(const SolitonSpec& spec, const SampleSet& samples, double tolerance);

/// The symbolic residual tensors behind the two reports above.
TensorField gradient_form_tensor(const Geometry& geo, const Expr& f1, const Expr& f2, const SolitonConstants& c);
TensorField vector_form_tensor(const Geometry& geo, const TensorField& x1, const TensorField& x2,
                               const SolitonConstants& c);

struct ZetaResult {
  /// zeta = grad f1 + c1 xi(xi(f2)) grad f2 - c1 xi(f2) nabla_xi grad f2
  TensorField zeta;
  /// xi(f1)
  Expr xi_f1;
  /// zeta - xi(f1) xi, named "theorem_zeta".
  ResidualReport report;
};

ZetaResult zeta_condition(const AlmostContactStructure& s, const Expr& f1, const Expr& f2, double c1,
                          const SampleSet& samples, double tolerance);

/// nabla_xi grad f1 - (lambda + 2 c2 n) xi + c1 xi(f2) grad f2, named "lemma3".
/// Assumes, but does not check, that the soliton equation holds.
ResidualReport lemma3_check(const AlmostContactStructure& s, const Expr& f1, const Expr& f2,
                            const SolitonConstants& c, const SampleSet& samples, double tolerance);

/// Ric(xi, d_j) - 2n eta_j, named "ricci_xi".
ResidualReport ricci_xi_check(const AlmostContactStructure& s, const SampleSet& samples, double tolerance);

/// Three identities from the proof of the ζ-condition:
///   "lemma1": (L_xi(L_{X1} g))(Y, xi) = g(X1, Y) + g(nabla_xi nabla_xi X1, Y)
///             + Y g(nabla_xi X1, xi), with X1 = grad f1 and
///             Y = d_i - eta(d_i) xi;
///   "lemma2": (L_xi(df2 . df2))(Y, xi) = Y(xi(f2)) xi(f2) + Y(f2) xi(xi(f2))
///             for Y = d_i;
///   "reduction_identity": Y(f1) + c1 xi(xi(f2)) Y(f2)
///             - c1 xi(f2) g(nabla_xi grad f2, Y) = 0 for Y = d_i - eta(d_i) xi.
CheckReport proof_identities_check(const AlmostContactStructure& s, const Expr& f1, const Expr& f2, double c1,
                                   const SampleSet& samples, double tolerance);

/// Named special cases of the generalised soliton equation matched by the
/// constants (comparison tolerance 1e-12). Einstein-Weyl and projective need
/// dimension >= 3.
std::set<std::string> classify_constants(const SolitonConstants& c, std::size_t dimension);

}  // namespace ricsol
