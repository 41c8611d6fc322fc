#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ricsol/chart.hpp"
#include "ricsol/expression.hpp"

namespace ricsol {

/// Index layout of a TensorField's component array (row-major):
///
///   Scalar     []            f
///   Vector     [k]           X^k
///   OneForm    [i]           a_i
///   Sym2       [i][j]        T_ij, symmetric
///   Form2      [i][j]        w_ij, antisymmetric
///   Covariant2 [i][j]        general (0,2) field
///   Endo       [i][j]        A^i_j, column j is the image of d/dx^j
///   Tensor12   [k][i][j]     N^k_ij
///   Curvature  [l][i][j][k]  R^l_ijk, R(d_i, d_j) d_k = R^l_ijk d_l
///   Covariant4 [l][i][j][k]  R_lijk = g_lm R^m_ijk
enum class Valence { Scalar, Vector, OneForm, Sym2, Form2, Covariant2, Endo, Tensor12, Curvature, Covariant4 };

std::size_t valence_rank(Valence v);
const char* valence_name(Valence v);

class TensorField {
 public:
  TensorField(Valence valence, std::size_t dimension, std::vector<Expr> components);
  static TensorField zero(Valence valence, std::size_t dimension);

  Valence valence() const { return valence_; }
  std::size_t dimension() const { return dim_; }
  std::size_t rank() const { return valence_rank(valence_); }
  std::span<const Expr> components() const { return components_; }

  const Expr& at() const { return components_[0]; }
  const Expr& at(std::size_t i) const { return components_[i]; }
  const Expr& at(std::size_t i, std::size_t j) const { return components_[i * dim_ + j]; }
  const Expr& at(std::size_t i, std::size_t j, std::size_t k) const {
    return components_[(i * dim_ + j) * dim_ + k];
  }
  const Expr& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return components_[((i * dim_ + j) * dim_ + k) * dim_ + l];
  }

 private:
  Valence valence_;
  std::size_t dim_;
  std::vector<Expr> components_;
};

TensorField scalar_field(std::size_t dimension, Expr f);
TensorField vector_field(std::vector<Expr> components);
TensorField one_form(std::vector<Expr> components);
/// The coordinate field d/dx^i.
TensorField coordinate_field(std::size_t dimension, std::size_t i);

/// Componentwise a + s*b for tensors of equal valence and dimension.
TensorField add(const TensorField& a, const TensorField& b, double s = 1.0);
TensorField scale(const TensorField& a, const Expr& s);

/// Levi-Civita connection coefficients, Gamma^k_ij at [k][i][j].
class ChristoffelSymbols {
 public:
  ChristoffelSymbols(std::size_t dimension, std::vector<Expr> components);
  std::size_t dimension() const { return dim_; }
  const Expr& at(std::size_t k, std::size_t i, std::size_t j) const { return gamma_[(k * dim_ + i) * dim_ + j]; }
  std::span<const Expr> components() const { return gamma_; }

 private:
  std::size_t dim_;
  std::vector<Expr> gamma_;
};

/// Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij); only i <= j is
/// derived, the rest mirrored, so the symbols are exactly symmetric.
ChristoffelSymbols christoffel(const MetricField& g);

/// R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik.
/// Every component is derived independently, so the algebraic symmetries are
/// genuine checks of the symbolic engine rather than construction artefacts.
TensorField riemann(const MetricField& g, const ChristoffelSymbols& gamma);

/// R_lijk = g_lm R^m_ijk.
TensorField lower_riemann(const MetricField& g, const TensorField& curvature);

/// Ric(X, Y) = g(R(X, e_a) e_a, Y), realized as g^ab R^l_jab g_lk.
TensorField ricci(const MetricField& g, const TensorField& curvature);

/// Metric plus the connection and curvature derived from it, built once.
class Geometry {
 public:
  explicit Geometry(MetricField metric);

  const MetricField& metric() const { return metric_; }
  const Chart& chart() const { return metric_.chart(); }
  std::size_t dimension() const { return metric_.dimension(); }
  const ChristoffelSymbols& christoffel() const { return gamma_; }
  const TensorField& riemann() const { return riemann_; }
  const TensorField& ricci() const { return ricci_; }
  /// g as a Sym2 field.
  TensorField metric_tensor() const;

 private:
  Geometry(MetricField metric, int);

  MetricField metric_;
  ChristoffelSymbols gamma_;
  TensorField riemann_;
  TensorField ricci_;
};

// Convenience forms of the derivations above.
TensorField riemann(const MetricField& g);
TensorField ricci(const MetricField& g);

/// X(f) for a vector field X.
Expr directional_derivative(const Chart& chart, const TensorField& x, const Expr& f);

/// df as a one-form.
TensorField differential(const Chart& chart, const Expr& f);

/// grad f, with g(grad f, X) = X(f): components g^ij d_j f.
TensorField gradient(const Geometry& geo, const Expr& f);

/// Hess f(X, Y) = g(nabla_X grad f, Y): d_i d_j f - G^k_ij d_k f.
TensorField hessian(const Geometry& geo, const Expr& f);

/// X_flat(Y) = g(X, Y).
TensorField musical_flat(const MetricField& g, const TensorField& x);
/// Inverse of musical_flat: (a_sharp)^i = g^ij a_j.
TensorField musical_sharp(const MetricField& g, const TensorField& a);

/// nabla_X Y for vector fields.
TensorField covariant_derivative(const Geometry& geo, const TensorField& x, const TensorField& y);

/// Full covariant derivative of a one-form: [i][j] = (nabla_i a)_j.
TensorField covariant_derivative_oneform(const Geometry& geo, const TensorField& a);

/// Full covariant derivative of an endomorphism field:
/// Tensor12 with [k][i][j] = (nabla_i A)^k_j.
TensorField covariant_derivative_endo(const Geometry& geo, const TensorField& a);

/// [X, Y]^k = X^i d_i Y^k - Y^i d_i X^k.
TensorField lie_bracket(const Chart& chart, const TensorField& x, const TensorField& y);

/// (L_X T)_ij = X^k d_k T_ij + T_kj d_i X^k + T_ik d_j X^k for a (0,2) field.
TensorField lie_derivative_sym2(const Chart& chart, const TensorField& t, const TensorField& x);

/// (a . b)_ij = 1/2 (a_i b_j + a_j b_i).
TensorField sym_product(const TensorField& a, const TensorField& b);

// Pointwise algebra.
Expr contract(const TensorField& form, const TensorField& x);  // a(X)
Expr bilinear(const TensorField& t, const TensorField& x, const TensorField& y);  // T(X, Y)
Expr inner(const MetricField& g, const TensorField& x, const TensorField& y);  // g(X, Y)
TensorField apply(const TensorField& endo, const TensorField& x);  // A X
TensorField compose(const TensorField& a, const TensorField& b);  // A o B
/// R(X, Y) Z for a Curvature field.
TensorField curvature_apply(const TensorField& r, const TensorField& x, const TensorField& y, const TensorField& z);

}  // namespace ricsol
