#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ricsol/residual.hpp"
#include "ricsol/soliton.hpp"

namespace ricsol {

using Triple = std::array<double, 3>;  // (c1, c2, lambda)

/// The soliton equation is linear in (c1, c2, lambda):
///
///   c1 (df2 . df2) + c2 (-Ric) + lambda (-g) = -Hess f1
///
/// One row per independent component (i <= j) per sample point.
struct FitSystem {
  std::vector<Triple> rows;
  std::vector<double> target;
  std::size_t points_used = 0;
  std::vector<DomainFailure> domain_failures;

  /// sup_k |A_k c - b_k|
  double residual_sup(const Triple& c) const;
  /// sup_k |b_k|
  double target_sup() const;
};

FitSystem assemble_fit_system(const Geometry& geo, const Expr& f1, const Expr& f2, const SampleSet& samples);

struct FitResult {
  /// Minimum-norm least-squares solution.
  Triple solution{};
  std::size_t rank = 0;
  /// Orthonormal basis of the null space of the design matrix (restricted
  /// to the free constants).
  std::vector<Triple> null_space;
  std::array<bool, 3> fixed{};
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  std::size_t rows = 0;
  std::size_t points_used = 0;
  std::vector<DomainFailure> domain_failures;
};

/// Relative threshold on the eigenvalues of the (column-equilibrated)
/// normal matrix below which a direction counts as null.
inline constexpr double kRankThreshold = 1e-10;

/// Least squares for the free constants. `fixed[k]`, when set, pins constant k
/// to that value; the remaining ones are solved for.
FitResult fit_constants(const FitSystem& system, const std::array<std::optional<double>, 3>& fixed = {});

FitResult fit_constants(const Geometry& geo, const Expr& f1, const Expr& f2, const SampleSet& samples,
                        const std::array<std::optional<double>, 3>& fixed = {});

/// |(I - N N^T)(c - solution)|: distance from c to the fitted solution set.
double membership_distance(const FitResult& fit, const Triple& c);

/// A soliton instance generated from potential templates that may mention
/// the symbols c1, c2 and lambda.
struct ManufacturedInstance {
  SolitonSpec spec;
  SolitonConstants constants;
  Expr f1;
  Expr f2;
  /// Fit of all three constants on the plan's sample points.
  FitResult expected;
  /// Manifest document reproducing the instance with numeric potentials.
  nlohmann::json manifest;
};

ManufacturedInstance manufacture_instance(const Geometry& geo, const Expr& f1_template, const Expr& f2_template,
                                          const SolitonConstants& constants, const SamplingPlan& plan);

}  // namespace ricsol
