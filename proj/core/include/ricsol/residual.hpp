#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ricsol/chart.hpp"
#include "ricsol/expression.hpp"

namespace ricsol {

/// Where a check is evaluated: sample points plus the constants bound
/// while evaluating.
struct SampleSet {
  std::vector<Point> points;
  ParameterSet params;
};

/// How to draw a SampleSet from a chart.
struct SamplingPlan {
  SamplingStrategy strategy = SamplingStrategy::UniformRandom;
  std::size_t count = 1000;
  std::uint64_t seed = 42;
};

SampleSet make_samples(const Chart& chart, const SamplingPlan& plan, ParameterSet params = {});

struct DomainFailure {
  Point point;
  std::string message;
};

/// Sup-norm statistics of a residual field over a sample set.
///
/// The relative norm divides by max(1, sup |lhs|), where lhs is the left-hand
/// side the residual was formed from, so identically-zero instances never
/// divide by zero. pass <=> rel_sup <= tolerance (and at least one point was
/// evaluated).
struct ResidualReport {
  std::string name;
  std::vector<Expr> residual;  // symbolic residual components
  std::vector<double> component_sup;
  double abs_sup = 0.0;
  double rel_sup = 0.0;
  double lhs_sup = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::size_t points_evaluated = 0;
  Point worst_point;
  std::vector<DomainFailure> domain_failures;
};

/// A named collection of residual reports.
struct CheckReport {
  std::vector<ResidualReport> entries;

  bool pass() const;
  const ResidualReport* find(std::string_view name) const;
  const ResidualReport& at(std::string_view name) const;
  /// Largest relative residual across entries.
  double worst_rel() const;
};

/// Evaluates `residual` (and `lhs` for normalization) at every sample point.
/// Points where evaluation leaves an expression's domain are recorded and
/// skipped.
ResidualReport measure(std::string name, std::span<const Expr> residual, std::span<const Expr> lhs,
                       const Chart& chart, const SampleSet& samples, double tolerance);

/// Evaluates `exprs` at every point; throws DomainError on the first failure.
std::vector<std::vector<double>> evaluate_all(std::span<const Expr> exprs, const Chart& chart,
                                              const SampleSet& samples);

}  // namespace ricsol
