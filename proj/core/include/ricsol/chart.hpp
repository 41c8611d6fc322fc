#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ricsol/expression.hpp"

namespace ricsol {

using Point = std::vector<double>;

/// Open interval (lower, upper); either end may be infinite.
struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

/// Invalid chart, metric, or sampling request.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Distance kept from every finite end of a coordinate interval.
inline constexpr double kBoundaryMargin = 1e-3;
/// Half-width of the box that replaces an unbounded coordinate direction.
inline constexpr double kTruncation = 2.0;

/// A single coordinate chart: ordered coordinate names on an open box.
class Chart {
 public:
  /// Coordinates not mentioned in `bounds` are unbounded.
  Chart(std::vector<std::string> coordinates, const std::map<std::string, Interval>& bounds = {});

  std::size_t dimension() const { return coordinates_.size(); }
  const std::vector<std::string>& coordinates() const { return coordinates_; }
  const std::string& coordinate(std::size_t i) const { return coordinates_[i]; }
  const Interval& bounds(std::size_t i) const { return bounds_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Closed box actually sampled for coordinate `i` (margin and truncation
  /// applied).
  Interval sampling_box(std::size_t i) const;

  /// True when every coordinate lies strictly inside its interval with at
  /// least `margin` to each finite end.
  bool contains(std::span<const double> point, double margin = 0.0) const;

 private:
  std::vector<std::string> coordinates_;
  std::vector<Interval> bounds_;
};

enum class SamplingStrategy { UniformRandom, Grid };

/// Deterministic sample points inside the chart.
///
/// Unbounded directions are truncated to [-2, 2]; finite ends are pulled in
/// by 1e-3; a half-infinite direction covers [lo + 1e-3, lo + 2] (or the
/// mirror image). The grid strategy lays k points per axis on the sampling
/// box with k the smallest integer such that k^n >= count, and returns the
/// first `count` grid points in lexicographic order. `seed` is ignored for
/// the grid.
std::vector<Point> sample_points(const Chart& chart, SamplingStrategy strategy, std::size_t count,
                                 std::uint64_t seed = 0);

using ExprMatrix = std::vector<std::vector<Expr>>;

/// Riemannian metric g_ij on a chart, with symbolic inverse and determinant.
///
/// Construction validates the matrix at 100 seeded sample points: symmetric
/// to 1e-12, and positive definite (every leading principal minor > 0).
/// Entries below the diagonal are replaced by their mirror so downstream
/// tensors are exactly symmetric.
class MetricField {
 public:
  MetricField(Chart chart, const ExprMatrix& entries, const ParameterSet& params = {});

  const Chart& chart() const { return chart_; }
  std::size_t dimension() const { return chart_.dimension(); }
  const Expr& at(std::size_t i, std::size_t j) const { return g_[i * dimension() + j]; }
  const Expr& inverse(std::size_t i, std::size_t j) const { return inv_[i * dimension() + j]; }
  const Expr& determinant() const { return det_; }

  /// Row-major component views (n*n).
  std::span<const Expr> components() const { return g_; }
  std::span<const Expr> inverse_components() const { return inv_; }

 private:
  Chart chart_;
  std::vector<Expr> g_;
  std::vector<Expr> inv_;
  Expr det_;
};

/// Symbolic determinant by cofactor expansion (row-major square matrix).
Expr symbolic_determinant(std::span<const Expr> matrix, std::size_t n);

/// Numeric metric values at a point, row-major.
std::vector<double> metric_at(const MetricField& g, std::span<const double> point, const ParameterSet& params = {});

/// Numeric inverse of g at `point` (dense LU, independent of the symbolic
/// adjugate). Throws GeometryError when g is singular there.
std::vector<double> metric_inverse_at(const MetricField& g, std::span<const double> point,
                                      const ParameterSet& params = {});

}  // namespace ricsol
