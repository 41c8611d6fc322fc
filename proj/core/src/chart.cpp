#include "ricsol/chart.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <set>

#include "ricsol/program.hpp"

namespace ricsol {

Chart::Chart(std::vector<std::string> coordinates, const std::map<std::string, Interval>& bounds)
    : coordinates_(std::move(coordinates)) {
  if (coordinates_.empty()) throw GeometryError("chart needs at least one coordinate");
  std::set<std::string> seen;
  for (const auto& name : coordinates_) {
    if (name.empty()) throw GeometryError("empty coordinate name");
    if (!seen.insert(name).second) throw GeometryError("duplicate coordinate '" + name + "'");
  }
  bounds_.assign(coordinates_.size(), Interval{});
  for (const auto& [name, interval] : bounds) {
    const auto i = index_of(name);
    if (!i) throw GeometryError("bounds given for unknown coordinate '" + name + "'");
    if (!(interval.lower < interval.upper)) {
      throw GeometryError("inverted bounds for coordinate '" + name + "'");
    }
    bounds_[*i] = interval;
  }
}

std::optional<std::size_t> Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < coordinates_.size(); ++i) {
    if (coordinates_[i] == name) return i;
  }
  return std::nullopt;
}

Interval Chart::sampling_box(std::size_t i) const {
  const Interval& b = bounds_[i];
  const bool lo = std::isfinite(b.lower);
  const bool hi = std::isfinite(b.upper);
  Interval box;
  if (lo && hi) {
    box = {b.lower + kBoundaryMargin, b.upper - kBoundaryMargin};
  } else if (lo) {
    box = {b.lower + kBoundaryMargin, b.lower + kTruncation};
  } else if (hi) {
    box = {b.upper - kTruncation, b.upper - kBoundaryMargin};
  } else {
    box = {-kTruncation, kTruncation};
  }
  if (!(box.lower <= box.upper)) {
    throw GeometryError("empty sampling box for coordinate '" + coordinates_[i] + "'");
  }
  return box;
}

bool Chart::contains(std::span<const double> point, double margin) const {
  if (point.size() != dimension()) return false;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!(point[i] >= bounds_[i].lower + margin && point[i] <= bounds_[i].upper - margin)) return false;
    if (!(point[i] > bounds_[i].lower && point[i] < bounds_[i].upper)) return false;
  }
  return true;
}

std::vector<Point> sample_points(const Chart& chart, SamplingStrategy strategy, std::size_t count,
                                 std::uint64_t seed) {
  if (count == 0) throw GeometryError("sample count must be positive");
  const std::size_t n = chart.dimension();
  std::vector<Interval> boxes;
  boxes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) boxes.push_back(chart.sampling_box(i));

  std::vector<Point> points;
  points.reserve(count);
  if (strategy == SamplingStrategy::UniformRandom) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t p = 0; p < count; ++p) {
      Point pt(n);
      for (std::size_t i = 0; i < n; ++i) pt[i] = boxes[i].lower + unit(rng) * (boxes[i].upper - boxes[i].lower);
      points.push_back(std::move(pt));
    }
    return points;
  }

  std::size_t per_axis = 1;
  auto capacity = [&](std::size_t k) {
    double total = 1.0;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(k);
    return total;
  };
  while (capacity(per_axis) < static_cast<double>(count)) ++per_axis;

  auto axis_value = [&](std::size_t axis, std::size_t k) {
    const Interval& b = boxes[axis];
    if (per_axis == 1) return 0.5 * (b.lower + b.upper);
    return b.lower + (b.upper - b.lower) * static_cast<double>(k) / static_cast<double>(per_axis - 1);
  };
  std::vector<std::size_t> index(n, 0);
  for (std::size_t p = 0; p < count; ++p) {
    Point pt(n);
    for (std::size_t i = 0; i < n; ++i) pt[i] = axis_value(i, index[i]);
    points.push_back(std::move(pt));
    for (std::size_t i = n; i-- > 0;) {
      if (++index[i] < per_axis) break;
      index[i] = 0;
    }
  }
  return points;
}

// ---------------------------------------------------------------------------

Expr symbolic_determinant(std::span<const Expr> m, std::size_t n) {
  if (n == 1) return m[0];
  if (n == 2) return m[0] * m[3] - m[1] * m[2];
  Expr det;
  std::vector<Expr> minor((n - 1) * (n - 1));
  for (std::size_t col = 0; col < n; ++col) {
    if (m[col].is_zero()) continue;
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t c2 = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == col) continue;
        minor[(r - 1) * (n - 1) + c2++] = m[r * n + c];
      }
    }
    const Expr term = m[col] * symbolic_determinant(minor, n - 1);
    det = (col % 2 == 0) ? det + term : det - term;
  }
  return det;
}

namespace {

constexpr std::size_t kValidationPoints = 100;
constexpr std::uint64_t kValidationSeed = 0x5eed;
constexpr double kSymmetryTolerance = 1e-12;

bool leading_minors_positive(const Eigen::MatrixXd& g) {
  for (Eigen::Index k = 1; k <= g.rows(); ++k) {
    if (!(g.topLeftCorner(k, k).determinant() > 0.0)) return false;
  }
  return true;
}

}  // namespace

MetricField::MetricField(Chart chart, const ExprMatrix& entries, const ParameterSet& params)
    : chart_(std::move(chart)) {
  const std::size_t n = chart_.dimension();
  if (n > 5) throw GeometryError("metrics are limited to dimension <= 5");
  if (entries.size() != n) throw GeometryError("metric must have one row per coordinate");
  for (const auto& row : entries) {
    if (row.size() != n) throw GeometryError("metric must be square");
  }

  // Symmetry: structurally equal entries need no numeric check.
  std::vector<std::pair<std::size_t, std::size_t>> numeric_pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Expr& a = entries[i][j];
      const Expr& b = entries[j][i];
      if (a.id() == b.id() || (a.is_number() && b.is_number() && a.value() == b.value())) continue;
      if (a.hash() == b.hash() && render(a) == render(b)) continue;
      numeric_pairs.emplace_back(i, j);
    }
  }

  std::vector<Expr> raw;
  raw.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) raw.push_back(entries[i][j]);
  }
  const Program program(raw, chart_.coordinates(), params);
  for (const auto& pt : sample_points(chart_, SamplingStrategy::UniformRandom, kValidationPoints, kValidationSeed)) {
    const auto v = program.run(pt);
    for (const auto& [i, j] : numeric_pairs) {
      const double diff = std::abs(v[i * n + j] - v[j * n + i]);
      if (diff > kSymmetryTolerance * std::max(1.0, std::abs(v[i * n + j]))) {
        throw GeometryError("metric is not symmetric: g(" + chart_.coordinate(i) + "," + chart_.coordinate(j) +
                            ") != g(" + chart_.coordinate(j) + "," + chart_.coordinate(i) + ")");
      }
    }
    Eigen::MatrixXd g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) g(i, j) = v[std::min(i, j) * n + std::max(i, j)];
    }
    if (!leading_minors_positive(g)) {
      throw GeometryError("metric is singular or not positive definite at a sample point");
    }
  }

  g_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      g_[i * n + j] = entries[i][j];
      g_[j * n + i] = entries[i][j];
    }
  }

  det_ = symbolic_determinant(g_, n);
  inv_.resize(n * n);
  if (n == 1) {
    inv_[0] = Expr::number(1.0) / det_;
    return;
  }
  // Adjugate: inv_ij = (-1)^(i+j) M_ji / det. Symmetric, so build i <= j.
  std::vector<Expr> minor((n - 1) * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::size_t k = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == i) continue;
          minor[k++] = g_[r * n + c];
        }
      }
      Expr cofactor = symbolic_determinant(minor, n - 1);
      if ((i + j) % 2 == 1) cofactor = -cofactor;
      inv_[i * n + j] = cofactor / det_;
      inv_[j * n + i] = inv_[i * n + j];
    }
  }
}

std::vector<double> metric_at(const MetricField& g, std::span<const double> point, const ParameterSet& params) {
  const Program program(g.components(), g.chart().coordinates(), params);
  return program.run(point);
}

std::vector<double> metric_inverse_at(const MetricField& g, std::span<const double> point, const ParameterSet& params) {
  const std::size_t n = g.dimension();
  const auto values = metric_at(g, point, params);
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = values[i * n + j];
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-300) {
    throw GeometryError("metric is singular at the requested point");
  }
  const Eigen::MatrixXd inv = lu.inverse();
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = inv(i, j);
  }
  return out;
}

}  // namespace ricsol
