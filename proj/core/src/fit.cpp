#include "ricsol/fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "ricsol/program.hpp"

namespace ricsol {

double FitSystem::residual_sup(const Triple& c) const {
  double sup = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double r = rows[k][0] * c[0] + rows[k][1] * c[1] + rows[k][2] * c[2] - target[k];
    sup = std::max(sup, std::abs(r));
  }
  return sup;
}

double FitSystem::target_sup() const {
  double sup = 0.0;
  for (double b : target) sup = std::max(sup, std::abs(b));
  return sup;
}

FitSystem assemble_fit_system(const Geometry& geo, const Expr& f1, const Expr& f2, const SampleSet& samples) {
  const std::size_t n = geo.dimension();
  const TensorField hess = hessian(geo, f1);
  const TensorField df2 = differential(geo.chart(), f2);
  const TensorField t = sym_product(df2, df2);
  const TensorField& ric = geo.ricci();
  const MetricField& g = geo.metric();

  // Per component: [t, -Ric, -g, -Hess f1]
  std::vector<Expr> outputs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      outputs.push_back(t.at(i, j));
      outputs.push_back(-ric.at(i, j));
      outputs.push_back(-g.at(i, j));
      outputs.push_back(-hess.at(i, j));
    }
  }
  const Program program(outputs, geo.chart().coordinates(), samples.params);

  FitSystem system;
  std::vector<double> v(outputs.size());
  for (const auto& pt : samples.points) {
    try {
      program.run(pt, v);
    } catch (const DomainError& e) {
      system.domain_failures.push_back({pt, e.what()});
      continue;
    }
    ++system.points_used;
    for (std::size_t k = 0; k < v.size(); k += 4) {
      system.rows.push_back({v[k], v[k + 1], v[k + 2]});
      system.target.push_back(v[k + 3]);
    }
  }
  return system;
}

FitResult fit_constants(const FitSystem& system, const std::array<std::optional<double>, 3>& fixed) {
  FitResult result;
  result.rows = system.rows.size();
  result.points_used = system.points_used;
  result.domain_failures = system.domain_failures;

  std::vector<std::size_t> free;
  for (std::size_t k = 0; k < 3; ++k) {
    result.fixed[k] = fixed[k].has_value();
    if (fixed[k]) {
      result.solution[k] = *fixed[k];
    } else {
      free.push_back(k);
    }
  }
  const auto m = static_cast<Eigen::Index>(free.size());
  const auto rows = static_cast<Eigen::Index>(system.rows.size());

  if (m > 0) {
    Eigen::MatrixXd a(rows, m);
    Eigen::VectorXd b(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& row = system.rows[static_cast<std::size_t>(r)];
      double rhs = system.target[static_cast<std::size_t>(r)];
      for (std::size_t k = 0; k < 3; ++k) {
        if (fixed[k]) rhs -= row[k] * *fixed[k];
      }
      for (Eigen::Index c = 0; c < m; ++c) a(r, c) = row[free[static_cast<std::size_t>(c)]];
      b(r) = rhs;
    }

    // Equilibrate columns so the rank decision does not depend on units.
    Eigen::VectorXd scale(m);
    for (Eigen::Index c = 0; c < m; ++c) {
      const double norm = a.col(c).norm();
      scale(c) = norm > 0.0 ? 1.0 / norm : 1.0;
    }
    const Eigen::MatrixXd as = a * scale.asDiagonal();
    const Eigen::MatrixXd normal = as.transpose() * as;
    const Eigen::VectorXd rhs = as.transpose() * b;

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(normal);
    const Eigen::VectorXd& ev = eig.eigenvalues();
    const double top = ev.size() > 0 ? ev.maxCoeff() : 0.0;

    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
    std::vector<Eigen::VectorXd> null;
    for (Eigen::Index k = 0; k < m; ++k) {
      const Eigen::VectorXd v = eig.eigenvectors().col(k);
      if (top > 0.0 && ev(k) > kRankThreshold * top) {
        y += v * (v.dot(rhs) / ev(k));
        ++result.rank;
      } else {
        null.emplace_back(scale.asDiagonal() * v);
      }
    }
    Eigen::VectorXd c = scale.asDiagonal() * y;

    if (!null.empty()) {
      Eigen::MatrixXd basis(m, static_cast<Eigen::Index>(null.size()));
      for (std::size_t k = 0; k < null.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = null[k];
      const Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
      const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, basis.cols());
      c -= q * (q.transpose() * c);
      for (Eigen::Index k = 0; k < q.cols(); ++k) {
        Triple t{};
        // Fix the sign so the largest-magnitude entry is positive.
        Eigen::Index big = 0;
        q.col(k).cwiseAbs().maxCoeff(&big);
        const double sign = q(big, k) < 0.0 ? -1.0 : 1.0;
        for (Eigen::Index r = 0; r < m; ++r) t[free[static_cast<std::size_t>(r)]] = sign * q(r, k);
        result.null_space.push_back(t);
      }
    }
    for (Eigen::Index k = 0; k < m; ++k) result.solution[free[static_cast<std::size_t>(k)]] = c(k);
  }

  result.abs_residual = system.residual_sup(result.solution);
  result.rel_residual = result.abs_residual / std::max(1.0, system.target_sup());
  return result;
}

FitResult fit_constants(const Geometry& geo, const Expr& f1, const Expr& f2, const SampleSet& samples,
                        const std::array<std::optional<double>, 3>& fixed) {
  return fit_constants(assemble_fit_system(geo, f1, f2, samples), fixed);
}

double membership_distance(const FitResult& fit, const Triple& c) {
  Triple d{c[0] - fit.solution[0], c[1] - fit.solution[1], c[2] - fit.solution[2]};
  for (const auto& v : fit.null_space) {
    const double p = d[0] * v[0] + d[1] * v[1] + d[2] * v[2];
    for (std::size_t k = 0; k < 3; ++k) d[k] -= p * v[k];
  }
  return std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
}

namespace {

nlohmann::json bound_json(double v) {
  if (std::isinf(v)) return nullptr;
  return v;
}

}  // namespace

ManufacturedInstance manufacture_instance(const Geometry& geo, const Expr& f1_template, const Expr& f2_template,
                                          const SolitonConstants& constants, const SamplingPlan& plan) {
  const std::map<std::string, Expr, std::less<>> values{
      {"c1", Expr::number(constants.c1)},
      {"c2", Expr::number(constants.c2)},
      {"lambda", Expr::number(constants.lambda)},
  };
  const Expr f1 = simplify(substitute(f1_template, values));
  const Expr f2 = simplify(substitute(f2_template, values));
  const SampleSet samples = make_samples(geo.chart(), plan);

  ManufacturedInstance out{SolitonSpec{geo, GradientPotentials{f1, f2}, constants}, constants, f1, f2,
                           fit_constants(geo, f1, f2, samples), nlohmann::json::object()};

  const Chart& chart = geo.chart();
  nlohmann::json bounds = nlohmann::json::object();
  for (std::size_t i = 0; i < chart.dimension(); ++i) {
    const Interval& iv = chart.bounds(i);
    if (std::isinf(iv.lower) && std::isinf(iv.upper)) continue;
    bounds[chart.coordinate(i)] = {bound_json(iv.lower), bound_json(iv.upper)};
  }
  nlohmann::json metric = nlohmann::json::array();
  for (std::size_t i = 0; i < chart.dimension(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < chart.dimension(); ++j) row.push_back(render(geo.metric().at(i, j)));
    metric.push_back(row);
  }
  out.manifest = {
      {"chart", {{"coords", chart.coordinates()}, {"bounds", bounds}}},
      {"metric", metric},
      {"scalars", {{"f1", render(f1)}, {"f2", render(f2)}}},
      {"constants", {{"c1", constants.c1}, {"c2", constants.c2}, {"lambda", constants.lambda}}},
      {"sampling",
       {{"strategy", plan.strategy == SamplingStrategy::Grid ? "grid" : "uniform"},
        {"count", plan.count},
        {"seed", plan.seed}}},
  };
  return out;
}

}  // namespace ricsol
