#include "ricsol/residual.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ricsol/program.hpp"

namespace ricsol {

SampleSet make_samples(const Chart& chart, const SamplingPlan& plan, ParameterSet params) {
  return SampleSet{sample_points(chart, plan.strategy, plan.count, plan.seed), std::move(params)};
}

bool CheckReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const ResidualReport& r) { return r.pass; });
}

const ResidualReport* CheckReport::find(std::string_view name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const ResidualReport& CheckReport::at(std::string_view name) const {
  if (const auto* r = find(name)) return *r;
  throw std::out_of_range("no check named '" + std::string(name) + "'");
}

double CheckReport::worst_rel() const {
  double worst = 0.0;
  for (const auto& e : entries) worst = std::max(worst, e.rel_sup);
  return worst;
}

ResidualReport measure(std::string name, std::span<const Expr> residual, std::span<const Expr> lhs,
                       const Chart& chart, const SampleSet& samples, double tolerance) {
  ResidualReport report;
  report.name = std::move(name);
  report.residual.assign(residual.begin(), residual.end());
  report.tolerance = tolerance;
  report.component_sup.assign(residual.size(), 0.0);

  std::vector<Expr> outputs(residual.begin(), residual.end());
  outputs.insert(outputs.end(), lhs.begin(), lhs.end());
  const Program program(outputs, chart.coordinates(), samples.params);

  std::vector<double> values(outputs.size());
  for (const auto& pt : samples.points) {
    try {
      program.run(pt, values);
    } catch (const DomainError& e) {
      report.domain_failures.push_back({pt, e.what()});
      continue;
    }
    ++report.points_evaluated;
    double point_sup = 0.0;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      const double a = std::abs(values[i]);
      report.component_sup[i] = std::max(report.component_sup[i], a);
      point_sup = std::max(point_sup, a);
    }
    for (std::size_t i = residual.size(); i < values.size(); ++i) {
      report.lhs_sup = std::max(report.lhs_sup, std::abs(values[i]));
    }
    if (point_sup > report.abs_sup || report.worst_point.empty()) {
      if (point_sup >= report.abs_sup) report.worst_point = pt;
      report.abs_sup = std::max(report.abs_sup, point_sup);
    }
  }
  report.rel_sup = report.abs_sup / std::max(1.0, report.lhs_sup);
  report.pass = report.points_evaluated > 0 && report.rel_sup <= tolerance;
  return report;
}

std::vector<std::vector<double>> evaluate_all(std::span<const Expr> exprs, const Chart& chart,
                                              const SampleSet& samples) {
  const Program program(exprs, chart.coordinates(), samples.params);
  std::vector<std::vector<double>> out;
  out.reserve(samples.points.size());
  for (const auto& pt : samples.points) out.push_back(program.run(pt));
  return out;
}

}  // namespace ricsol
