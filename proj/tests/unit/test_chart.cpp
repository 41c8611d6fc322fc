#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace ricsol;
using namespace ricsol::test;

TEST(Chart, Definitions) {
  const Chart h = hyperbolic_chart();
  EXPECT_EQ(h.dimension(), 2u);
  EXPECT_EQ(h.bounds(1).lower, 0.0);
  EXPECT_TRUE(std::isinf(h.bounds(1).upper));
  EXPECT_TRUE(std::isinf(h.bounds(0).lower));

  const Chart c = cone_chart();
  EXPECT_EQ(c.dimension(), 3u);
  EXPECT_EQ(c.index_of("z"), std::optional<std::size_t>(2));
  EXPECT_FALSE(c.index_of("w").has_value());

  const Chart s = sasakian_chart();
  EXPECT_EQ(s.bounds(2).upper, M_PI);
}

TEST(Chart, Errors) {
  EXPECT_THROW(Chart({"x", "x"}), GeometryError);
  EXPECT_THROW(Chart({"x"}, {{"x", Interval{1.0, 0.0}}}), GeometryError);
  EXPECT_THROW(Chart({"x"}, {{"x", Interval{1.0, 1.0}}}), GeometryError);
  EXPECT_THROW(Chart({"x"}, {{"y", Interval{0.0, 1.0}}}), GeometryError);
  EXPECT_THROW(Chart(std::vector<std::string>{}), GeometryError);
}

TEST(Metric, AcceptsHyperbolic) { EXPECT_NO_THROW(hyperbolic()); }

TEST(Metric, SasakianDeterminantIsPToTheFourth) {
  const Geometry geo = sasakian();
  const Expr p4 = pow(p_expr(), Expr::number(4.0));
  for (const Point& pt : sample_points(geo.chart(), SamplingStrategy::UniformRandom, 100, 3)) {
    const double det = eval(geo.metric().determinant(), geo.chart(), pt);
    EXPECT_LE(scaled_gap(det, eval(p4, geo.chart(), pt)), 1e-14);
  }
}

TEST(Metric, RejectsAsymmetry) {
  EXPECT_THROW(MetricField(hyperbolic_chart(), matrix({{"1/y^2", "x"}, {"0", "1/y^2"}})), GeometryError);
}

TEST(Metric, AcceptsStructurallyDifferentButEqualEntries) {
  EXPECT_NO_THROW(MetricField(Chart({"x", "y"}), matrix({{"2", "sin(x)^2"}, {"1 - cos(x)^2", "2"}})));
}

TEST(Metric, RejectsIndefinite) {
  EXPECT_THROW(MetricField(Chart({"x", "y"}), matrix({{"1", "0"}, {"0", "-1"}})), GeometryError);
  EXPECT_THROW(MetricField(Chart({"x", "y"}), matrix({{"1", "2"}, {"2", "1"}})), GeometryError);
}

TEST(Metric, RejectsWrongShape) {
  EXPECT_THROW(MetricField(hyperbolic_chart(), matrix({{"1", "0", "0"}, {"0", "1", "0"}})), GeometryError);
}

TEST(Metric, NumericInverse) {
  const auto h = metric_inverse_at(hyperbolic().metric(), std::vector<double>{0.3, 2.0});
  EXPECT_NEAR(h[0], 4.0, 1e-15);
  EXPECT_NEAR(h[1], 0.0, 1e-15);
  EXPECT_NEAR(h[3], 4.0, 1e-15);

  const auto c = metric_inverse_at(cone().metric(), std::vector<double>{2.0, 0.1, -0.4});
  EXPECT_NEAR(c[0], 1.0, 1e-15);
  EXPECT_NEAR(c[4], 0.25, 1e-15);
  EXPECT_NEAR(c[8], 0.25, 1e-15);

  const auto s = metric_inverse_at(sasakian().metric(), std::vector<double>{0.0, 0.0, 1.0});
  EXPECT_NEAR(s[0], 289.0 / 16.0, 1e-12);
}

TEST(Metric, SymbolicInverseMatchesNumeric) {
  const Geometry geo = sasakian();
  const Point pt{0.4, -0.7, 1.3};
  const auto inv = metric_inverse_at(geo.metric(), pt);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_LE(scaled_gap(eval(geo.metric().inverse(i, j), geo.chart(), pt), inv[i * 3 + j]), 1e-13);
    }
  }
}

TEST(Metric, SingularPointIsReported) {
  const MetricField g(Chart({"x"}, {{"x", Interval{0.0}}}), matrix({{"x^2"}}));
  EXPECT_THROW(metric_inverse_at(g, std::vector<double>{0.0}), GeometryError);
}

TEST(Sampling, UniformRespectsBounds) {
  const auto pts = sample_points(hyperbolic_chart(), SamplingStrategy::UniformRandom, 10, 42);
  ASSERT_EQ(pts.size(), 10u);
  for (const auto& p : pts) {
    EXPECT_GE(p[1], 1e-3);
    EXPECT_LE(p[1], 2.0);
    EXPECT_GE(p[0], -2.0);
    EXPECT_LE(p[0], 2.0);
  }
}

TEST(Sampling, GridOnSasakianChart) {
  const Chart chart = sasakian_chart();
  const auto pts = sample_points(chart, SamplingStrategy::Grid, 27);
  ASSERT_EQ(pts.size(), 27u);
  std::set<double> zs;
  for (const auto& p : pts) {
    zs.insert(p[2]);
    EXPECT_GE(p[2], 1e-3);
    EXPECT_LE(p[2], M_PI - 1e-3);
  }
  EXPECT_EQ(zs.size(), 3u);
  EXPECT_NEAR(*zs.begin(), 1e-3, 1e-15);
  EXPECT_NEAR(*zs.rbegin(), M_PI - 1e-3, 1e-15);
}

TEST(Sampling, GridCountNotAPerfectPower) {
  const auto pts = sample_points(Chart({"x", "y"}), SamplingStrategy::Grid, 5);
  EXPECT_EQ(pts.size(), 5u);
}

TEST(Sampling, Deterministic) {
  const Chart chart = sasakian_chart();
  EXPECT_EQ(sample_points(chart, SamplingStrategy::UniformRandom, 50, 42),
            sample_points(chart, SamplingStrategy::UniformRandom, 50, 42));
  EXPECT_NE(sample_points(chart, SamplingStrategy::UniformRandom, 50, 42),
            sample_points(chart, SamplingStrategy::UniformRandom, 50, 43));
}

TEST(Sampling, EmptyFeasibleBox) {
  const Chart narrow({"x"}, {{"x", Interval{0.0, 1e-3}}});
  EXPECT_THROW(sample_points(narrow, SamplingStrategy::UniformRandom, 10, 1), GeometryError);
}

TEST(ChartProperty, SamplesKeepMargin) {
  for (const Chart& chart : {hyperbolic_chart(), cone_chart(), sasakian_chart(), Chart({"a"}, {{"a", Interval{-1.0, 5.0}}})}) {
    for (auto strategy : {SamplingStrategy::UniformRandom, SamplingStrategy::Grid}) {
      for (const auto& p : sample_points(chart, strategy, 500, 9)) EXPECT_TRUE(chart.contains(p, 1e-3 * 0.999));
    }
  }
}

TEST(ChartProperty, InverseTimesMetricIsIdentity) {
  for (const Geometry& geo : {hyperbolic(), cone(), sasakian()}) {
    const std::size_t n = geo.dimension();
    for (const auto& pt : sample_points(geo.chart(), SamplingStrategy::UniformRandom, 100, 5)) {
      const auto g = metric_at(geo.metric(), pt);
      const auto inv = metric_inverse_at(geo.metric(), pt);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          double acc = 0;
          for (std::size_t k = 0; k < n; ++k) acc += inv[i * n + k] * g[k * n + j];
          EXPECT_NEAR(acc, i == j ? 1.0 : 0.0, 1e-12);
        }
      }
    }
  }
}
