#include <gtest/gtest.h>

#include "properties.hpp"
#include "ricsol/residual.hpp"
#include "support.hpp"

using namespace ricsol;
using namespace ricsol::test;

namespace {

SampleSet samples(const Chart& chart, std::size_t n = 300, std::uint64_t seed = 42) {
  return make_samples(chart, SamplingPlan{SamplingStrategy::UniformRandom, n, seed});
}

double at(const Expr& e, const Chart& chart, const Point& p) { return eval(e, chart, p); }

// eta = (dz - y dx)/2, xi = 2 d_z, g = eta (x) eta + (dx^2 + dy^2)/4 on R^3.
Geometry standard_r3_geometry() {
  return Geometry(MetricField(Chart({"x", "y", "z"}), matrix({{"1/4 + y^2/4", "0", "-y/4"},
                                                                {"0", "1/4", "0"},
                                                                {"-y/4", "0", "1/4"}})));
}

AlmostContactStructure standard_r3() {
  return make_structure(standard_r3_geometry(), TensorField(Valence::Endo, 3, exprs({"0", "1", "0", "-1", "0", "0", "0", "y", "0"})),
                        vector_field(exprs({"0", "0", "2"})), one_form(exprs({"-y/2", "0", "1/2"})));
}

void expect_ladder_consistent(const StructureFlags& f) {
  if (f.sasakian) {
    EXPECT_TRUE(f.k_contact);
    EXPECT_TRUE(f.normal);
    EXPECT_TRUE(f.contact_metric);
  }
  if (f.k_contact) EXPECT_TRUE(f.contact_metric);
  if (f.contact_metric) EXPECT_TRUE(f.almost_contact_metric);
}

}  // namespace

TEST(AssembleStructure, AcceptsSasakianExample) {
  const SampleSet s = samples(sasakian_chart());
  const AlmostContactStructure a = assemble_structure(sasakian(), sasakian_phi(), sasakian_xi(), sasakian_eta(), s);
  EXPECT_EQ(a.n, 1u);
  const CheckReport axioms = almost_contact_axioms(a, s, 1e-12);
  EXPECT_EQ(axioms.entries.size(), 5u);
  for (const auto& e : axioms.entries) EXPECT_LE(e.abs_sup, 1e-12) << e.name;
}

TEST(AssembleStructure, TransposedPhiViolatesPhiSquared) {
  const SampleSet s = samples(sasakian_chart());
  const AlmostContactStructure a = make_structure(sasakian(), sasakian_phi(true), sasakian_xi(), sasakian_eta());
  const CheckReport axioms = almost_contact_axioms(a, s, 1e-8);
  EXPECT_FALSE(axioms.at("structure.phi_squared").pass);
  EXPECT_GT(axioms.at("structure.phi_squared").abs_sup, 1e-3);
  try {
    assemble_structure(sasakian(), sasakian_phi(true), sasakian_xi(), sasakian_eta(), s);
    FAIL() << "expected StructureError";
  } catch (const StructureError& e) {
    EXPECT_FALSE(axioms.at(e.axiom()).pass);
    EXPECT_GT(e.residual(), 1e-8);
    EXPECT_EQ(e.worst_point().size(), 3u);
  }
}

TEST(AssembleStructure, EvenDimensionRejected) {
  const Geometry geo = euclidean(2);
  EXPECT_THROW(make_structure(geo, TensorField::zero(Valence::Endo, 2), vector_field(exprs({"1", "0"})),
                              one_form(exprs({"1", "0"}))),
               StructureError);
}

TEST(AssembleStructure, ShapeMismatchRejected) {
  EXPECT_THROW(make_structure(sasakian(), sasakian_phi(), sasakian_eta(), sasakian_eta()), StructureError);
  EXPECT_THROW(make_structure(sasakian(), sasakian_phi(), sasakian_xi(), sasakian_xi()), StructureError);
}

TEST(FundamentalForm, SasakianExample) {
  const AlmostContactStructure s = sasakian_structure();
  const TensorField phi = fundamental_form(s);
  const Chart& chart = s.chart();
  EXPECT_NEAR(at(phi.at(0, 1), chart, {0.0, 0.0, 1.0}), -16.0 / 289.0, 1e-15);
  for (const auto& p : samples(chart, 100).points) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(at(phi.at(2, j), chart, p), 0.0, 1e-15);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(at(phi.at(i, i), chart, p), 0.0, 1e-15);
      for (std::size_t j = 0; j < 3; ++j)
        EXPECT_NEAR(at(phi.at(i, j), chart, p), -at(phi.at(j, i), chart, p), 1e-12);
    }
  }
}

TEST(ExteriorDerivative, SasakianEta) {
  const AlmostContactStructure s = sasakian_structure();
  const TensorField d = exterior_derivative_oneform(s.chart(), s.eta);
  EXPECT_NEAR(at(d.at(0, 1), s.chart(), {0.0, 0.0, 1.0}), -16.0 / 289.0, 1e-15);
  EXPECT_NEAR(at(d.at(1, 0), s.chart(), {0.0, 0.0, 1.0}), 16.0 / 289.0, 1e-15);
}

TEST(ExteriorDerivative, ClosedFormVanishes) {
  const TensorField d = exterior_derivative_oneform(Chart({"x", "y", "z"}), one_form(exprs({"0", "0", "1"})));
  for (const Expr& e : d.components()) EXPECT_TRUE(e.is_zero());
}

TEST(ExteriorDerivative, PlainConventionDoubles) {
  const Chart chart = sasakian_chart();
  const TensorField eta = sasakian_eta();
  const TensorField half = exterior_derivative_oneform(chart, eta, DConvention::Half);
  const TensorField plain = exterior_derivative_oneform(chart, eta, DConvention::Plain);
  for (const auto& p : samples(chart, 100).points)
    for (std::size_t k = 0; k < 9; ++k)
      EXPECT_LE(scaled_gap(at(plain.components()[k], chart, p), 2.0 * at(half.components()[k], chart, p)), 1e-15);
  EXPECT_STREQ(convention_name(DConvention::Half), "half");
  EXPECT_STREQ(convention_name(DConvention::Plain), "plain");
}

TEST(Nijenhuis, ConstantComplexStructureVanishes) {
  // J = [[0,-1],[1,0]] on the xy-plane, extended by zero along z.
  const Geometry geo = euclidean(3);
  const AlmostContactStructure s = make_structure(geo, TensorField(Valence::Endo, 3, exprs({"0", "-1", "0", "1", "0", "0", "0", "0", "0"})),
                                                  vector_field(exprs({"0", "0", "1"})), one_form(exprs({"0", "0", "1"})));
  const TensorField n = nijenhuis_torsion(s);
  for (const Expr& e : n.components()) EXPECT_TRUE(e.is_zero());
}

TEST(Nijenhuis, SasakianExample) {
  const AlmostContactStructure s = sasakian_structure();
  const TensorField n = nijenhuis_torsion(s);
  const Point p{0.0, 0.0, 1.0};
  EXPECT_NEAR(at(n.at(0, 0, 1), s.chart(), p), 0.0, 1e-15);
  EXPECT_NEAR(at(n.at(1, 0, 1), s.chart(), p), 0.0, 1e-15);
  EXPECT_NEAR(at(n.at(2, 0, 1), s.chart(), p), 32.0 / 289.0, 1e-15);
}

TEST(Nijenhuis, Antisymmetric) {
  for (const AlmostContactStructure& s : {sasakian_structure(), standard_r3()}) {
    const TensorField n = nijenhuis_torsion(s);
    std::vector<Group> groups;
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) groups.push_back({n.at(k, i, j), n.at(k, j, i)});
    EXPECT_LE(worst_scaled_sum(groups, s.chart(), samples(s.chart(), 200).points), 1e-12);
  }
}

TEST(Classify, SasakianExampleAllFlags) {
  const AlmostContactStructure s = sasakian_structure();
  const StructureReport r = classify_structure(s, samples(s.chart()));
  EXPECT_TRUE(r.flags.almost_contact_metric);
  EXPECT_TRUE(r.flags.contact_metric);
  EXPECT_TRUE(r.flags.k_contact);
  EXPECT_TRUE(r.flags.normal);
  EXPECT_TRUE(r.flags.sasakian);
  EXPECT_TRUE(r.form_sas1_consistent);
  EXPECT_EQ(r.convention, DConvention::Half);
  for (const char* name : {"structure.contact", "structure.killing_xi", "structure.k_contact", "structure.normal",
                           "structure.form_sas1"}) {
    ASSERT_NE(r.checks.find(name), nullptr) << name;
    EXPECT_LE(r.checks.at(name).rel_sup, 1e-10) << name;
  }
}

TEST(Classify, StandardR3IsSasakian) {
  const AlmostContactStructure s = standard_r3();
  const StructureReport r = classify_structure(s, samples(s.chart()));
  EXPECT_TRUE(r.flags.sasakian);
  EXPECT_TRUE(r.form_sas1_consistent);
}

TEST(Classify, PlainConventionBreaksContactCondition) {
  const AlmostContactStructure s = sasakian_structure();
  const StructureReport r = classify_structure(s, samples(s.chart()), 1e-8, DConvention::Plain);
  EXPECT_TRUE(r.flags.almost_contact_metric);
  EXPECT_FALSE(r.flags.contact_metric);
  EXPECT_FALSE(r.flags.sasakian);
  EXPECT_EQ(r.convention, DConvention::Plain);
  expect_ladder_consistent(r.flags);
}

TEST(Classify, EuclideanZeroPhiFailsAxioms) {
  const AlmostContactStructure s = make_structure(euclidean(3), TensorField::zero(Valence::Endo, 3),
                                                  vector_field(exprs({"0", "0", "1"})), one_form(exprs({"0", "0", "1"})));
  const StructureReport r = classify_structure(s, samples(s.chart()));
  EXPECT_FALSE(r.checks.at("structure.phi_squared").pass);
  EXPECT_FALSE(r.flags.almost_contact_metric);
  EXPECT_FALSE(r.flags.sasakian);
  expect_ladder_consistent(r.flags);
}

TEST(Classify, DoubledEtaFailsNormalization) {
  const TensorField eta2 = scale(sasakian_eta(), Expr::number(2.0));
  const AlmostContactStructure s = make_structure(sasakian(), sasakian_phi(), sasakian_xi(), eta2);
  const StructureReport r = classify_structure(s, samples(s.chart()));
  EXPECT_FALSE(r.checks.at("structure.eta_xi").pass);
  EXPECT_NEAR(r.checks.at("structure.eta_xi").abs_sup, 1.0, 1e-15);
  EXPECT_FALSE(r.flags.almost_contact_metric);
  expect_ladder_consistent(r.flags);
}

TEST(Classify, LadderImplicationsOnPerturbedStructures) {
  // Perturb the fields in ways that break different rungs and confirm the
  // reported flags never contradict the implications.
  std::vector<AlmostContactStructure> structures{sasakian_structure(), standard_r3()};
  const TensorField bent_phi(Valence::Endo, 3, exprs({"0", "-1", "0", "1", "0", "0", "0", "exp(2*y)/(16+exp(2*y)) + z/10", "0"}));
  structures.push_back(make_structure(sasakian(), bent_phi, sasakian_xi(), sasakian_eta()));
  structures.push_back(make_structure(euclidean(3), TensorField(Valence::Endo, 3, exprs({"0", "-1", "0", "1", "0", "0", "0", "0", "0"})),
                                      vector_field(exprs({"0", "0", "1"})), one_form(exprs({"0", "0", "1"}))));
  for (const auto& s : structures) {
    const StructureReport r = classify_structure(s, samples(s.chart(), 200));
    expect_ladder_consistent(r.flags);
    if (r.flags.k_contact) EXPECT_LE(r.checks.at("structure.killing_xi").rel_sup, 1e-10);
  }
  // Flat R^3 with the trivial structure is an almost contact metric manifold,
  // normal (cosymplectic), but not contact.
  const StructureReport flat = classify_structure(structures.back(), samples(Chart({"x", "y", "z"}), 200));
  EXPECT_TRUE(flat.flags.almost_contact_metric);
  EXPECT_TRUE(flat.flags.normal);
  EXPECT_FALSE(flat.flags.contact_metric);
  EXPECT_FALSE(flat.flags.sasakian);
}

TEST(Classify, DetEtaEqualsFundamentalFormOnSasakianExample) {
  const AlmostContactStructure s = sasakian_structure();
  const TensorField d = exterior_derivative_oneform(s.chart(), s.eta);
  const TensorField phi = fundamental_form(s);
  std::vector<Group> groups;
  for (std::size_t k = 0; k < 9; ++k) groups.push_back({d.components()[k], -phi.components()[k]});
  EXPECT_LE(worst_scaled_sum(groups, s.chart(), samples(s.chart(), 1000).points), 1e-10);
}

TEST(Classify, RicciOfXiOnSasakianExample) {
  const AlmostContactStructure s = sasakian_structure();
  const auto& ric = s.geometry.ricci();
  std::vector<Group> groups;
  for (std::size_t j = 0; j < 3; ++j) {
    const TensorField dj = coordinate_field(3, j);
    groups.push_back({bilinear(ric, s.xi, dj), -2.0 * static_cast<double>(s.n) * inner(s.metric(), s.xi, dj)});
  }
  EXPECT_LE(worst_scaled_sum(groups, s.chart(), samples(s.chart(), 1000).points), 1e-9);
}

TEST(SasakianIdentities, AllHoldOnExample) {
  const AlmostContactStructure s = sasakian_structure();
  const CheckReport r = check_sasakian_identities(s, samples(s.chart()), 1e-10);
  EXPECT_EQ(r.entries.size(), 4u);
  for (const auto& e : r.entries) EXPECT_LE(e.rel_sup, 1e-10) << e.name;
  EXPECT_TRUE(r.pass());
}

TEST(SasakianIdentities, PairwiseExamples) {
  const AlmostContactStructure s = sasakian_structure();
  const Geometry& geo = s.geometry;
  const TensorField dphi = covariant_derivative_endo(geo, s.phi);
  for (const auto& p : samples(s.chart(), 100).points) {
    // (nabla_{d_x} phi) d_y = 0.
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(at(dphi.at(k, 0, 1), s.chart(), p), 0.0, 1e-13);
    // R(d_x, xi) xi = d_x + q xi.
    const TensorField r = curvature_apply(geo.riemann(), coordinate_field(3, 0), s.xi, s.xi);
    const double q = at(q_expr(), s.chart(), p);
    EXPECT_LE(scaled_gap(at(r.at(0), s.chart(), p), 1.0), 1e-13);
    EXPECT_NEAR(at(r.at(1), s.chart(), p), 0.0, 1e-13);
    EXPECT_LE(scaled_gap(at(r.at(2), s.chart(), p), q), 1e-13);
  }
}

TEST(SasakianIdentities, FailOnNonSasakianStructure) {
  const AlmostContactStructure s = make_structure(euclidean(3), TensorField(Valence::Endo, 3, exprs({"0", "-1", "0", "1", "0", "0", "0", "0", "0"})),
                                                  vector_field(exprs({"0", "0", "1"})), one_form(exprs({"0", "0", "1"})));
  const CheckReport r = check_sasakian_identities(s, samples(s.chart(), 100), 1e-8);
  EXPECT_FALSE(r.at("form_sas1").pass);
  EXPECT_FALSE(r.at("curvature_xi").pass);
}
