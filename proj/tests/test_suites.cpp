#include <gtest/gtest.h>

#include "galileq/suites.hpp"

using namespace galileq;

TEST(Suites, VerifySuitesWithCorrectedReadings) {
  for (const auto& name : verify_suite_names()) {
    if (name == "appendixA") continue;
    auto r = run_verify_suite(name);
    EXPECT_TRUE(r.ok) << name << ": " << (r.failures.empty() ? "" : r.failures.front());
  }
  EXPECT_THROW(run_verify_suite("nope"), std::invalid_argument);
}

TEST(Suites, PrintedAbcRowFailsOnlyA1) {
  EXPECT_TRUE(suite_table1(false).ok);
  auto r = suite_table1(true);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0], "(A1) (2,1,1)");
  EXPECT_TRUE(r.detail["corrected_211_A1"].get<bool>());
}

TEST(Suites, RECellFailures) {
  auto r = suite_appendix_a(2);
  EXPECT_EQ(r.detail["cells"].get<std::size_t>(), 71u);
  EXPECT_EQ(r.detail["failing_cells"].size(), 14u);
  for (const auto& c : r.detail["failing_cells"]) EXPECT_FALSE(c["b2"].get<bool>());
}

TEST(Suites, StructurePrintedAndCorrected) {
  EXPECT_TRUE(suite_structure(false).ok);
  auto r = suite_structure(true);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.detail["klifford_ok"].get<std::size_t>(), 13u);
  EXPECT_EQ(r.detail["corrected_gamma_klifford_ok"].get<std::size_t>(), 25u);
  EXPECT_TRUE(r.detail["kd2_unit_factor_ok"].get<bool>());
}

TEST(Suites, CanonicalPrintedU) {
  auto r = suite_canonical();
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0], "printed U removes omega");
  EXPECT_TRUE(r.detail["eliminator_removes_omega"].get<bool>());
}

TEST(Suites, ClassificationOnlyProcaTwoEnergy) {
  auto r = suite_classification();
  for (const auto& f : r.failures) EXPECT_NE(f.find("Proca-Two"), std::string::npos) << f;
  EXPECT_EQ(r.failures.size(), 2u);
}

TEST(Suites, GaugeDetail) {
  auto r = suite_gauge();
  const auto& d = r.detail;
  EXPECT_EQ(d["pauli"]["g"], "2");
  EXPECT_EQ(d["paulii"]["lambda3"], parse_poly("mu*lambda2").str());
  EXPECT_EQ(d["orb"]["by_commutator_sign"]["-"]["matches_printed"], true);
  EXPECT_EQ(d["orb1"]["by_commutator_sign"]["-"]["printed"]["lambda_from_spin_orbit"], "nu^-2");
  EXPECT_TRUE(d["P26"]["so4"].get<bool>());
  std::set<std::string> failing(r.failures.begin(), r.failures.end());
  EXPECT_EQ(failing.count("(pauli) g = 2"), 0u);
  EXPECT_EQ(failing.count("(orb2) g = 2 with no electric coupling"), 0u);
  EXPECT_EQ(failing.count("(orb1) lambda = 2/nu^2"), 1u);
}

TEST(Report, PerturbationNamesResidual) {
  BetaSystem bs = catalog::m2();
  bs.beta[1](0, 1) += Poly(1);
  auto j = check_json(verify_invariance(bs));
  EXPECT_FALSE(j["ok"].get<bool>());
  ASSERT_FALSE(j["failures"].empty());
  EXPECT_TRUE(j["failures"][0].contains("residual"));
}

TEST(Report, QIndexParsing) {
  EXPECT_EQ(parse_qindex("(2,2,1)"), (QIndex{2, 2, 1}));
  EXPECT_EQ(parse_qindex("D(3,1,1)"), (QIndex{3, 1, 1}));
  EXPECT_FALSE(parse_qindex("(2,2)"));
  EXPECT_FALSE(parse_qindex("x"));
}

TEST(Report, CatalogDeterministicAndFiltered) {
  auto a = catalog_systems_json(std::nullopt, 5), b = catalog_systems_json(std::nullopt, 5);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(catalog_reps_json(std::nullopt)["reps"].size(), 10u);
  auto only = catalog_systems_json(QIndex{2, 2, 1}, 5);
  ASSERT_EQ(only["cells"].size(), 1u);
  EXPECT_EQ(only["cells"][0]["cell"], "(2,2,1)x(2,2,1)");
  auto g = catalog_golden_systems(QIndex{2, 2, 1});
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].id, "M3");
}

TEST(Report, ClassificationJsonMatchesLibrary) {
  auto c = classify(catalog::m3(), Rational(1));
  auto j = classification_json(c);
  EXPECT_EQ(j["verdict"], verdict_str(c.verdict));
  EXPECT_EQ(j["branches"].size(), c.branches.size());
  EXPECT_EQ(c.verdict, Verdict::Composite);
}
