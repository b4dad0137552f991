#include <gtest/gtest.h>

#include "galileq/covariant.hpp"

using namespace galileq;

TEST(FiveVector, LowerRaise) {
  FiveVector p = five_momentum();
  EXPECT_EQ(raise_index(lower_index(p)), p);
  FiveVector low = lower_index(p);
  EXPECT_EQ(low[0], Poly::var("m"));
  EXPECT_EQ(low[4], Poly::var("p0"));
  EXPECT_EQ(low[2], -Poly::var("p2"));
}

TEST(Proca, Layout) {
  auto s = proca_first_order({ProcaMode::FixedSpin, Poly(1)});
  EXPECT_EQ(s.slots.size(), 15u);
  EXPECT_EQ(s.L.rows(), 15u);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      EXPECT_EQ(commutator(s.spin[a], s.spin[b]), Cx::i() * Cx(levi(a, b, 0)) * s.spin[0] +
                                                      Cx::i() * Cx(levi(a, b, 1)) * s.spin[1] +
                                                      Cx::i() * Cx(levi(a, b, 2)) * s.spin[2]);
  EXPECT_THROW(proca_first_order({ProcaMode::FixedSpin, Poly(0)}), std::invalid_argument);
  EXPECT_THROW(proca_first_order({ProcaMode::TwoSpin, Poly(0)}), std::invalid_argument);
}

TEST(Proca, FixedSpinIsSpinOne) {
  for (Rational lam : {Rational(1), Rational(-2), make_q(1, 3), Rational(5)}) {
    auto c = classify_covariant(proca_first_order({ProcaMode::FixedSpin, Poly(lam)}), Rational(1));
    EXPECT_EQ(c.rest.verdict, Verdict::ParticleSpin1);
    ASSERT_EQ(c.rest.branches.size(), 1u);
    EXPECT_EQ(c.rest.branches[0].epsilon, Rational(0));
    EXPECT_EQ(c.rest.branches[0].multiplicity, 3u);
    EXPECT_TRUE(c.agree);
    EXPECT_TRUE(c.moving_frame_ok);
  }
}

TEST(Proca, TwoSpinIsComposite) {
  for (int nu : {1, 2, -1}) {
    auto c = classify_covariant(proca_first_order({ProcaMode::TwoSpin, Poly(nu)}), Rational(1));
    EXPECT_EQ(c.rest.verdict, Verdict::Composite);
    EXPECT_TRUE(c.agree);
    EXPECT_TRUE(c.moving_frame_ok);
    ASSERT_EQ(c.rest.branches.size(), 1u);
    // both spin states sit at eps = -nu m^2
    EXPECT_EQ(c.rest.branches[0].epsilon, Rational(-nu));
    EXPECT_EQ(c.rest.branches[0].multiplicity, 4u);
  }
}

TEST(Proca, SecondOrder) {
  Poly lam = Poly::var("lambda");
  EXPECT_EQ(proca_second_order(lam).L, gproca_operator(lam));
  auto c = classify_covariant(proca_second_order(Poly(1)), Rational(1));
  EXPECT_EQ(c.rest.verdict, Verdict::ParticleSpin1);
  EXPECT_EQ(c.rest.branches[0].multiplicity, 3u);
}

TEST(Proca, MomentumContraction) {
  Poly lam = Poly::var("lambda"), m = Poly::var("m");
  PMat K = gproca_operator(lam);
  PMat r(1, 5);
  for (int k = 0; k < 5; ++k)
    for (int n = 0; n < 5; ++n) r(0, n) += p_lower(k) * K(k, n);
  PMat want(1, 5);
  want(0, 4) = lam * m * m * m;
  EXPECT_EQ(r, want);
}

TEST(Proca, Lagrangian) {
  auto lc = lagrangian_check(Poly::var("lambda"));
  EXPECT_FALSE(lc.proportional);
  EXPECT_TRUE(lc.lambda_flipped);
  EXPECT_TRUE(lc.lowered);
  EXPECT_EQ(lc.factor, Cx(1));
}

TEST(RaritaSchwinger, Reductions) {
  Poly lam = Poly::var("lambda");
  auto r = rs_reductions(rs_system(lam), lam);
  EXPECT_TRUE(r.by_momentum);
  EXPECT_TRUE(r.by_gamma);
  EXPECT_THROW(rs_system(Poly(0)), std::invalid_argument);
}

TEST(RaritaSchwinger, RestFrame) {
  auto c = classify_covariant(rs_system(Poly(1)), Rational(1));
  EXPECT_EQ(c.rest.verdict, Verdict::ParticleSpin3Half);
  ASSERT_EQ(c.rest.branches.size(), 1u);
  EXPECT_EQ(c.rest.branches[0].multiplicity, 4u);
  EXPECT_EQ(c.rest.branches[0].epsilon, Rational(0));
  EXPECT_TRUE(c.agree);
  EXPECT_TRUE(c.moving_frame_ok);
}

TEST(RaritaSchwinger, SpinCheck) {
  auto r = rs_spin_check(rs_system(Poly(1)));
  for (const auto& i : r.items)
    if (i.name.find("as printed") == std::string::npos) EXPECT_TRUE(i.ok) << i.name;
  EXPECT_FALSE(r.get("(rs13) as printed equivalent to sigma_a Psi^a = 0"));
  EXPECT_TRUE(r.get("(rs13) with unit coefficient equivalent to sigma_a Psi^a = 0"));
}

TEST(RaritaSchwinger, ReducedSetEquivalent) {
  for (int lam : {1, 2}) {
    auto rs = rs_system(Poly(lam));
    EXPECT_TRUE(rs_equivalent(rs, Rational(1), {Rational(1), Rational(0), Rational(0)}));
    EXPECT_TRUE(rs_equivalent(rs, make_q(3, 2), {Rational(1), Rational(2), Rational(-1)}));
    EXPECT_TRUE(rs_equivalent(rs, Rational(2), {make_q(1, 3), Rational(5), Rational(2)}));
  }
}

TEST(Covariant, Json) {
  auto j = covariant_json(proca_first_order({ProcaMode::FixedSpin, Poly::var("lambda")}));
  EXPECT_EQ(j["unknowns"].size(), 15u);
  EXPECT_EQ(j["equations"].size(), 15u);
  EXPECT_EQ(j["equations"][0]["terms"]["Psi4"], "-lambda*m");
}
