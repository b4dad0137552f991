#include <gtest/gtest.h>

#include "galileq/structure.hpp"

using namespace galileq;

TEST(Metric, Basics) {
  CMat g = galilean_metric();
  EXPECT_EQ(g * g, CMat::identity(5));
  EXPECT_EQ(g, g.transpose());
  FiveVector p = five_momentum();
  FiveVector pl = lower_index(p);
  EXPECT_EQ(pl[0], Poly::var("m"));
  EXPECT_EQ(pl[1], -Poly::var("p1"));
  EXPECT_EQ(pl[4], Poly::var("p0"));
  EXPECT_EQ(raise_index(lower_index(p)), p);
}

TEST(Gamma, Klifford) {
  GammaSet g = gamma_set();
  CheckReport r = klifford_report(g.gamma);
  EXPECT_EQ(r.items.size(), 25u);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(anticommutator(g.gamma[0], g.gamma[4]), Cx(2) * CMat::identity(4));
  EXPECT_EQ(g.gamma[1] * g.gamma[1], -CMat::identity(4));
  EXPECT_TRUE(gamma_hermitizer_report(g).ok());
}

TEST(Gamma, PrintedSpatialBlocksFail) {
  GammaSet g = gamma_set();
  for (int a = 0; a < 3; ++a) g.gamma[1 + a] = gamma_spatial_printed(a);
  CheckReport r = klifford_report(g.gamma);
  EXPECT_FALSE(r.ok());
  // spatial-spatial pairs still hold; the mixed ones with 0 and 4 fail
  EXPECT_EQ(count_ok(r), 25u - 12u);
}

TEST(Gamma, SquareOfSlash) {
  GammaSet g = gamma_set();
  FiveVector p = five_momentum(), pl = lower_index(p);
  PMat slash(4, 4);
  for (int n = 0; n < 5; ++n) slash += p[n] * pmat(g.gamma[n]);
  EXPECT_EQ(slash * slash, PMat::scalar(4, parse_poly("2*p0*m - p1^2 - p2^2 - p3^2")));
  (void)pl;
}

TEST(DKP, EtaSquared) { EXPECT_EQ(dkp_eta() * dkp_eta(), CMat::identity(10)); }

TEST(DKP, KD2Readings) {
  for (int nu : {1, 2, -3}) {
    DKPSet d = dkp_from_m4(Poly(nu));
    EXPECT_TRUE(kd2_report(d.beta_tilde, 4, 1).ok());
    EXPECT_TRUE(kd2_report(d.beta_tilde, 5, 1).ok());
    EXPECT_EQ(kd2_report(d.beta_tilde, 5, 1).items.size(), 125u);
    // printed factor 2 and the untransformed matrices both fail
    EXPECT_EQ(count_ok(kd2_report(d.beta_tilde, 5, 2)), 80u);
    EXPECT_EQ(count_ok(kd2_report(d.beta_tilde, 4, 2)), 43u);
    EXPECT_FALSE(kd2_report(d.beta, 4, 1).ok());
  }
  DKPSet s = dkp_from_m4(Poly::var("nu"));
  EXPECT_TRUE(kd2_report(s.beta_tilde, 5, 1).ok());
  EXPECT_THROW(dkp_from_m4(Poly(0)), std::invalid_argument);
}

TEST(DKP, BetaZeroCube) {
  DKPSet d = dkp_from_m4(Poly(1));
  EXPECT_TRUE((d.beta_tilde[0] * d.beta_tilde[0] * d.beta_tilde[0]).is_zero());
}

TEST(DKP, Hermitizer) {
  DKPSet d = dkp_from_m4(Poly::var("nu"));
  EXPECT_TRUE(check_hermiticity(d.beta_tilde, d.eta).ok());
  EXPECT_FALSE(check_hermiticity(d.beta, d.eta).ok());
}

TEST(Lambda, Examples) {
  GalileiRep ll = build_rep(RepDescriptor::spinor2());
  auto b = solve_lambda(ll);
  EXPECT_EQ(b.size(), 2u);
  BetaSystem l = catalog::levy_leblond();
  EXPECT_TRUE(in_span(b, to_const(l.beta[0])));
  // the hermitizer of the gamma matrices is not a solution; the second generator is [[0,-iI],[iI,0]]
  EXPECT_FALSE(in_span(b, gamma_hermitizer()));
  CMat I = CMat::identity(2), Z(2, 2);
  EXPECT_TRUE(in_span(b, blocks<Cx>({{Z, -Cx::i() * I}, {Cx::i() * I, Z}})));
  auto s = solve_lambda(build_rep(RepDescriptor::row({1, 0, 0})));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(in_span(s, CMat::identity(3)));
  auto m = solve_lambda(catalog::d311_rebased());
  EXPECT_TRUE(in_span(m, to_const(catalog::m4(Poly(1)).beta[0])));
}

TEST(Lambda, LemmaInvariance) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> d(-5, 5);
  for (const auto& rep : {build_rep(RepDescriptor::spinor2()), catalog::d311_rebased(),
                          build_rep(RepDescriptor::row({2, 2, 1}))}) {
    EXPECT_TRUE(lemma_invariance_check(rep, CMat::identity(rep.dim), {Cx(0), Cx(0), Cx(0)}).ok() ||
                !solves_lemma(rep, CMat::identity(rep.dim)));
    for (const auto& L : solve_lambda(rep)) {
      EXPECT_TRUE(solves_lemma(rep, L));
      for (int t = 0; t < 3; ++t) {
        std::array<Cx, 3> v{Cx(d(rng)), Cx(d(rng)), Cx(make_q(d(rng), 3))};
        EXPECT_TRUE(lemma_invariance_check(rep, L, v).ok()) << rep.descriptor.str();
      }
    }
  }
}

TEST(Lambda, ViolatingMatrixFails) {
  GalileiRep ll = build_rep(RepDescriptor::spinor2());
  EXPECT_FALSE(solves_lemma(ll, ll.S[2]));
  EXPECT_FALSE(lemma_invariance_check(ll, ll.S[2], {Cx(1), Cx(2), Cx(0)}).ok());
}
