#include <gtest/gtest.h>

#include "galileq/spectral.hpp"

using namespace galileq;

namespace {

std::vector<BetaSystem> numeric_catalog() {
  return {catalog::m1(), catalog::m2(), catalog::m3(), catalog::m4(Poly(1)), catalog::m4(Poly(2)),
          catalog::levy_leblond()};
}

std::map<Rational, std::size_t> s2_content(const ClassificationResult& c) {
  std::map<Rational, std::size_t> k;
  for (const auto& b : c.branches)
    for (const auto& e : b.s2) k[e.value] += e.dim;
  return k;
}

}  // namespace

TEST(Casimirs, Examples) {
  Poly m = Poly::var("m");
  auto scalar = build_rep(RepDescriptor::row({0, 1, 0}));
  EXPECT_TRUE(casimirs(scalar).C3.is_zero());
  auto vec = build_rep(RepDescriptor::row({1, 0, 0}));
  EXPECT_EQ(casimirs(vec).C3, (m * m) * pmat(spin_squared(vec.S)));
  auto c = casimirs(vec);
  EXPECT_EQ(c.C1, PMat::scalar(3, m));
}

TEST(Casimirs, RestFrameReducesToSpin) {
  std::map<int, Poly> rest{{sym("p1"), Poly(0)}, {sym("p2"), Poly(0)}, {sym("p3"), Poly(0)}};
  for (const auto& q : table1_rows()) {
    auto rep = build_rep(RepDescriptor::row(q));
    Poly m = Poly::var("m");
    EXPECT_EQ(subs(casimirs(rep).C3, rest), (m * m) * pmat(spin_squared(rep.S))) << q_str(q);
  }
}

TEST(Casimirs, CommuteWithBoostedFrame) {
  for (const auto& q : table1_rows()) {
    auto rep = build_rep(RepDescriptor::row(q));
    PMat W = w_matrix(rep, 1), Wi = w_matrix(rep, -1);
    Poly m = Poly::var("m");
    EXPECT_EQ(W * casimirs(rep).C3 * Wi, (m * m) * pmat(spin_squared(rep.S))) << q_str(q);
  }
}

TEST(WIdentity, Catalog) {
  for (const auto& bs : catalog::canonical()) {
    auto r = w_identity(bs);
    EXPECT_TRUE(r.ok()) << bs.id << " " << (r.failures().empty() ? "" : r.failures()[0]);
  }
  EXPECT_TRUE(w_identity(catalog::levy_leblond(Poly::var("kappa"), Poly::var("omega"))).ok());
}

TEST(WIdentity, SecondOrderW) {
  BetaSystem m4 = catalog::m4();
  PMat W = w_matrix(m4.rep, 1);
  int p1 = sym("p1");
  int top = 0;
  for (const auto& e : W.data()) top = std::max(top, e.max_deg(p1));
  EXPECT_EQ(top, 2);
  EXPECT_TRUE(w_identity(m4).ok());
}

TEST(WIdentity, PerturbedSystemFails) {
  for (auto bs : catalog::canonical()) {
    bs.beta[1](0, 0) += Poly(1);
    EXPECT_FALSE(w_identity(bs).ok()) << bs.id;
  }
}

TEST(ConsistencyDets, Examples) {
  Poly C2 = Poly::var("C2"), m = Poly::var("m");
  auto m1 = consistency_dets(catalog::m1());
  EXPECT_EQ(m1.detV, Poly(2) * m * m);
  EXPECT_EQ(m1.detS, Poly(2) * C2);
  EXPECT_EQ(m1.verdict, Verdict::ParticleSpin0);
  auto m2 = consistency_dets(catalog::m2());
  EXPECT_EQ(m2.detV, Poly(4) * m * m * C2);
  EXPECT_EQ(m2.detS, Poly(2) * m * m);
  EXPECT_EQ(m2.verdict, Verdict::ParticleSpin1);
  ASSERT_TRUE(m2.linear);
  EXPECT_FALSE((*m2.linear)[0].is_zero());
  EXPECT_TRUE((*m2.linear)[1].is_zero());
  EXPECT_TRUE((*m2.linear)[2].is_zero());
  auto m3 = consistency_dets(catalog::m3());
  EXPECT_EQ(m3.detV, Poly(4) * m * m * C2);
  EXPECT_EQ(m3.detS, Poly(4) * m * m * C2);
  EXPECT_EQ(m3.verdict, Verdict::Composite);
}

TEST(ConsistencyDets, M4InternalEnergy) {
  for (int nu : {1, 2, -3}) {
    auto cd = consistency_dets(catalog::m4(Poly(nu)), Rational(1));
    EXPECT_EQ(cd.verdict, Verdict::ParticleSpin1);
    ASSERT_EQ(cd.branches.size(), 1u);
    EXPECT_EQ(cd.branches[0].epsilon, Rational(nu * nu));
  }
  auto cd = consistency_dets(catalog::m4(Poly(2)), Rational(3));
  EXPECT_EQ(cd.branches[0].epsilon, Rational(36));
}

TEST(ConsistencyDets, BlockDeterminantCubed) {
  int x = sym("C2");
  Poly m = Poly::var("m");
  for (const auto& bs : {catalog::m2(), catalog::m3(), catalog::m4(Poly(2))}) {
    const auto& b = *bs.blocks;
    PMat full = kron(Poly::var(x) * b.F + Poly(2) * m * m * b.R, PMat::identity(3));
    Poly d = consistency_dets(bs).detV;
    EXPECT_EQ(det_bareiss(full), d * d * d) << bs.id;
  }
}

TEST(ConsistencyDets, SectorsMatchBlocks) {
  int x = sym("C2");
  for (const auto& bs : {catalog::m1(), catalog::m2(), catalog::m3(), catalog::m4(Poly(1))}) {
    auto cd = consistency_dets(bs);
    PMat P = Poly::var(x) * bs.beta[0] + Poly(2) * bs.beta[4];
    auto sectors = sector_dets(P, x, bs.rep.S);
    std::vector<Branch> br;
    EXPECT_EQ(verdict_from_sectors(sectors, br), cd.verdict) << bs.id;
    EXPECT_TRUE(same_branches(br, cd.branches)) << bs.id;
  }
}

TEST(Classify, Examples) {
  auto m1 = classify(catalog::m1(), Rational(1));
  ASSERT_EQ(m1.branches.size(), 1u);
  EXPECT_EQ(m1.branches[0].epsilon, Rational(0));
  EXPECT_EQ(m1.branches[0].multiplicity, 1u);
  EXPECT_EQ(m1.verdict, Verdict::ParticleSpin0);
  auto m2 = classify(catalog::m2(), Rational(1));
  EXPECT_EQ(m2.branches[0].multiplicity, 3u);
  EXPECT_EQ(m2.verdict, Verdict::ParticleSpin1);
  EXPECT_EQ(s2_content(m2), (std::map<Rational, std::size_t>{{Rational(2), 3}}));
  auto m4 = classify(catalog::m4(Poly(1)), Rational(1));
  EXPECT_EQ(m4.branches[0].epsilon, Rational(1));
  EXPECT_EQ(m4.branches[0].multiplicity, 3u);
  auto m3 = classify(catalog::m3(), Rational(1));
  EXPECT_EQ(m3.verdict, Verdict::Composite);
  EXPECT_EQ(s2_content(m3), (std::map<Rational, std::size_t>{{Rational(0), 1}, {Rational(2), 3}}));
  auto ll = classify(catalog::levy_leblond(), Rational(1));
  EXPECT_EQ(ll.verdict, Verdict::ParticleSpinHalf);
}

TEST(Classify, AgreesWithDeterminants) {
  for (const auto& bs : numeric_catalog())
    for (Rational m : {Rational(1), make_q(3, 2), Rational(5)}) {
      auto c = classify(bs, m);
      ASSERT_TRUE(c.agrees_with_dets);
      EXPECT_TRUE(*c.agrees_with_dets) << bs.id;
      EXPECT_NE(c.verdict, Verdict::Inconsistent) << bs.id;
    }
}

TEST(Classify, Errors) {
  EXPECT_THROW(classify(catalog::m1(), Rational(0)), std::invalid_argument);
  EXPECT_THROW(classify(catalog::m1(), Rational(-1)), std::invalid_argument);
  EXPECT_THROW(classify(catalog::m4(), Rational(1)), std::invalid_argument);
}

TEST(Classify, DegeneratePencil) {
  BetaSystem bs = catalog::m1();
  bs.beta[0] = PMat(bs.dim(), bs.dim());
  bs.beta[4] = PMat(bs.dim(), bs.dim());
  auto c = classify(bs, Rational(1));
  EXPECT_TRUE(c.degenerate);
  EXPECT_EQ(c.verdict, Verdict::Inconsistent);
}

TEST(Classify, LevyLeblondKappa) {
  // kappa enters beta_4 and shifts the internal energy
  auto c = classify(catalog::levy_leblond(Poly(1), Poly(0)), Rational(1));
  ASSERT_EQ(c.branches.size(), 1u);
  EXPECT_EQ(c.verdict, Verdict::ParticleSpinHalf);
  EXPECT_TRUE(*c.agrees_with_dets);
}

TEST(PlaneWave, Examples) {
  auto m2 = plane_wave_solutions(catalog::m2(), Rational(1), {Rational(1), Rational(0), Rational(0)});
  ASSERT_EQ(m2.branches.size(), 1u);
  EXPECT_EQ(m2.branches[0].p0, make_q(1, 2));
  EXPECT_EQ(m2.branches[0].count(), 3u);
  auto m1 = plane_wave_solutions(catalog::m1(), Rational(1), {Rational(0), Rational(0), Rational(0)});
  ASSERT_EQ(m1.branches.size(), 1u);
  EXPECT_EQ(m1.branches[0].p0, Rational(0));
  EXPECT_EQ(m1.branches[0].count(), 1u);
  auto ll = plane_wave_solutions(catalog::levy_leblond(), Rational(1), {Rational(0), Rational(1), Rational(0)});
  ASSERT_EQ(ll.branches.size(), 1u);
  EXPECT_EQ(ll.branches[0].p0, make_q(1, 2));
  EXPECT_EQ(ll.branches[0].count(), 2u);
}

TEST(PlaneWave, DirectionIndependence) {
  std::vector<std::array<Rational, 3>> dirs = {
      {Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(2), Rational(1)},
      {make_q(1, 2), Rational(-1), Rational(3)}, {Rational(-2), Rational(-2), Rational(1)}};
  for (const auto& bs : numeric_catalog()) {
    auto c = classify(bs, Rational(2));
    for (const auto& p : dirs) {
      auto pw = plane_wave_solutions(bs, Rational(2), p);
      EXPECT_TRUE(plane_wave_matches(pw, c, p)) << bs.id;
    }
  }
}

TEST(Metamorphic, EquivTransformKeepsClassification) {
  Sampler s(20261016);
  for (const auto& bs : numeric_catalog()) {
    auto base = classify(bs, Rational(1));
    for (int t = 0; t < 3; ++t) {
      auto V = random_commutant_element(bs.rep, s);
      ASSERT_TRUE(V);
      auto c = classify(equiv_transform(bs, *V), Rational(1));
      EXPECT_EQ(c.verdict, base.verdict) << bs.id;
      EXPECT_TRUE(same_branches(c.branches, base.branches)) << bs.id;
    }
  }
}

TEST(Metamorphic, BoostCovariance) {
  Sampler s(7);
  for (const auto& bs : numeric_catalog())
    for (int t = 0; t < 3; ++t) {
      std::array<Rational, 3> p{s.nonzero(), s.nonzero(), s.nonzero()}, v{s.nonzero(), s.nonzero(), s.nonzero()};
      EXPECT_TRUE(boost_covariance(bs, make_q(3, 2), p, v)) << bs.id;
    }
}

TEST(Spin, FromS2) {
  EXPECT_EQ(*spin_from_s2(Rational(2)), Rational(1));
  EXPECT_EQ(*spin_from_s2(make_q(15, 4)), make_q(3, 2));
  EXPECT_EQ(*spin_from_s2(Rational(0)), Rational(0));
  EXPECT_FALSE(spin_from_s2(Rational(1)));
}
