#include <gtest/gtest.h>

#include "galileq/contraction.hpp"

using namespace galileq;

TEST(Contraction, ComponentEquationsFollowFromProca) {
  auto d = proca_relativistic_components();
  ASSERT_TRUE(d.G);
  EXPECT_TRUE(d.recovers_relativistic);
  EXPECT_EQ(d.w_sign, -1);
  // the definition with the other sign of W admits no constant recombination
  auto Ti = inverse(contraction_variables(1));
  ASSERT_TRUE(Ti);
  EXPECT_FALSE(left_recombination(d.relativistic * pmat(*Ti), d.components));
}

TEST(Contraction, ThirdGroup) {
  PMat E = proca_components_printed();
  Poly P2 = Poly::var("P2"), P3 = Poly::var("P3"), k = kappa_sym();
  // eps^{1bc} p_b (R_c + N_c/2) = kappa W^1
  EXPECT_EQ(E(6, 2), P2);
  EXPECT_EQ(E(6, 1), -P3);
  EXPECT_EQ(E(6, 5), Poly(make_q(1, 2)) * P2);
  EXPECT_EQ(E(6, 6), -k);
  EXPECT_TRUE(E(6, 0).is_zero());
}

TEST(Contraction, UnscaledSystemIsEquivalent) {
  // kappa -> m without scaling is an invertible change of variables
  auto d = proca_relativistic_components();
  std::map<int, Poly> v{{sym("kappa"), Poly::var("m")}};
  PMat L = subs(d.relativistic, v), E = subs(d.components, v);
  EXPECT_EQ(pmat(*d.G) * L * pmat(*inverse(d.T)), E);
  EXPECT_EQ(det_bareiss(L).is_zero(), det_bareiss(E).is_zero());
}

TEST(Contraction, LowestOrderIsGalilean) {
  auto r = contraction_pipeline();
  EXPECT_TRUE(r.match.ok);
  EXPECT_TRUE(r.contracted.empty.empty());
  EXPECT_EQ(r.contracted.lowest, (std::vector<int>{0, 0, 0, 0, 0, 0, -1, -1, -1, -1}));
  Poly m = Poly::var("m"), p0 = Poly::var("p0"), p1 = Poly::var("p1");
  // 2 m Nt^1 = eps^{1bc} pt_b Wt_c - pt^1 Bt
  EXPECT_EQ(r.contracted.equations(3, 3), Poly(2) * m);
  EXPECT_EQ(r.contracted.equations(3, 9), p1);
  EXPECT_EQ(r.contracted.equations(0, 0), Poly(2) * p0);
  EXPECT_TRUE(r.slaved_free);
}

TEST(Contraction, DroppedTerms) {
  auto r = contraction_pipeline();
  ASSERT_FALSE(r.contracted.dropped.empty());
  for (const auto& d : r.contracted.dropped) {
    EXPECT_GE(d.equation, 6u);
    EXPECT_EQ(d.power, 1);
    // Nt contributions, plus the pt_0 part of kappa multiplying Wt and Bt
    bool n = d.component[0] == 'N';
    EXPECT_TRUE(n || d.coefficient == Poly(make_q(1, 2)) * Poly::var("p0")) << d.component;
  }
}

TEST(Contraction, PrintedMomentumScalingDegenerates) {
  auto r = contraction_pipeline(MomentumScaling::AsPrinted);
  EXPECT_FALSE(r.match.ok);
  // first group keeps only 2 pt_0 Rt^a
  for (std::size_t j = 1; j < 10; ++j) EXPECT_TRUE(r.contracted.equations(0, j).is_zero());
  EXPECT_FALSE(r.m2.witness);
}

TEST(Contraction, Idempotent) {
  auto a = contraction_pipeline(), b = contraction_pipeline();
  EXPECT_EQ(a.contracted.equations, b.contracted.equations);
  EXPECT_EQ(contraction_json(a).dump(), contraction_json(b).dump());
  // contracting a system that has no eps_c dependence returns it unchanged
  ScaledSystem s;
  s.equations = a.contracted.equations;
  EXPECT_EQ(contract(s).equations, a.contracted.equations);
}

TEST(Contraction, WitnessToM2) {
  auto r = contraction_pipeline();
  ASSERT_TRUE(r.m2.witness);
  const auto& w = *r.m2.witness;
  EXPECT_EQ(pmat(w.left) * r.essential * pmat(w.right), wave_operator(catalog::m2().beta));
  EXPECT_EQ(w.block_map, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(r.witness_invariant);
}

TEST(Contraction, SignFlipHasNoWitness) {
  auto r = contraction_pipeline();
  PMat bad = r.essential;
  bad(0, 6) = -bad(0, 6);
  auto ws = find_witness(bad, {3, 3, 1}, wave_operator(catalog::m2().beta), {3, 3, 1});
  EXPECT_FALSE(ws.witness);
  EXPECT_FALSE(ws.reason.empty());
}

TEST(Contraction, NoWitnessToGalileanProca) {
  auto r = contraction_pipeline();
  EXPECT_FALSE(r.galilean_proca.witness);
  EXPECT_FALSE(r.galilean_proca_essential.witness);
  EXPECT_NE(r.galilean_proca.reason.find("dimension"), std::string::npos);
}

TEST(Witness, RecoversBlockTransform) {
  Sampler s(5);
  PMat L = wave_operator(catalog::m2().beta);
  // swap the vector blocks with scalings 2, -1, 3 and recombine rows with a random invertible G
  CMat Q(7, 7), G(7, 7);
  for (int k = 0; k < 3; ++k) {
    Q(3 + k, k) = Cx(2);
    Q(k, 3 + k) = Cx(-1);
  }
  Q(6, 6) = Cx(3);
  do {
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) G(i, j) = Cx(s.integer(-2, 2));
  } while (!inverse(G));
  PMat target = pmat(G) * L * pmat(Q);
  auto ws = find_witness(L, {3, 3, 1}, target, {3, 3, 1});
  ASSERT_TRUE(ws.witness);
  EXPECT_EQ(pmat(ws.witness->left) * L * pmat(ws.witness->right), target);
  auto none = find_witness(L, {3, 3, 1}, wave_operator(catalog::m1().beta), {3, 1});
  EXPECT_FALSE(none.witness);
}

TEST(Contraction, Json) {
  auto j = contraction_json(contraction_pipeline());
  EXPECT_TRUE(j["match"]["ok"]);
  EXPECT_TRUE(j["witness_M2"]["found"]);
  EXPECT_EQ(j["witness_M2"]["left"].size(), 7u);
  EXPECT_FALSE(j["witness_galilean_proca"]["found"]);
  EXPECT_EQ(j["scaling"], "consistent");
}
