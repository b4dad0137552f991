#include <gtest/gtest.h>

#include "galileq/io.hpp"

using namespace galileq;

namespace {

using Pair = std::pair<QIndex, QIndex>;

// Cells whose printed entries violate (b2) for generic parameter values.
const std::set<Pair>& defective_cells() {
  static const std::set<Pair> s = {
      {{3, 1, 1}, {2, 2, 1}}, {{3, 1, 1}, {2, 1, 0}}, {{3, 1, 1}, {2, 1, 1}}, {{3, 1, 1}, {1, 2, 1}},
      {{3, 1, 1}, {1, 1, 0}}, {{3, 1, 1}, {1, 1, 1}}, {{2, 2, 1}, {3, 1, 1}}, {{2, 2, 1}, {2, 2, 1}},
      {{2, 2, 1}, {2, 1, 1}}, {{2, 1, 0}, {3, 1, 1}}, {{2, 1, 0}, {2, 1, 0}}, {{2, 1, 0}, {2, 1, 1}},
      {{2, 1, 0}, {1, 1, 0}}, {{1, 1, 0}, {1, 1, 0}}};
  return s;
}

bool cell_passes_b2(const REBlocks& b, Sampler& s, int samples) {
  ABCTriple x = table1_abc(b.q), y = table1_abc(b.q2);
  for (const auto& br : constraint_branches(b))
    for (int t = 0; t < samples; ++t) {
      auto vals = sample_branch(b, br, s);
      if (!b2_residual(x, y, subs(b.R, vals), subs(b.E, vals)).is_zero()) return false;
    }
  return true;
}

}  // namespace

TEST(LookupRE, Examples) {
  auto c = lookup_RE({3, 1, 1}, {3, 1, 1});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].R.rows(), 3u);
  EXPECT_EQ(c[0].R, c[0].R.transpose());
  EXPECT_EQ(c[0].E(0, 0), parse_poly("alpha - 2*sigma"));
  EXPECT_EQ(c[0].constraints.size(), 2u);
  EXPECT_EQ(constraint_branches(c[0]).size(), 4u);
  auto d = lookup_RE({1, 1, 1}, {1, 1, 1});
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].R(0, 0), Poly::var("mu"));
  EXPECT_TRUE(d[0].E(0, 0).is_zero());
  auto e = lookup_RE({1, 0, 0}, {0, 1, 0});
  ASSERT_EQ(e.size(), 1u);
  EXPECT_FALSE(e[0].R_exists);
  EXPECT_FALSE(e[0].E_exists);
  EXPECT_TRUE(lookup_RE({1, 0, 0}, {2, 0, 0}).empty());
  EXPECT_EQ(lookup_RE({2, 0, 0}, {1, 1, 0}).size(), 2u);
}

TEST(LookupRE, AllCellsParse) {
  auto cells = all_table_cells();
  EXPECT_EQ(cells.size(), 71u);
  for (const auto& c : cells) {
    EXPECT_EQ(c.R.rows(), static_cast<std::size_t>(c.q[0]));
    EXPECT_EQ(c.E.cols(), static_cast<std::size_t>(c.q2[1]));
  }
}

TEST(SolveB2, Examples) {
  auto s110 = solve_b2({1, 1, 0}, {1, 1, 0});
  EXPECT_EQ(s110.size(), 1u);  // E is forced to zero when R is free
  auto s100 = solve_b2({1, 0, 0}, {1, 0, 0});
  ASSERT_EQ(s100.size(), 1u);
  EXPECT_EQ(s100[0].E.rows(), 0u);
  auto s311 = solve_b2({3, 1, 1}, {3, 1, 1});
  Sampler smp(1);
  auto c = lookup_RE({3, 1, 1}, {3, 1, 1})[0];
  for (const auto& br : constraint_branches(c))
    for (int t = 0; t < 5; ++t) {
      auto v = sample_branch(c, br, smp);
      EXPECT_TRUE(in_b2_space(s311, to_const(subs(c.R, v)), to_const(subs(c.E, v))));
    }
}

TEST(SolveB2, ContainsEveryConsistentCell) {
  Sampler smp(2);
  for (const auto& c : all_table_cells()) {
    if (defective_cells().count({c.q, c.q2})) continue;
    auto basis = solve_b2(c.q, c.q2);
    std::size_t free = c.parameters().size();
    EXPECT_GE(basis.size() + 0, free > 0 ? 1u : 0u);
    for (const auto& br : constraint_branches(c))
      for (int t = 0; t < 3; ++t) {
        auto v = sample_branch(c, br, smp);
        EXPECT_TRUE(in_b2_space(basis, to_const(subs(c.R, v)), to_const(subs(c.E, v))))
            << q_str(c.q) << q_str(c.q2);
      }
  }
}

TEST(RECells, B2OnSamples) {
  Sampler smp(3);
  std::set<Pair> failing;
  for (const auto& c : all_table_cells())
    if (!cell_passes_b2(c, smp, 5)) failing.insert({c.q, c.q2});
  EXPECT_EQ(failing, defective_cells());
}

TEST(RECells, AssembledSystemsSatisfyCond) {
  Sampler smp(4);
  for (const auto& c : all_table_cells()) {
    if (defective_cells().count({c.q, c.q2})) continue;
    if (!c.R_exists && !c.E_exists) continue;
    for (const auto& br : constraint_branches(c)) {
      auto v = sample_branch(c, br, smp);
      BetaSystem bs = assemble_cell(c, v);
      EXPECT_TRUE(verify_invariance(bs).ok()) << bs.id << " " << br.label;
    }
  }
}

TEST(RECells, DefectiveCellsBreakCond) {
  Sampler smp(5);
  for (const auto& c : all_table_cells()) {
    if (!defective_cells().count({c.q, c.q2})) continue;
    auto br = constraint_branches(c).front();
    auto v = sample_branch(c, br, smp);
    EXPECT_FALSE(verify_invariance(assemble_cell(c, v)).ok()) << q_str(c.q) << q_str(c.q2);
  }
}

TEST(RECells, ConstraintViolationRejected) {
  auto c = lookup_RE({3, 1, 1}, {3, 1, 1})[0];
  std::map<int, Poly> v;
  for (int p : c.parameters()) v[p] = Poly(1);
  EXPECT_THROW(assemble_cell(c, v), std::invalid_argument);
}

TEST(DeriveBlocks, Examples) {
  ABCTriple t = table1_abc({1, 1, 1});
  MultBlocks b = derive_blocks(t, t, PMat{{Poly(1)}}, PMat{{Poly(0)}});
  EXPECT_TRUE(b.F.is_zero());
  EXPECT_EQ(b.G, (PMat{{Poly(2)}}));
  EXPECT_TRUE(b.H.is_zero());
  EXPECT_EQ(b.M, (PMat{{Poly(-1)}}));
  ABCTriple u = table1_abc({2, 1, 0});
  MultBlocks z = derive_blocks(u, u, PMat(2, 2), PMat(1, 1));
  EXPECT_TRUE(z.F.is_zero() && z.G.is_zero() && z.H.is_zero() && z.M.is_zero());
  MultBlocks m2 = derive_blocks(u, u, PMat{{Poly(0), Poly(0)}, {Poly(0), Poly(1)}}, PMat{{Poly(1)}});
  EXPECT_EQ(m2.H, (PMat{{Poly(0), Poly(1)}, {Poly(-1), Poly(0)}}));
  EXPECT_EQ(m2.F, (PMat{{Poly(2), Poly(0)}, {Poly(0), Poly(0)}}));
  EXPECT_THROW(derive_blocks(u, u, PMat(1, 1), PMat(1, 1)), std::invalid_argument);
}

TEST(Canonical, GoldenMatch) {
  for (const auto& bs : {catalog::m1(), catalog::m2(), catalog::m3(), catalog::m4()}) {
    GoldenSystem g = load_golden(bs.id);
    EXPECT_EQ(g.rep, bs.rep.descriptor.str());
    EXPECT_TRUE(compare_golden(bs, g).empty()) << bs.id;
    EXPECT_TRUE(verify_invariance(bs).ok()) << bs.id;
  }
}

TEST(Canonical, M4TableBasisDiffersBySign) {
  BetaSystem a = catalog::m4(), b = catalog::m4_table_basis();
  EXPECT_TRUE(verify_invariance(b).ok());
  CMat V = CMat::identity(10);
  V(9, 9) = -1;
  for (int m = 0; m < 5; ++m) EXPECT_EQ(pmat(V) * b.beta[m] * pmat(V), a.beta[m]);
  EXPECT_FALSE(compare_golden(b, load_golden("M4")).empty());
}

TEST(Canonical, LevyLeblond) {
  EXPECT_TRUE(verify_invariance(catalog::levy_leblond()).ok());
  auto sym_ll = catalog::levy_leblond(Poly::var("kappa"), Poly::var("omega"));
  EXPECT_TRUE(verify_invariance(sym_ll).ok());
  EXPECT_TRUE(check_hermiticity(sym_ll).ok());
}

TEST(Canonical, PerturbationDetected) {
  BetaSystem bs = catalog::m2();
  bs.beta[4](0, 0) += Poly(1);
  CheckReport r = verify_invariance(bs);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.failures().empty());
}

TEST(Hermiticity, Examples) {
  for (const auto& bs : catalog::canonical()) EXPECT_TRUE(check_hermiticity(bs).ok()) << bs.id;
}

TEST(EquivTransform, Identity) {
  BetaSystem bs = catalog::m2();
  BetaSystem t = equiv_transform(bs, CMat::identity(bs.dim()));
  for (int m = 0; m < 5; ++m) EXPECT_EQ(t.beta[m], bs.beta[m]);
}

TEST(EquivTransform, RandomCommutantPreservesCond) {
  Sampler smp(6);
  for (const auto& bs : catalog::canonical()) {
    for (int t = 0; t < 3; ++t) {
      auto V = random_commutant_element(bs.rep, smp);
      ASSERT_TRUE(V);
      EXPECT_TRUE(verify_invariance(equiv_transform(bs, *V)).ok()) << bs.id;
    }
  }
  BetaSystem m2 = catalog::m2();
  CMat bad = CMat::identity(m2.dim());
  bad(0, 1) = 1;
  EXPECT_THROW(equiv_transform(m2, bad), std::invalid_argument);
}

TEST(EquivTransform, LevyLeblondOmega) {
  Poly kappa = Poly::var("kappa"), omega = Poly::var("omega");
  BetaSystem ll = catalog::levy_leblond(kappa, omega);
  // the printed U does not commute with the boosts and leaves omega in place
  EXPECT_THROW(equiv_transform(ll, catalog::ll_printed_U(omega)), std::invalid_argument);
  auto conj = catalog::conjugate_betas(ll.beta, catalog::ll_printed_U(omega));
  EXPECT_NE(conj[4], catalog::levy_leblond(kappa, Poly(0)).beta[4]);
  BetaSystem t = equiv_transform(ll, catalog::ll_omega_eliminator(omega));
  BetaSystem target = catalog::levy_leblond(kappa - Poly(make_q(1, 2)) * omega * omega, Poly(0));
  for (int m = 0; m < 5; ++m) EXPECT_EQ(t.beta[m], target.beta[m]);
  EXPECT_TRUE(verify_invariance(t).ok());
}
