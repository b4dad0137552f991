#include <gtest/gtest.h>

#include "galileq/reps.hpp"

using namespace galileq;

namespace {

std::array<Cx, 3> rand3(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-5, 5), q(1, 4);
  std::array<Cx, 3> u;
  do {
    for (auto& x : u) x = Cx(make_q(d(rng), q(rng)));
  } while (u[0].is_zero() && u[1].is_zero() && u[2].is_zero());
  return u;
}

bool has_row(const std::vector<AbcFamily>& fams, const QIndex& q) {
  for (const auto& f : fams)
    if (f.table_row && *f.table_row == q) return true;
  return false;
}

}  // namespace

TEST(Table1, AbcSatisfiesA1) {
  for (const auto& q : table1_rows()) EXPECT_TRUE(satisfies_a1(table1_abc(q))) << q_str(q);
  EXPECT_FALSE(satisfies_a1(table1_abc_printed_211()));
}

TEST(Table1, Examples) {
  ABCTriple t = table1_abc({1, 1, 0});
  EXPECT_TRUE(t.A.is_zero());
  EXPECT_TRUE(t.B.is_zero());
  EXPECT_EQ(t.C, (CMat{{1}}));
  ABCTriple u = table1_abc({3, 1, 1});
  EXPECT_EQ(u.A, (CMat{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
  EXPECT_EQ(u.B, (CMat{{0}, {0}, {-1}}));
  EXPECT_EQ(u.C, (CMat{{1, 0, 0}}));
  ABCTriple z = table1_abc({0, 1, 0});
  EXPECT_EQ(z.A.rows(), 0u);
  EXPECT_EQ(z.B.rows(), 0u);
  EXPECT_EQ(z.C.cols(), 0u);
  EXPECT_THROW(table1_abc({4, 0, 0}), std::invalid_argument);
}

TEST(Reps, SpinOneSign) {
  EXPECT_EQ(commutator(spin1(0), spin1(1)), Cx::i() * spin1(2));
  EXPECT_NE(commutator(spin1(0, 1), spin1(1, 1)), Cx::i() * spin1(2, 1));
}

TEST(Reps, TableRowsPassHg) {
  for (const auto& q : table1_rows()) {
    GalileiRep r = build_rep(RepDescriptor::row(q));
    EXPECT_EQ(r.dim, static_cast<std::size_t>(3 * q[0] + q[1]));
    EXPECT_TRUE(verify_hg(r).ok()) << q_str(q);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) EXPECT_EQ(r.eta[a] * r.eta[b], r.eta[b] * r.eta[a]);
  }
}

TEST(Reps, FlippedSpinSignFails) {
  GalileiRep r = build_rep(RepDescriptor::row({2, 1, 0}));
  for (int a = 0; a < 3; ++a) r.S[a] = kron(CMat::identity(2), spin1(a, 1)), r.S[a] = direct_sum<Cx>({r.S[a], CMat(1, 1)});
  HgReport h = verify_hg(r);
  EXPECT_FALSE(h.ok());
  EXPECT_EQ(h.failures().front(), "[S1,S2]=i eps S");
}

TEST(Reps, BuildExamples) {
  GalileiRep r = build_rep(RepDescriptor::row({1, 1, 0}));
  EXPECT_EQ(r.dim, 4u);
  for (int a = 0; a < 3; ++a) {
    EXPECT_TRUE(r.eta[a].block(0, 0, 3, 4).is_zero());
    EXPECT_EQ(r.eta[a].block(3, 0, 1, 3), kvec(a));
  }
  GalileiRep s = build_rep(RepDescriptor::spinor2());
  CMat z(2, 2);
  for (int a = 0; a < 3; ++a) {
    EXPECT_EQ(s.S[a], Cx(make_q(1, 2)) * blocks<Cx>({{pauli(a), z}, {z, pauli(a)}}));
    EXPECT_EQ(s.eta[a], Cx(0, make_q(1, 2)) * blocks<Cx>({{z, z}, {pauli(a), z}}));
  }
  EXPECT_TRUE(verify_hg(s).ok());
  EXPECT_TRUE(verify_hg(build_rep(RepDescriptor::spinor1())).ok());
}

TEST(Reps, SumsAndProducts) {
  auto sum = RepDescriptor::sum({RepDescriptor::row({2, 1, 0}), RepDescriptor::row({1, 1, 1})});
  GalileiRep r = build_rep(sum);
  EXPECT_EQ(r.dim, 11u);
  EXPECT_TRUE(verify_hg(r).ok());
  auto rs = RepDescriptor::tensor(RepDescriptor::row({1, 1, 1}), RepDescriptor::spinor2());
  GalileiRep t = build_rep(rs);
  EXPECT_EQ(t.dim, 16u);
  EXPECT_TRUE(verify_hg(t).ok());
  auto five = RepDescriptor::tensor(
      RepDescriptor::sum({RepDescriptor::row({1, 1, 1}), RepDescriptor::row({0, 1, 0})}), RepDescriptor::spinor2());
  EXPECT_EQ(build_rep(five).dim, 20u);
  EXPECT_TRUE(verify_hg(build_rep(five)).ok());
  EXPECT_TRUE(verify_hg(merged_rep({{3, 1, 1}, {1, 2, 1}})).ok());
}

TEST(Reps, NilpotencyIndex) {
  std::mt19937 rng(21);
  for (const auto& q : table1_rows()) {
    GalileiRep r = build_rep(RepDescriptor::row(q));
    bool zero_eta = r.eta[0].is_zero() && r.eta[1].is_zero() && r.eta[2].is_zero();
    int expect = zero_eta ? 1 : ((q == QIndex{3, 1, 1} || q == QIndex{1, 2, 1}) ? 3 : 2);
    for (int t = 0; t < 3; ++t) {
      auto n = nilpotency_index(r, rand3(rng));
      ASSERT_TRUE(n);
      EXPECT_EQ(*n, expect) << q_str(q);
    }
  }
}

TEST(Reps, BoostMatrix) {
  std::mt19937 rng(23);
  GalileiRep r = build_rep(RepDescriptor::row({3, 1, 1}));
  EXPECT_EQ(boost_matrix(r, {Cx(0), Cx(0), Cx(0)}), CMat::identity(r.dim));
  for (int t = 0; t < 5; ++t) {
    auto v = rand3(rng), w = rand3(rng);
    EXPECT_EQ(boost_matrix(r, v) * boost_matrix(r, v, -1), CMat::identity(r.dim));
    std::array<Cx, 3> vw{v[0] + w[0], v[1] + w[1], v[2] + w[2]};
    EXPECT_EQ(boost_matrix(r, v) * boost_matrix(r, w), boost_matrix(r, vw));
  }
  GalileiRep s = build_rep(RepDescriptor::spinor2());
  auto v = rand3(rng);
  EXPECT_EQ(boost_matrix(s, v), CMat::identity(4) + Cx::i() * eta_dot(s, v));
}

TEST(SolveAbc, SmallCases) {
  auto f11 = solve_abc(1, 1);
  EXPECT_EQ(f11.size(), 2u);
  EXPECT_TRUE(has_row(f11, {1, 1, 0}));
  EXPECT_TRUE(has_row(f11, {1, 1, 1}));
  auto f10 = solve_abc(1, 0);
  ASSERT_EQ(f10.size(), 1u);
  EXPECT_TRUE(f10[0].triple.A.is_zero());
  for (const auto& f : f11) EXPECT_TRUE(satisfies_a1(f.triple));
}

TEST(SolveAbc, TwoOne) {
  auto f = solve_abc(2, 1);
  EXPECT_TRUE(has_row(f, {2, 1, 0}));
  EXPECT_TRUE(has_row(f, {2, 1, 1}));
  for (const auto& x : f) {
    EXPECT_TRUE(satisfies_a1(x.triple));
    EXPECT_TRUE(x.table_row.has_value());
  }
  // the printed B of row (2,1,1) is not a solution at all
  EXPECT_FALSE(satisfies_a1(table1_abc_printed_211()));
}

TEST(SolveAbc, DeskScaleCoverage) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{0, 1}, {2, 0}, {1, 2}, {2, 2}, {3, 1}}) {
    auto f = solve_abc(n, k);
    for (const auto& q : table1_rows())
      if (q[0] == n && q[1] == k) EXPECT_TRUE(has_row(f, q)) << q_str(q);
    for (const auto& x : f) EXPECT_TRUE(x.table_row.has_value()) << n << "," << k;
  }
  EXPECT_THROW(solve_abc(4, 0), std::invalid_argument);
}
