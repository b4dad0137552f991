#include <gtest/gtest.h>

#include "galileq/gauge.hpp"

using namespace galileq;

namespace {

Poly var(const char* n) { return Poly::var(n); }

NCElement sc(std::size_t d, const Poly& p) { return nc_scalar(d, p); }

// random small NC elements over 2x2 matrices
NCElement sample(NCAlgebra& alg, Sampler& s) {
  NCElement x(2, 2);
  for (int t = 0; t < 3; ++t) {
    NCElement m = nc_matrix(CMat{{s.nonzero(3, 2), s.nonzero(3, 2)}, {s.nonzero(3, 2), s.nonzero(3, 2)}});
    NCElement f = sc(2, Poly(s.nonzero(3, 2)) * Poly::var(field::H(t % 3)) + Poly(s.nonzero(3, 2)) * Poly::var(field::E((t + 1) % 3)));
    x += alg.mul(alg.mul(m, f), nc_pi(2, t % 4));
  }
  x += nc_pi(2, 3);
  return x;
}

}  // namespace

TEST(NCAlgebra, Commutators) {
  NCAlgebra alg;
  NCElement c = alg.commutator(nc_pi(1, 1), nc_pi(1, 2));
  EXPECT_EQ(c, sc(1, Poly(Cx::i()) * e_sym() * var("H3")));
  EXPECT_EQ(alg.commutator(nc_pi(1, 0), nc_pi(1, 1)), sc(1, Poly(Cx::i()) * e_sym() * var("E1")));
  EXPECT_EQ(alg.commutator(nc_pi(1, 2), sc(1, var("H1"))), sc(1, Poly(-Cx::i()) * var("dH12")));
  EXPECT_TRUE(alg.commutator(nc_pi(1, 0), sc(1, var("H1"))).is_zero());
  NCConfig flipped;
  flipped.commutator_sign = -1;
  NCAlgebra alt(flipped);
  EXPECT_EQ(alt.commutator(nc_pi(1, 1), nc_pi(1, 2)), -c);
}

TEST(NCAlgebra, MaxwellCanonicalForm) {
  NCAlgebra alg;
  EXPECT_EQ(alg.field_derivative(true, 2, 0), var("dE13"));
  EXPECT_EQ(alg.field_derivative(false, 2, 2), -var("dH11") - var("dH22"));
  EXPECT_EQ(alg.dx(var("A0"), 1), -var("E2"));
  // second derivatives are dropped and counted
  std::size_t before = alg.log().second_derivatives;
  EXPECT_TRUE(alg.dx(var("dE12"), 0).is_zero());
  EXPECT_EQ(alg.log().second_derivatives, before + 1);
}

TEST(NCAlgebra, Jacobi) {
  NCAlgebra alg;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        NCElement x = nc_pi(1, a), y = nc_pi(1, b), z = nc_pi(1, c);
        NCElement j = alg.commutator(x, alg.commutator(y, z)) + alg.commutator(y, alg.commutator(z, x)) +
                      alg.commutator(z, alg.commutator(x, y));
        EXPECT_TRUE(j.is_zero()) << a << b << c;
      }
}

TEST(NCAlgebra, AssociativeAndHomomorphic) {
  Sampler s(11);
  NCAlgebra alg(NCConfig::second_order_in_e());
  for (int t = 0; t < 4; ++t) {
    NCElement a = sample(alg, s), b = sample(alg, s), c = sample(alg, s);
    EXPECT_EQ(alg.mul(alg.mul(a, b), c), alg.mul(a, alg.mul(b, c)));
    EXPECT_EQ(alg.normalize(alg.mul(a, b)), alg.mul(alg.normalize(a), alg.normalize(b)));
    EXPECT_EQ(alg.normalize(alg.normalize(a)), alg.normalize(a));
    EXPECT_EQ(alg.dagger(alg.dagger(a)), a);
    EXPECT_EQ(alg.dagger(alg.mul(a, b)), alg.mul(alg.dagger(b), alg.dagger(a)));
  }
}

TEST(NCAlgebra, Truncation) {
  NCAlgebra alg(NCConfig::first_order_in_e());
  NCElement x = alg.mul(alg.commutator(nc_pi(1, 1), nc_pi(1, 2)), alg.commutator(nc_pi(1, 2), nc_pi(1, 3)));
  EXPECT_TRUE(x.is_zero());
  EXPECT_GT(alg.log().graded, 0u);
}

TEST(NCAlgebra, ExpSeries) {
  NCAlgebra alg;
  auto m4 = catalog::m4();
  NCElement X = Poly(-Cx::i()) * m_sym().pow(-1) * eta_dot_pi(m4.rep);
  EXPECT_NO_THROW(alg.exp_series(X, 3));
  EXPECT_THROW(alg.exp_series(X, 2), std::domain_error);
}

TEST(Coupling, MinimalAndPauli) {
  for (const auto& bs : catalog::canonical()) {
    CouplingSpec none{bs.beta[0], Poly(0), Poly(0)};
    EXPECT_EQ(pauli_extend(bs, none), minimal_coupling(bs)) << bs.id;
    EXPECT_EQ(minimal_coupling(bs).coeff(Word{}), bs.beta[4] * PMat::scalar(bs.dim(), m_sym()));
  }
  auto ll = catalog::levy_leblond();
  EXPECT_NO_THROW(pauli_extend(ll, {var("nu") * ll.beta[0] + var("mu") * pmat(ll_eta()), var("l1"), var("l2")}));
  EXPECT_THROW(pauli_extend(ll, {ll.beta[1], Poly(1), Poly(1)}), std::invalid_argument);
}

TEST(WReduce, FreeLimitIsWIdentity) {
  NCAlgebra alg;
  for (const auto& bs : catalog::canonical()) {
    auto r = w_reduce(alg, minimal_coupling(bs), bs.rep);
    std::size_t d = bs.dim();
    NCElement want = alg.mul(NCElement(bs.beta[0]), nc_pi(d, 0)) -
                     (Poly(make_q(1, 2)) * m_sym().pow(-1)) * alg.mul(NCElement(bs.beta[0]), nc_pi_squared(alg, d)) +
                     NCElement(bs.beta[4] * PMat::scalar(d, m_sym()));
    EXPECT_EQ(r.Q.grade(sym("e"), 0), want) << bs.id;
  }
}

TEST(WReduce, AproxForm) {
  NCAlgebra alg(NCConfig::first_order_in_e());
  for (const auto& bs : catalog::canonical()) {
    CouplingSpec spec{bs.beta[0], var("lambda1"), var("lambda2")};
    auto r = w_reduce(alg, pauli_extend(bs, spec), bs.rep);
    for (auto v : {QTildeVariant::AsPrinted, QTildeVariant::Symmetric})
      EXPECT_EQ(r.Q, aprox_form(alg, bs, spec, v)) << bs.id << " " << variant_name(v);
  }
}

TEST(WReduce, ElectricSpinCoupling) {
  NCAlgebra alg(NCConfig::first_order_in_e());
  auto ll = catalog::levy_leblond();
  EXPECT_TRUE(electric_part(w_reduce(alg, minimal_coupling(ll), ll.rep).Q).is_zero());
  auto m4 = catalog::m4();
  EXPECT_FALSE(electric_part(w_reduce(alg, minimal_coupling(m4), m4.rep).Q).is_zero());
}

TEST(Quadrupole, DkpBlocks) {
  auto q = dkp_quadrupole_check(catalog::m4());
  EXPECT_TRUE(q.q_hat_ok);
  EXPECT_TRUE(q.q_tilde_ok[QTildeVariant::Symmetric]);
  EXPECT_TRUE(q.q_tilde_ok[QTildeVariant::AsPrinted]);
  EXPECT_TRUE(q.tie);
  EXPECT_EQ(q.selected, QTildeVariant::Symmetric);
}

TEST(Reduction, PauliMinimal) {
  NCAlgebra alg(NCConfig::second_order_in_e());
  auto r = reduce_levy_leblond(alg, Poly(0), Poly(0), Poly(0), Poly(0));
  EXPECT_TRUE(r.fit.exact());
  EXPECT_EQ(r.fit.get("pi^2"), -(Poly(make_q(1, 2)) * m_sym().pow(-1)));
  EXPECT_EQ(r.g_spin_half, Poly(2));
  EXPECT_TRUE(r.slaving.is_zero());
  EXPECT_EQ(r.transformed.coeff(Word{}).block(2, 2, 2, 2), PMat::scalar(2, Poly(2) * m_sym()));
}

TEST(Reduction, PauliAnomalous) {
  NCAlgebra alg(NCConfig::second_order_in_e());
  Poly nu = var("nu"), mu = var("mu"), l1 = var("lambda1"), l2 = var("lambda2"), e = e_sym(), m = m_sym();
  auto r = reduce_levy_leblond(alg, nu, mu, l1, l2);
  ASSERT_TRUE(r.fit.exact());
  EXPECT_EQ(r.lambda3, mu * l2);
  EXPECT_EQ(r.g_literal, Poly(1) + mu * l1 + nu * l2);
  EXPECT_EQ(r.g_spin_half, Poly(2) + Poly(2) * mu * l1 + Poly(2) * nu * l2);
  EXPECT_EQ(r.fit.get("H^2"), -(Poly(make_q(1, 8)) * r.lambda3 * r.lambda3 * e * e * m.pow(-3)));
  ASSERT_TRUE(r.slaving_fit.exact());
  EXPECT_EQ(r.slaving_fit.get("sigma.H"), Poly(Cx(Rational(0), make_q(-1, 4))) * r.lambda3 * e * m.pow(-2));
}

TEST(Reduction, DkpHamiltonian) {
  NCAlgebra alg(NCConfig::second_order_in_e());
  Poly nu = var("nu"), l1 = var("lambda1"), l2 = var("lambda2"), e = e_sym(), m = m_sym();
  auto r = reduce_dkp(alg, nu, l1, l2);
  ASSERT_TRUE(r.fit.exact());
  EXPECT_EQ(r.rest, Poly(make_q(1, 2)) * nu * nu * m);
  EXPECT_EQ(r.fit.get("pi^2"), Poly(make_q(1, 2)) * m.pow(-1));
  EXPECT_EQ(r.g, Poly(1) + Poly(2) * l2 - l1 * nu.pow(-1));
  Poly q = Poly(1) - l2;
  EXPECT_EQ(r.q_electric, Poly(make_q(1, 2)) * q);
  EXPECT_EQ(r.q_cross, -(Poly(make_q(1, 2)) * q));
  EXPECT_EQ(r.two_minus_q, Poly(make_q(1, 2)) * (Poly(2) - q));
  EXPECT_EQ(r.quadratic, Poly(make_q(1, 2)) * e * e * nu.pow(-2) * m.pow(-3));
  EXPECT_EQ(r.fit.get("(s.H)^2"), -r.quadratic);
  // psi_2 = -nu psi_1
  EXPECT_EQ(r.slaving.coeff(Word{}).block(0, 0, 3, 3).map([&](const Poly& p) { return p.coeff(sym("e"), 0); }),
            PMat::scalar(3, -nu));
}

TEST(Reduction, DkpPrintedHamiltonianDiffers) {
  NCAlgebra alg(NCConfig::second_order_in_e());
  Poly nu = var("nu");
  auto r = reduce_dkp(alg, nu, Poly(0), Poly(0));
  NCElement printed = dkp_hamiltonian_printed(alg, nu, Poly(0), Poly(0));
  EXPECT_FALSE(r.hamiltonian == printed);
  auto f = fit_terms(alg, printed, dkp_basis(alg));
  EXPECT_TRUE(f.exact());
  EXPECT_EQ(f.get("1"), r.rest);
  EXPECT_EQ(f.get("H^2"), r.quadratic);
}

TEST(SpinOrbit, LevyLeblond) {
  NCConfig cfg = NCConfig::first_order_in_e();
  cfg.window[sym("lambda3")] = {0, 2};
  Poly c = Poly(make_q(1, 8)) * e_sym() * var("lambda3").pow(2) * m_sym().pow(-2);
  {
    NCAlgebra alg(cfg);
    auto r = spin_orbit_ll(alg, 1);
    EXPECT_FALSE(r.first_order_cancels);
    auto s = spin_orbit_ll(alg, -1);
    ASSERT_TRUE(s.first_order_cancels);
    ASSERT_TRUE(s.fit.exact());
    EXPECT_EQ(s.fit.get("s.(pi x E - E x pi)"), c);
    EXPECT_EQ(s.fit.get("div E"), -c);
  }
  cfg.commutator_sign = -1;
  NCAlgebra alg(cfg);
  auto r = spin_orbit_ll(alg, 1);
  ASSERT_TRUE(r.first_order_cancels);
  ASSERT_TRUE(r.fit.exact());
  EXPECT_EQ(r.fit.get("s.(pi x E - E x pi)"), -c);
  EXPECT_EQ(r.fit.get("div E"), c);
}

TEST(SpinOrbit, DuffinKemmer) {
  NCConfig cfg = NCConfig::first_order_in_e();
  cfg.window[sym("nu")] = {-2, 2};
  NCAlgebra alg(cfg);
  Poly nu = var("nu");
  NCElement H = dkp_hamiltonian_printed(alg, nu, Poly(make_q(1, 2)), Poly(-1));
  EXPECT_FALSE(spin_orbit_dkp(alg, H, nu, 1).first_order_cancels);
  auto r = spin_orbit_dkp(alg, H, nu, -1);
  ASSERT_TRUE(r.first_order_cancels);
  ASSERT_TRUE(r.fit.exact());
  Poly c = e_sym() * nu.pow(-2) * m_sym().pow(-2);
  EXPECT_EQ(r.fit.get("s.(pi x E - E x pi)"), c);
  EXPECT_EQ(r.fit.get("div E"), Poly(make_q(-4, 3)) * c);
  EXPECT_EQ(r.fit.get("Q.dE"), -c);
}

TEST(SpinOrbit, NoElectricCoupling) {
  NCAlgebra alg(NCConfig::second_order_in_e());
  Poly nu = var("nu");
  auto f = fit_terms(alg, dkp_hamiltonian_printed(alg, nu, Poly(make_q(-1, 2)), Poly(1)), dkp_basis(alg));
  EXPECT_TRUE(f.get("s.E").is_zero());
  EXPECT_EQ(f.get("s.H"), -(e_sym() * m_sym().pow(-1)));
}

TEST(BCH, OrderZeroAndCentral) {
  NCAlgebra alg;
  NCElement h = nc_pi(2, 1);
  EXPECT_EQ(bch_expand(alg, h, nc_pi(2, 2), 0), h);
  EXPECT_EQ(bch_expand(alg, h, nc_scalar(2, var("nu")), 2), h);
  EXPECT_THROW(bch_expand(alg, h, h, 3), std::invalid_argument);
}

TEST(ProcaField, SpinOneBranch) {
  NCAlgebra alg(NCConfig::second_order_in_e());
  Poly mu = var("mu");
  auto r = proca_gauge_reduce(alg, mu, Rational(0), Poly(1));
  ASSERT_TRUE(r.fit.exact());
  EXPECT_EQ(r.g, Poly(1) + Poly(2) * mu);
  Poly e = e_sym(), m = m_sym();
  EXPECT_EQ(r.quadratic, Poly(make_q(1, 2)) * (Poly(1) - mu) * (Poly(1) - mu) * e * e * m.pow(-3));
  auto one = proca_gauge_reduce(alg, Poly(1), Rational(0), var("lambda"));
  EXPECT_TRUE(one.quadratic.is_zero());
  EXPECT_THROW(proca_gauge_reduce(alg, mu, Rational(0), Poly(0)), std::invalid_argument);
  EXPECT_THROW(proca_gauge_reduce(alg, mu, Rational(1), Poly(1)), std::invalid_argument);
}

TEST(ProcaField, CompositeBranches) {
  NCAlgebra alg(NCConfig::first_order_in_e());
  Poly mu = var("mu"), e = e_sym(), m = m_sym();
  for (int nu : {-1, 1}) {
    auto r = proca_gauge_reduce(alg, mu, Rational(nu), Poly(0));
    ASSERT_TRUE(r.fit.exact()) << nu;
    EXPECT_EQ(r.g, Poly(1) + Poly(2) * mu);
    EXPECT_EQ(r.fit.get("1"), Poly(make_q(nu, 2)) * m);
    // (3 - g) e/4m
    EXPECT_EQ(r.boost_coupling, -(Poly(make_q(1, 4)) * (Poly(2) - Poly(2) * mu) * e * m.pow(-1)));
    ASSERT_TRUE(r.hermitian);
    EXPECT_TRUE(*r.hermitian);
  }
  auto r = proca_gauge_reduce(alg, mu, Rational(2), Poly(0));
  EXPECT_FALSE(r.hermitian);
}

TEST(ProcaField, AlgebraClosure) {
  auto p = proca_matrices();
  EXPECT_TRUE(rotation_boost_closure(p.S, p.K, 1).ok());
  EXPECT_TRUE(rotation_boost_closure(p.S, p.Khat, -1).ok());
  EXPECT_FALSE(rotation_boost_closure(p.S, p.K, -1).ok());
  EXPECT_FALSE(rotation_boost_closure(p.S, p.Khat, 1).ok());
}

TEST(Fit, ResidualIsExact) {
  NCAlgebra alg;
  NCElement x = nc_pi(2, 0) + sc(2, var("H1") * var("nu"));
  auto f = fit_terms(alg, x, {{"pi0", nc_pi(2, 0)}});
  EXPECT_EQ(f.get("pi0"), Poly(1));
  EXPECT_FALSE(f.exact());
  EXPECT_EQ(f.residual, sc(2, var("H1") * var("nu")));
}

TEST(Json, TermList) {
  NCAlgebra alg;
  NCElement x = nc_pi(1, 1) + sc(1, Poly(3) * var("E2") + var("nu"));
  auto j = nc_json(x);
  EXPECT_EQ(j["terms"].size(), 3u);
  EXPECT_EQ(j["terms"][2]["pi"], "pi1");
}
