// Frozen expected values for the single-formula exponent calculators.  Each
// constant below was derived by hand and cross-checked with an independent
// exact-fraction evaluation before being pinned here.

#include "sumlab/exponents.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sumlab;

namespace {
ExtRational q(long long n, long long d = 1) { return ExtRational(n, d); }
}  // namespace

// --- gamma_block ------------------------------------------------------------

TEST(GammaBlock, VanishingCorrectionGivesR) {
  // p = 1 dualizes to infinite weight exponents, so gamma_k = r_k.
  auto sc = PartitionScenario::singletons(3, q(2), {q(1), q(1), q(1)}, {q(1), q(1), q(1)});
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(gamma_block(sc, k, {}, true).value(), q(1));
}

TEST(GammaBlock, EqualQuotientCollapse) {
  // Common theta makes every quotient 1: 1/gamma = 1 - 1/6 = 5/6.
  auto sc = PartitionScenario::singletons(2, q(2), {q(1), q(1)}, {q(6, 5), q(6, 5)});
  EXPECT_EQ(gamma_block_inverse(sc, 1, {}, true), q(5, 6));
  EXPECT_EQ(gamma_block(sc, 1, {}, true).value(), q(6, 5));
}

TEST(GammaBlock, OmittingBlocksDropsCorrections) {
  auto sc = PartitionScenario::singletons(2, q(2), {q(3, 2), q(3, 2)}, {q(6, 5), q(6, 5)});
  EXPECT_EQ(gamma_block(sc, 1, {}, true).value(), q(2));
  // J = {2} leaves no correction terms at all: gamma = r_1.
  EXPECT_EQ(gamma_block(sc, 1, {2}, true).value(), q(3, 2));
}

TEST(GammaBlock, RAtOrAboveQIsRejected) {
  auto sc = PartitionScenario::singletons(2, q(2), {q(2), q(1)}, {q(1), q(1)});
  EXPECT_THROW(gamma_block(sc, 1, {}, true), std::domain_error);
  EXPECT_THROW(gamma_block(sc, 2, {}, true), std::domain_error);  // r_1 = q still involved
}

TEST(GammaBlock, BadIndicesAreRejected) {
  auto sc = PartitionScenario::singletons(2, q(2), {q(1), q(1)}, {q(1), q(1)});
  EXPECT_THROW(gamma_block(sc, 0, {}, true), std::invalid_argument);
  EXPECT_THROW(gamma_block(sc, 3, {}, true), std::invalid_argument);
  EXPECT_THROW(gamma_block(sc, 1, {1}, true), std::invalid_argument);
  EXPECT_THROW(gamma_block(sc, 1, {5}, true), std::invalid_argument);
}

TEST(GammaBlock, DualizeOffUsesPlainWeights) {
  // Same scenario, weights p = 2 not conjugated: for q = 2, r = (1,1),
  // 1/gamma = 1 - (1/2)*1 = 1/2 (numerator equals denominator by symmetry).
  auto sc = PartitionScenario::singletons(2, q(2), {q(1), q(1)}, {q(2), q(2)});
  EXPECT_EQ(gamma_block_inverse(sc, 1, {}, false), q(1, 2));
  // Dualized, the weights conjugate to 2 as well (2* = 2) - same value here.
  EXPECT_EQ(gamma_block_inverse(sc, 1, {}, true), q(1, 2));
}

// --- popa_exponents ----------------------------------------------------------

TEST(PopaExponents, KnownValues) {
  auto e = popa_exponents(q(2), {q(1), q(1)});
  EXPECT_EQ(e.R, q(2));
  EXPECT_EQ(e.Q, q(4, 3));
  auto e3 = popa_exponents(q(2), {q(1), q(1), q(1)});
  EXPECT_EQ(e3.R, q(3));
  EXPECT_EQ(e3.Q, q(3, 2));
  auto em = popa_exponents(q(3), {q(1), q(2)});
  EXPECT_EQ(em.R, q(5, 2));
  EXPECT_EQ(em.Q, q(15, 7));
}

TEST(PopaExponents, DomainChecks) {
  EXPECT_THROW(popa_exponents(q(2), {q(2), q(1)}), std::domain_error);
  EXPECT_THROW(popa_exponents(q(2), {q(5, 2)}), std::domain_error);
  EXPECT_THROW(popa_exponents(q(2), {q(0)}), std::domain_error);
  EXPECT_THROW(popa_exponents(q(0), {q(1)}), std::invalid_argument);
  // q need not be a true cotype value; anything > r_j works.
  EXPECT_EQ(popa_exponents(q(1), {q(1, 2), q(1, 2)}).R, q(2));
}

// --- hl_gamma ----------------------------------------------------------------

TEST(HlGamma, InfiniteWeightsGiveAlpha) {
  auto inf = ExtRational::infinity();
  auto res = hl_gamma(2, 3, inf, inf, q(2), q(3, 2), q(1));
  EXPECT_EQ(res.gamma.value(), q(3, 2));
}

TEST(HlGamma, SymmetricCase) {
  auto res = hl_gamma(1, 1, q(2), q(2), q(2), q(1), q(1));
  ASSERT_TRUE(res.gamma.has_value());
  EXPECT_EQ(*res.gamma, q(2));
  EXPECT_EQ(res.inv_gamma, q(1, 2));
}

TEST(HlGamma, SideConditionsGateTheResult) {
  // m1*alpha > p1 must return no gamma but keep the formula value on record.
  auto res = hl_gamma(3, 1, q(2), q(2), q(2), q(1), q(1));
  EXPECT_FALSE(res.gamma.has_value());
  bool saw_fail = false;
  for (const auto& c : res.conditions)
    if (c.name == "m1*alpha <= p1") saw_fail = !c.pass;
  EXPECT_TRUE(saw_fail);
}

TEST(HlGamma, DomainChecks) {
  EXPECT_THROW(hl_gamma(1, 1, q(2), q(2), q(2), q(3), q(1)), std::domain_error);  // alpha > q
  EXPECT_THROW(hl_gamma(1, 1, q(2), q(2), q(2), q(0), q(1)), std::domain_error);
  EXPECT_THROW(hl_gamma(0, 1, q(2), q(2), q(2), q(1), q(1)), std::invalid_argument);
}

// --- displike ----------------------------------------------------------------

TEST(Displike, KnownValue) {
  // 1/s = 1/2 - 1/4 = 1/4 over C-bar = {2} with q_2 = 4/3 (conjugate 4).
  auto res = displike_exponent(q(2), {q(2), q(4, 3)}, {2});
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(*res.s, q(4));
}

TEST(Displike, EmptyCbarGivesR) {
  auto res = displike_exponent(q(3, 2), {q(2), q(2)}, {});
  EXPECT_EQ(*res.s, q(3, 2));
}

TEST(Displike, NonpositiveInverseIsNone) {
  // q_j = 2 conjugates to 2: 1/s = 1/2 - 1/2 - 1/2 < 0.
  auto res = displike_exponent(q(2), {q(2), q(2)}, {1, 2});
  EXPECT_FALSE(res.ok());
}

TEST(Displike, FlagsReportedNotEnforced) {
  auto res = displike_exponent(q(2), {q(2), q(4, 3)}, {2}, q(3));
  ASSERT_TRUE(res.ok());  // s = 4 still returned
  EXPECT_EQ(res.witness.at("flag_r_ge_cotype"), "false");
  EXPECT_EQ(res.witness.at("flag_s_ge_qk"), "true");
}

// --- sidon / rider products --------------------------------------------------

TEST(SidonProduct, KnownValues) {
  EXPECT_EQ(sidon_product_exponent({q(1), q(1)}), q(4, 3));
  EXPECT_EQ(sidon_product_exponent({q(1), q(1), q(1)}), q(3, 2));
  EXPECT_EQ(sidon_product_exponent({q(1), q(1), q(1), q(1), q(1)}), q(5, 3));
  EXPECT_EQ(sidon_product_exponent({q(4, 3), q(4, 3)}), q(8, 5));
  EXPECT_EQ(rider_product_exponent({q(1), q(1)}), q(4, 3));
}

TEST(SidonProduct, ClassicFamilyFormula) {
  // m ones: R = m, exponent 2m/(m+1).
  for (int m = 1; m <= 8; ++m) {
    std::vector<ExtRational> ones(static_cast<std::size_t>(m), q(1));
    EXPECT_EQ(sidon_product_exponent(ones), q(2 * m, m + 1)) << m;
  }
}

TEST(SidonProduct, RejectsEndpointTwo) {
  EXPECT_THROW(sidon_product_exponent({q(2)}), std::domain_error);
  EXPECT_THROW(sidon_product_exponent({q(1), q(5, 2)}), std::domain_error);
  EXPECT_THROW(sidon_product_exponent({q(1, 2)}), std::domain_error);
}

// --- opti1 ---------------------------------------------------------------

TEST(Opti1, InteriorCase) {
  auto res = opti1_optimal_s(2, q(1), q(1));
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(*res.s, q(4, 3));
  EXPECT_EQ(res.witness.at("case"), "CASE1");
}

TEST(Opti1, BoundaryCase) {
  auto res = opti1_optimal_s(2, q(2), q(4, 3));
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(*res.s, q(4));
  EXPECT_EQ(res.witness.at("case"), "CASE2");
}

TEST(Opti1, NoneWhenDifferenceVanishes) {
  auto res = opti1_optimal_s(2, q(4), q(4, 3));
  EXPECT_FALSE(res.ok());
}

TEST(Opti1, DomainChecks) {
  EXPECT_THROW(opti1_optimal_s(2, q(1), q(5, 2)), std::domain_error);   // p > 2
  EXPECT_THROW(opti1_optimal_s(2, q(1), q(3, 2)), std::domain_error);   // r < p
  EXPECT_THROW(opti1_optimal_s(2, q(8), q(3, 2)), std::domain_error);   // 1/r < 1/p - 1/2
}

TEST(Opti1, AgreesWithProofSideRho) {
  // 1/r = 1/u + 1/p - 1 ties the two parametrizations together; the optimal
  // s must equal rho(u,p,m) whenever both are defined.
  auto check = [](int m, ExtRational u, ExtRational p) {
    ExtRational inv_r = reciprocal(u) + reciprocal(p) - ExtRational(1);
    ASSERT_GT(inv_r.sign(), 0);
    ExtRational r = reciprocal(inv_r);
    auto direct = opti1_optimal_s(m, r, p);
    auto rho = opti1_rho(m, u, p);
    ASSERT_EQ(direct.ok(), rho.has_value()) << "m=" << m << " u=" << u << " p=" << p;
    if (direct.ok()) EXPECT_EQ(*direct.s, *rho) << "m=" << m << " u=" << u << " p=" << p;
  };
  check(2, q(1), q(5, 4));      // interior: s = 20/11
  check(2, q(1), q(1));         // interior, infinite p*
  check(3, q(21, 20), q(7, 6)); // interior with m = 3
  check(2, q(3, 2), q(4, 3));   // boundary branch
  // u = p = 2 makes 1/r = 0 (no finite host): rho must also be undefined.
  EXPECT_FALSE(opti1_rho(2, q(2), q(2)).has_value());
}

TEST(Opti1, RandomizedRhoAgreement) {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int m = 1 + static_cast<int>(rng() % 4);
    // u in [1,2], p in [1,2] with small denominators
    ExtRational u(static_cast<long long>(rng() % 13) + 12, 12);
    if (u > q(2)) continue;
    ExtRational p(static_cast<long long>(rng() % 13) + 12, 12);
    if (p > q(2)) continue;
    ExtRational inv_r = reciprocal(u) + reciprocal(p) - ExtRational(1);
    if (inv_r.sign() <= 0) continue;
    ExtRational r = reciprocal(inv_r);
    if (r < p) continue;
    auto direct = opti1_optimal_s(m, r, p);
    auto rho = opti1_rho(m, u, p);
    ASSERT_EQ(direct.ok(), rho.has_value());
    if (direct.ok()) {
      EXPECT_EQ(*direct.s, *rho);
      ++checked;
    }
  }
  EXPECT_GE(checked, 50);  // the sampler must actually exercise the identity
}

// --- opti2 ---------------------------------------------------------------

TEST(Opti2, KnownTriples) {
  EXPECT_TRUE(opti2_predicate(q(2), q(4, 3), q(2), q(4, 3)).holds);
  EXPECT_FALSE(opti2_predicate(q(2), q(4, 3), q(2), q(2)).holds);
  EXPECT_FALSE(opti2_predicate(q(2), q(4, 3), q(4), q(2)).holds);
}

TEST(Opti2, ExactSides) {
  auto res = opti2_predicate(q(2), q(4, 3), q(2), q(2));
  EXPECT_EQ(res.lhs, q(-1, 2));
  EXPECT_EQ(res.rhs, q(-1));
}

TEST(Opti2, DomainChecks) {
  EXPECT_THROW(opti2_predicate(q(3, 2), q(6, 5), q(2), q(2)), std::domain_error);  // r < 2
  EXPECT_THROW(opti2_predicate(q(2), q(3, 2), q(2), q(2)), std::domain_error);     // p mismatch
  EXPECT_THROW(opti2_predicate(q(2), q(4, 3), q(3, 2), q(2)), std::domain_error);  // s < 2
  EXPECT_THROW(opti2_predicate(q(2), q(4, 3), q(2), q(6, 5)), std::domain_error);  // q < p
}

// --- inclusion -----------------------------------------------------------

TEST(Inclusion, KnownValue) {
  auto res = inclusion_exponent(q(4, 3), {q(1), q(1)}, {q(24, 23), q(24, 23)});
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(*res.s, q(3, 2));
}

TEST(Inclusion, IdenticalExponentsGiveSameS) {
  auto res = inclusion_exponent(q(4, 3), {q(1), q(1)}, {q(1), q(1)});
  EXPECT_EQ(*res.s, q(4, 3));
}

TEST(Inclusion, NonpositiveInverseIsNone) {
  auto res = inclusion_exponent(q(4, 3), {q(1), q(1)}, {q(8), q(8)});
  EXPECT_FALSE(res.ok());
  EXPECT_EQ(res.failing_condition(), "1/r - sum(1/p) + sum(1/q) > 0");
}

TEST(Inclusion, TargetBelowSourceIsConditionFailure) {
  auto res = inclusion_exponent(q(4, 3), {q(3, 2), q(3, 2)}, {q(4, 3), q(4, 3)});
  EXPECT_FALSE(res.ok());
  EXPECT_EQ(res.failing_condition(), "q[1] >= p[1]");
}

TEST(Inclusion, SizeMismatchThrows) {
  EXPECT_THROW(inclusion_exponent(q(4, 3), {q(1)}, {q(1), q(1)}), std::invalid_argument);
}

// --- compare_perez_garcia --------------------------------------------------

TEST(ComparePG, KnownValues) {
  auto a = compare_perez_garcia(2, q(3, 2));
  EXPECT_EQ(a.t_inclusion, q(24, 23));
  EXPECT_TRUE(a.inclusion_better);
  auto b = compare_perez_garcia(2, q(2));  // right endpoint, limit value 8/7
  EXPECT_EQ(b.t_inclusion, q(8, 7));
  EXPECT_TRUE(b.inclusion_better);
  auto c = compare_perez_garcia(3, q(7, 4));
  EXPECT_EQ(c.t_inclusion, q(63, 61));
  EXPECT_TRUE(c.inclusion_better);
}

TEST(ComparePG, DomainChecks) {
  EXPECT_THROW(compare_perez_garcia(2, q(4, 3)), std::domain_error);  // s = 2m/(m+1)
  EXPECT_THROW(compare_perez_garcia(2, q(5, 2)), std::domain_error);  // s > 2
  EXPECT_THROW(compare_perez_garcia(1, q(3, 2)), std::invalid_argument);
}

TEST(ComparePG, StrictImprovementAcrossSampledRange) {
  // 50 rational points strictly inside (2m/(m+1), 2] for each m.
  for (int m = 2; m <= 6; ++m) {
    ExtRational lo(2 * m, m + 1);
    for (int i = 1; i <= 50; ++i) {
      ExtRational s = lo + (q(2) - lo) * q(i, 50);
      auto res = compare_perez_garcia(m, s);
      EXPECT_TRUE(res.inclusion_better) << "m=" << m << " s=" << s;
      EXPECT_GT(res.t_inclusion, q(1)) << "m=" << m << " s=" << s;
    }
  }
}

// --- hardy_littlewood / praciano -------------------------------------------

TEST(HardyLittlewood, KnownValues) {
  auto a = hardy_littlewood_exponent({q(1), q(1)});
  EXPECT_EQ(*a.s, q(4, 3));
  auto b = hardy_littlewood_exponent({q(4, 3), q(4, 3)});
  EXPECT_EQ(*b.s, q(2));  // gamma = 2 exactly lands in the gamma >= 2 branch
  EXPECT_EQ(b.witness.at("case"), "gamma >= 2");
  auto c = hardy_littlewood_exponent({q(3), q(3)});
  EXPECT_FALSE(c.ok());
}

TEST(PracianoRho, KnownValues) {
  EXPECT_EQ(praciano_rho({q(4), q(4)}).value(), q(2));
  auto inf = ExtRational::infinity();
  EXPECT_EQ(praciano_rho({inf, inf, inf}).value(), q(1));
  EXPECT_FALSE(praciano_rho({q(2), q(2)}).has_value());
  EXPECT_FALSE(praciano_rho({q(1)}).has_value());
  EXPECT_EQ(praciano_rho({q(3, 2)}).value(), q(3));
  EXPECT_EQ(praciano_rho({q(6), q(6), q(6)}).value(), q(2));
}
