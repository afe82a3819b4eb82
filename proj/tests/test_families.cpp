#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sumlab/campaign.hpp"
#include "sumlab/checks.hpp"
#include "sumlab/optimize.hpp"
#include "sumlab/rational.hpp"
#include "sumlab/tensor.hpp"

namespace {

using sumlab::DimsProvider;
using sumlab::ExtRational;
using sumlab::NonnegTensor;
using sumlab::OptimizeOptions;
using sumlab::Tensor;
using sumlab::VectorFamily;
using sumlab::Verdict;

ExtRational q(long long n, long long d = 1) { return ExtRational(n) / ExtRational(d); }

NonnegTensor diag_ones(int n) {
  Tensor t = Tensor::zeros({n, n});
  for (int i = 0; i < n; ++i) t.at({i, i}) = 1.0;
  return NonnegTensor(t);
}

// ---------------------------------------------------------------------------
// Entrywise ell_rho vs operator norm
// ---------------------------------------------------------------------------

TEST(PracianoCheck, DiagonalIsSharp) {
  // With 1/rho = 1 - sum 1/p_j, diagonal ones give lhs = rhs = n^{1/rho}.
  for (int n = 2; n <= 8; ++n) {
    auto rep = sumlab::praciano_check(diag_ones(n), {q(4), q(4)});
    EXPECT_NEAR(rep.ratio, 1.0, 1e-6) << "n = " << n;
    EXPECT_TRUE(rep.holds);
    EXPECT_FALSE(rep.rhs_certified);
    EXPECT_NEAR(rep.lhs, std::sqrt(static_cast<double>(n)), 1e-12);
  }
}

TEST(PracianoCheck, DiagonalSharpWithUnevenExponents) {
  // p = (3, 6): rho = 2 again, optimum still the uniform pair.
  for (int n : {2, 4, 6}) {
    auto rep = sumlab::praciano_check(diag_ones(n), {q(3), q(6)});
    EXPECT_NEAR(rep.ratio, 1.0, 1e-6) << "n = " << n;
    EXPECT_NEAR(rep.lhs, std::sqrt(static_cast<double>(n)), 1e-12);
  }
}

TEST(PracianoCheck, TrilinearDiagonalIsSharp) {
  const int n = 5;
  Tensor t = Tensor::zeros({n, n, n});
  for (int i = 0; i < n; ++i) t.at({i, i, i}) = 1.0;
  auto rep = sumlab::praciano_check(NonnegTensor(t), {q(6), q(6), q(6)});
  EXPECT_NEAR(rep.ratio, 1.0, 1e-6);
  EXPECT_NEAR(rep.lhs, std::sqrt(5.0), 1e-12);
}

TEST(PracianoCheck, RandomTensorsHold) {
  auto res = sumlab::praciano_campaign(200, DimsProvider::fixed_dims({3, 3}), {q(3), q(6)},
                                       /*master_seed=*/2026u);
  EXPECT_EQ(res.summary.violations, 0);
  EXPECT_EQ(res.summary.trials, 200);
  EXPECT_LE(res.summary.max_ratio, 1.0 + 1e-6);
}

TEST(PracianoCheck, ReportMetadataAndErrors) {
  OptimizeOptions opt;
  opt.seed = 5u;
  opt.multistart = 7;
  auto rep = sumlab::praciano_check(diag_ones(2), {q(4), q(4)}, opt);
  EXPECT_EQ(rep.seed, 5u);
  EXPECT_EQ(rep.multistart, 7);
  EXPECT_EQ(rep.verdict, Verdict::Holds);

  // sum 1/p_j >= 1 leaves the exponent undefined.
  EXPECT_THROW(sumlab::praciano_check(diag_ones(2), {q(2), q(2)}), std::invalid_argument);
  EXPECT_THROW(sumlab::praciano_check(diag_ones(2), {q(4)}), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Two-block weighted-hypothesis bound
// ---------------------------------------------------------------------------

TEST(HlCheck, IdentityMatrixAttainsEquality) {
  auto rep = sumlab::hl_check(diag_ones(2), /*m1=*/1, q(2), q(1), q(1), q(2), q(2));
  EXPECT_NEAR(rep.lhs, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(rep.rhs, std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(rep.ratio, 1.0, 1e-9);
  EXPECT_TRUE(rep.holds);
  EXPECT_FALSE(rep.rhs_certified);
}

TEST(HlCheck, RandomMatricesHold) {
  auto res = sumlab::hl_campaign(100, DimsProvider::fixed_dims({4, 4}), /*m1=*/1, q(2), q(1),
                                 q(1), q(4), q(4), /*master_seed=*/11u);
  EXPECT_EQ(res.summary.violations, 0);
  EXPECT_EQ(res.summary.trials, 100);
}

TEST(HlCheck, RejectsFailedSideConditions) {
  // m1 * alpha > p1 breaks a hypothesis of the exponent formula.
  EXPECT_THROW(sumlab::hl_check(diag_ones(2), 1, q(2), q(5), q(1), q(4), q(4)),
               std::domain_error);
  EXPECT_THROW(sumlab::hl_check(diag_ones(2), 0, q(2), q(1), q(1), q(2), q(2)),
               std::invalid_argument);
  EXPECT_THROW(sumlab::hl_check(diag_ones(2), 2, q(2), q(1), q(1), q(2), q(2)),
               std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Summing ratios
// ---------------------------------------------------------------------------

TEST(SummingRatio, DiagonalCanonicalFastPath) {
  // All-canonical scalar-output setups reduce to the entrywise ell_s norm,
  // which must stay exact and cheap even at n = 1024.
  const int n = 1024;
  Tensor t = Tensor::zeros({n, n});
  for (int i = 0; i < n; ++i) t.at({i, i}) = 1.0;
  std::vector<VectorFamily> fams = {VectorFamily::canonical(n, q(2)),
                                    VectorFamily::canonical(n, q(2))};
  auto rep = sumlab::summing_ratio(t, fams, /*s=*/2.0, /*p=*/4.0 / 3.0);
  EXPECT_DOUBLE_EQ(rep.lhs, 32.0);
  EXPECT_NEAR(rep.rhs, std::pow(1024.0, 0.5), 1e-9);  // two factors of n^{1/4}
  EXPECT_NEAR(rep.ratio, 1.0, 1e-9);
}

TEST(SummingRatio, ExplicitBasisMatchesCanonicalPath) {
  Tensor t({2, 2}, {1, 0, 0, 1});
  std::vector<std::vector<double>> rows = {{1.0, 0.0}, {0.0, 1.0}};
  std::vector<VectorFamily> canon = {VectorFamily::canonical(2, q(2)),
                                     VectorFamily::canonical(2, q(2))};
  std::vector<VectorFamily> expl = {VectorFamily::make_explicit(rows, q(2)),
                                    VectorFamily::make_explicit(rows, q(2))};
  auto a = sumlab::summing_ratio(t, canon, 2.0, 2.0);
  auto b = sumlab::summing_ratio(t, expl, 2.0, 2.0);
  EXPECT_NEAR(a.lhs, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(b.lhs, a.lhs, 1e-12);
  EXPECT_NEAR(b.rhs, a.rhs, 1e-9);
}

TEST(SummingRatio, GeneralEvaluationAggregates) {
  // Rank-2 form against sign vectors: T(x, y) = sum_{kl} t_{kl} x_k y_l.
  Tensor t({2, 2}, {1, 2, 3, 4});
  std::vector<std::vector<double>> rows = {{1.0, 1.0}, {1.0, -1.0}};
  std::vector<VectorFamily> fams = {VectorFamily::make_explicit(rows, q(2)),
                                    VectorFamily::make_explicit(rows, q(2))};
  // Evaluations: (10, -2, -4, 0); ell_1 aggregate = 16.
  auto rep = sumlab::summing_ratio(t, fams, /*s=*/1.0, /*p=*/2.0);
  EXPECT_NEAR(rep.lhs, 16.0, 1e-12);
}

TEST(SummingRatio, OutputAxisMeasuredSeparately) {
  // One input axis with the canonical pair, output axis in ell_2:
  // rows (3,4) and (0,12) have norms 5 and 12; ell_1 aggregate = 17.
  Tensor t({2, 2}, {3, 4, 0, 12});
  std::vector<VectorFamily> fams = {VectorFamily::canonical(2, q(1))};
  auto rep = sumlab::summing_ratio(t, fams, /*s=*/1.0, /*p=*/1.0, /*v=*/2.0);
  EXPECT_NEAR(rep.lhs, 17.0, 1e-12);
  EXPECT_NEAR(rep.rhs, 2.0, 1e-12);  // canonical weak norm n^{1/p} at u = 1
  EXPECT_NEAR(rep.ratio, 8.5, 1e-9);
}

TEST(SummingRatio, OutputAxisMaxNorm) {
  Tensor t({2, 2}, {3, 4, 0, 12});
  std::vector<VectorFamily> fams = {VectorFamily::canonical(2, q(1))};
  auto rep = sumlab::summing_ratio(t, fams, 1.0, 1.0,
                                   std::numeric_limits<double>::infinity());
  EXPECT_NEAR(rep.lhs, 16.0, 1e-12);  // max-per-row aggregates 4 + 12
}

TEST(SummingRatio, SingleCellTensor) {
  Tensor t({1}, {3.0});
  std::vector<VectorFamily> fams = {VectorFamily::canonical(1, q(2))};
  auto rep = sumlab::summing_ratio(t, fams, 2.0, 1.0);
  EXPECT_DOUBLE_EQ(rep.lhs, 3.0);
  EXPECT_DOUBLE_EQ(rep.rhs, 1.0);
  EXPECT_DOUBLE_EQ(rep.ratio, 3.0);
}

TEST(SummingRatio, InputValidation) {
  Tensor t({2, 2}, {1, 0, 0, 1});
  std::vector<VectorFamily> one = {VectorFamily::canonical(2, q(2))};
  std::vector<VectorFamily> two = {VectorFamily::canonical(2, q(2)),
                                   VectorFamily::canonical(2, q(2))};
  std::vector<VectorFamily> wrong_size = {VectorFamily::canonical(3, q(2)),
                                          VectorFamily::canonical(2, q(2))};
  EXPECT_THROW(sumlab::summing_ratio(t, one, 2.0, 2.0), std::invalid_argument);  // needs v
  EXPECT_NO_THROW(sumlab::summing_ratio(t, one, 2.0, 2.0, 2.0));
  EXPECT_THROW(sumlab::summing_ratio(t, wrong_size, 2.0, 2.0), std::invalid_argument);
  EXPECT_THROW(sumlab::summing_ratio(t, two, 0.5, 2.0), std::invalid_argument);
  EXPECT_THROW(sumlab::summing_ratio(t, two, 2.0, 0.5), std::invalid_argument);
  EXPECT_THROW(sumlab::summing_ratio(t, {}, 2.0, 2.0), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Growth fitting and the diagonal witness experiment
// ---------------------------------------------------------------------------

TEST(GrowthFit, RecoversExactPowerLaw) {
  std::vector<double> xs = {2, 4, 8, 16};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(5.0 * std::pow(x, 1.5));
  auto fit = sumlab::growth_fit(xs, ys);
  EXPECT_NEAR(fit.slope, 1.5, 1e-12);
  EXPECT_NEAR(fit.intercept, std::log(5.0), 1e-12);
}

TEST(GrowthFit, InputValidation) {
  EXPECT_THROW(sumlab::growth_fit({1, 2}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(sumlab::growth_fit({1, 2, 3}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(sumlab::growth_fit({1, 2, 3}, {1, -2, 3}), std::invalid_argument);
  EXPECT_THROW(sumlab::growth_fit({2, 2, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST(WitnessExperiment, BalancedCaseSeparatesSlopes) {
  // (s, q) = (2, 2): evaluations grow like n^{1/2} while the weak-norm
  // product stays bounded.
  std::vector<int> grid = {16, 32, 64, 128, 256};
  auto series = sumlab::opti2_witness_experiment(grid, 2.0, 2.0);
  EXPECT_NEAR(series.lhs_fit.slope, 0.5, 1e-9);
  EXPECT_NEAR(series.rhs_fit.slope, 0.0, 1e-9);
}

TEST(WitnessExperiment, SmallQMakesBothSidesGrow) {
  std::vector<int> grid = {16, 32, 64, 128, 256};
  auto series = sumlab::opti2_witness_experiment(grid, 2.0, 4.0 / 3.0);
  EXPECT_NEAR(series.lhs_fit.slope, 0.5, 1e-9);
  EXPECT_NEAR(series.rhs_fit.slope, 0.5, 1e-9);  // 2 * (3/4 - 1/2)
}

TEST(WitnessExperiment, CubicAggregateSlope) {
  std::vector<int> grid = {8, 16, 32, 64};
  auto series = sumlab::opti2_witness_experiment(grid, 3.0, 1.0);
  EXPECT_NEAR(series.lhs_fit.slope, 1.0 / 3.0, 1e-9);
  EXPECT_NEAR(series.rhs_fit.slope, 1.0, 1e-9);  // 2 * (1 - 1/2)
}

TEST(WitnessExperiment, NeedsEnoughPoints) {
  EXPECT_THROW(sumlab::opti2_witness_experiment({16, 32}, 2.0, 2.0), std::invalid_argument);
}

}  // namespace
