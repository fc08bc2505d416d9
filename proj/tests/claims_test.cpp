#include "subdebt/claims.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace subdebt {
namespace {

CapitalStructure base_case(double v, double sigma) { return {v, 60.0, 10.0, sigma, 1.0, 0.01, 0.0}; }

TEST(Payoffs, Waterfall) {
  auto p = payoffs_at_maturity(100, 60, 10);
  EXPECT_EQ(60, p.senior_payoff);
  EXPECT_EQ(10, p.junior_payoff);
  EXPECT_EQ(30, p.equity_payoff);

  p = payoffs_at_maturity(65, 60, 10);
  EXPECT_EQ(60, p.senior_payoff);
  EXPECT_EQ(5, p.junior_payoff);
  EXPECT_EQ(0, p.equity_payoff);

  p = payoffs_at_maturity(40, 60, 10);
  EXPECT_EQ(40, p.senior_payoff);
  EXPECT_EQ(0, p.junior_payoff);
  EXPECT_EQ(0, p.equity_payoff);

  EXPECT_THROW(payoffs_at_maturity(-1, 60, 10), InvalidInputError);
}

TEST(Payoffs, ClampMatchesOtherJuniorForms) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100000; ++i) {
    const double fs = 1 + 100 * u(rng);
    const double fj = 1 + 50 * u(rng);
    const double vt = 250 * u(rng);
    const MaturityPayoffs p = payoffs_at_maturity(vt, fs, fj);
    const double max_of_min = std::max(std::min(vt - fs, fj), 0.0);
    const double spread = std::max(vt - fs, 0.0) - std::max(vt - (fs + fj), 0.0);
    ASSERT_EQ(max_of_min, p.junior_payoff);
    ASSERT_NEAR(spread, p.junior_payoff, 4 * std::numeric_limits<double>::epsilon() * std::max(vt, fs + fj));
    const double sum = p.senior_payoff + p.junior_payoff + p.equity_payoff;
    ASSERT_NEAR(vt, sum, 2 * std::numeric_limits<double>::epsilon() * std::max(vt, fs + fj));
  }
}

TEST(Claims, ZeroVolatilityLimits) {
  const double df = std::exp(-0.01);
  EXPECT_NEAR(60 * df, senior_debt_value(base_case(100, 0)), 1e-12);
  EXPECT_NEAR(40, senior_debt_value(base_case(40, 0)), 1e-12);
  EXPECT_NEAR(10 * df, junior_debt_value(base_case(100, 0)), 1e-12);
  EXPECT_NEAR(65 - 60 * df, junior_debt_value(base_case(65, 0)), 1e-12);
  EXPECT_NEAR(100 - 70 * df, equity_value(base_case(100, 0)), 1e-12);
  EXPECT_EQ(0.0, equity_value(base_case(62, 0)));

  const ClaimValues all = value_all_claims(base_case(100, 0));
  EXPECT_NEAR(60 * df, all.senior_value, 1e-12);
  EXPECT_NEAR(10 * df, all.junior_value, 1e-12);
  EXPECT_NEAR(100 - 70 * df, all.equity_value, 1e-12);
  EXPECT_NEAR(100, all.total, 1e-12);
}

TEST(Claims, DeterministicResidualAtSixtyFive) {
  // V e^{r tau} lands between F_S and F_S + F_J; the junior claim is the discounted residual.
  const double expected = 65 - 60 * std::exp(-0.01);
  EXPECT_NEAR(expected, junior_debt_value(base_case(65, 0)), 1e-12);
}

TEST(Claims, QuadratureReference) {
  // Lognormal payoff integrals at 40 digits for V=62, F_S=60, F_J=10, tau=1, r=1%.
  struct Ref {
    double sigma, senior, junior, equity;
  };
  for (const Ref& ref : {Ref{0.10, 58.062803101106433, 3.4997254331163918, 0.43747146577717517},
                         Ref{0.262, 54.291207952295574, 3.9133116602332793, 3.7954803874711468},
                         Ref{0.50, 48.675311057968288, 3.7028365479740982, 9.6218523940576133}}) {
    const ClaimValues v = value_all_claims(base_case(62, ref.sigma));
    EXPECT_NEAR(ref.senior, v.senior_value, 1e-11) << ref.sigma;
    EXPECT_NEAR(ref.junior, v.junior_value, 1e-11) << ref.sigma;
    EXPECT_NEAR(ref.equity, v.equity_value, 1e-11) << ref.sigma;
  }
}

TEST(Claims, Validation) {
  EXPECT_THROW(junior_debt_value({62, 60, 0, 0.2, 1, 0.01}), InvalidInputError);
  EXPECT_THROW(junior_debt_value({62, 0, 10, 0.2, 1, 0.01}), InvalidInputError);
  EXPECT_THROW(senior_debt_value({0, 60, 10, 0.2, 1, 0.01}), InvalidInputError);
  EXPECT_THROW(equity_value({62, 60, 10, 0.2, 0, 0.01}), InvalidInputError);
}

TEST(Properties, SumIdentityAndBounds) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20000; ++i) {
    const double q = i % 2 == 0 ? 0.0 : 0.05 * u(rng);
    const CapitalStructure cs{10 + 190 * u(rng), 1 + 120 * u(rng), 1 + 60 * u(rng), 1.2 * u(rng),
                              0.05 + 9.95 * u(rng), -0.01 + 0.08 * u(rng), q};
    const ClaimValues v = value_all_claims(cs);
    const double target = cs.asset_value * std::exp(-q * cs.maturity);
    ASSERT_NEAR(target, v.total, 1e-10 * cs.asset_value);
    const double df = std::exp(-cs.rate * cs.maturity);
    ASSERT_GE(v.senior_value, -1e-12);
    ASSERT_LE(v.senior_value, cs.senior_face * df + 1e-12);
    ASSERT_GE(v.junior_value, -1e-12);
    ASSERT_LE(v.junior_value, cs.junior_face * df + 1e-12);
    ASSERT_GE(v.equity_value, 0.0);
    ASSERT_LE(v.equity_value, cs.asset_value);
  }
}

TEST(Properties, Monotonicity) {
  for (double sigma : {0.05, 0.2, 0.6}) {
    double prev_j = -1;
    double prev_s = -1;
    for (double v = 20; v <= 150; v += 0.5) {
      const CapitalStructure cs = base_case(v, sigma);
      ASSERT_GE(junior_debt_value(cs), prev_j - 1e-12);
      ASSERT_GE(senior_debt_value(cs), prev_s - 1e-12);
      prev_j = junior_debt_value(cs);
      prev_s = senior_debt_value(cs);
    }
    double prev = -1;
    for (double fj = 1; fj <= 200; fj += 1) {
      const double j = junior_debt_value({62, 60, fj, sigma, 1, 0.01});
      ASSERT_GE(j, prev - 1e-12);
      prev = j;
    }
  }
  for (double v : {40.0, 62.0, 100.0}) {
    double prev_s = HUGE_VAL;
    double prev_e = -1;
    for (double sigma = 0.0; sigma <= 2.0; sigma += 0.01) {
      const CapitalStructure cs = base_case(v, sigma);
      ASSERT_LE(senior_debt_value(cs), prev_s + 1e-12);
      ASSERT_GE(equity_value(cs), prev_e - 1e-12);
      prev_s = senior_debt_value(cs);
      prev_e = equity_value(cs);
    }
  }
}

TEST(Properties, Limits) {
  const CapitalStructure cs = base_case(62, 0.3);
  const double call_at_senior = call_price(cs.option(60));
  CapitalStructure huge_junior = cs;
  huge_junior.junior_face = 1e9;
  EXPECT_NEAR(call_at_senior, junior_debt_value(huge_junior), 1e-9);
  EXPECT_LT(junior_debt_value(cs.with_volatility(50.0)), 1e-6);
}

}  // namespace
}  // namespace subdebt
