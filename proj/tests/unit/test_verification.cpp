#include <gtest/gtest.h>

#include <cmath>

#include <gendir/error.hpp>
#include <gendir/verification.hpp>

#include "support/oracles.hpp"

using namespace gendir;

namespace {

RandomPolyConfig parseval_ensemble() {
  RandomPolyConfig cfg;
  cfg.norm.method = NormMethod::parseval;
  cfg.seed = 21;
  return cfg;
}

}  // namespace

TEST(RandomPolynomial, DeterministicAndShaped) {
  RandomPolyConfig cfg;
  cfg.space = CoefficientSpace(3, 2.0);
  const auto a = random_polynomial(cfg, 5, 2);
  const auto b = random_polynomial(cfg, 5, 2);
  EXPECT_EQ(a.coefficients(), b.coefficients());
  EXPECT_EQ(a.coefficients().size(), 15u);
  EXPECT_NE(random_polynomial(cfg, 5, 3).coefficients(), a.coefficients());
  cfg.ensemble = Ensemble::unimodular;
  const auto u = random_polynomial(cfg, 8, 0);
  for (const auto& c : u.coefficients()) EXPECT_NEAR(std::abs(c), 1.0, 1e-15);
  cfg.ensemble = Ensemble::ones;
  const auto o = random_polynomial(cfg, 8, 0);
  for (const auto& c : o.coefficients()) EXPECT_EQ(c, Complex(1.0));
  EXPECT_EQ(parse_ensemble("unimodular"), Ensemble::unimodular);
  EXPECT_THROW(parse_ensemble("cauchy"), ParameterError);
}

TEST(QuantileTable, Interpolates) {
  const auto q = quantile_table({4.0, 1.0, 3.0, 2.0, 5.0});
  ASSERT_EQ(q.size(), 7u);
  EXPECT_EQ(q.front(), std::make_pair(0.0, 1.0));
  EXPECT_EQ(q[3], std::make_pair(0.5, 3.0));
  EXPECT_EQ(q.back(), std::make_pair(1.0, 5.0));
  EXPECT_NEAR(q[1].second, 1.2, 1e-14);
}

TEST(CoefficientSum, SingleTermRatio) {
  auto cfg = parseval_ensemble();
  cfg.frequency = make_linear_frequency();
  cfg.lengths = {1};
  cfg.samples = 20;
  const auto r = verify_coefficient_sum(cfg, 0.7, 2.0);
  EXPECT_NEAR(r.max_ratio, std::exp(-0.7), 1e-14);
  EXPECT_NEAR(r.min_ratio, std::exp(-0.7), 1e-14);
  EXPECT_TRUE(r.pass);
}

TEST(CoefficientSum, BoundedAboveTheStrip) {
  auto cfg = parseval_ensemble();
  cfg.lengths = {4, 8, 16, 32, 64};
  cfg.samples = 200;
  double cs = 0.0;  // Cauchy–Schwarz ceiling (Σ_{n<=64} n^{-1.2})^{1/2}
  for (int n = 1; n <= 64; ++n) cs += std::pow(n, -1.2);
  cfg.ceiling = std::sqrt(cs);
  const auto r = verify_coefficient_sum(cfg, 0.6, 2.0);
  EXPECT_EQ(r.status, "verified");
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_ratio, std::sqrt(cs));
  EXPECT_EQ(r.samples, 1000u);
  EXPECT_EQ(r.per_length.size(), 5u);
}

TEST(CoefficientSum, NegativeControlBelowTheStrip) {
  auto cfg = parseval_ensemble();
  cfg.ensemble = Ensemble::ones;
  cfg.samples = 1;
  cfg.lengths = {4, 16, 64, 256};
  const auto r = verify_coefficient_sum(cfg, 0.0, 2.0);
  EXPECT_EQ(r.status, "exploratory");
  for (const auto& s : r.per_length) EXPECT_NEAR(s.max_ratio, std::sqrt(static_cast<double>(s.length)), 1e-12);
}

TEST(CoefficientSum, TimeAverageAgreesWithParseval) {
  auto cfg = parseval_ensemble();
  cfg.lengths = {6};
  cfg.samples = 5;
  const auto exact = verify_coefficient_sum(cfg, 0.8, 2.0);
  cfg.norm.method = NormMethod::time_average;
  const auto ta = verify_coefficient_sum(cfg, 0.8, 2.0);
  EXPECT_NEAR(ta.max_ratio, exact.max_ratio, 1e-3 * exact.max_ratio);
}

TEST(QuantitativeBohr, FirstPartialSum) {
  RandomPolyConfig cfg;
  cfg.lengths = {1};
  cfg.samples = 30;
  for (double k : {0.25, 1.0}) {
    const auto r = verify_quantitative_bohr(cfg, k);
    // λ_1 = 0: the factor is 1/k and |a_1| <= ‖D‖_∞.
    EXPECT_LE(r.max_ratio, k + 1e-12) << k;
  }
  EXPECT_THROW(verify_quantitative_bohr(cfg, 0.0), ParameterError);
  EXPECT_THROW(verify_quantitative_bohr(cfg, 1.5), ParameterError);
}

TEST(QuantitativeBohr, SmallRunIsStable) {
  RandomPolyConfig cfg;
  cfg.lengths = {4, 8};
  cfg.samples = 20;
  cfg.space = CoefficientSpace(4, 2.0);
  const auto r = verify_quantitative_bohr(cfg, 1.0);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.max_ratio, 0.0);
  EXPECT_LT(r.max_ratio, 1.0);
}

TEST(BTInequality, SingleTerm) {
  RandomPolyConfig cfg;
  cfg.frequency = make_linear_frequency();
  cfg.lengths = {1};
  cfg.samples = 10;
  const auto r = verify_bt_inequality(cfg, 0.5);
  EXPECT_NEAR(r.max_ratio, std::exp(-0.5), 1e-14);
  EXPECT_THROW(verify_bt_inequality(cfg, 0.0), ParameterError);
}

TEST(BTInequality, BoundedForLogN) {
  RandomPolyConfig cfg;
  cfg.lengths = {4, 8};
  cfg.samples = 10;
  const auto r = verify_bt_inequality(cfg, 0.5);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_ratio, 1.0);
}

TEST(KahaneKhintchine, SingleTermIsOne) {
  const auto r = kahane_khintchine_ratio(CoefficientSpace(3, 2.0), 1.0, 1, 1000, 1);
  EXPECT_NEAR(r.min_ratio, 1.0, 1e-12);
  EXPECT_NEAR(r.max_ratio, 1.0, 1e-12);
}

TEST(KahaneKhintchine, GaussianLimit) {
  const double limit = oracle::gaussian_abs_mean();
  EXPECT_NEAR(limit, std::sqrt(M_PI) / 2.0, 1e-9);
  const auto r = kahane_khintchine_ratio(CoefficientSpace(1, 2.0), 1.0, 256, 20000, 3);
  EXPECT_NEAR(r.mean_ratio, limit, 0.02);
  EXPECT_TRUE(r.pass);
}

TEST(KahaneKhintchine, RatiosInRange) {
  for (std::size_t d : {1u, 2u, 8u}) {
    const auto r = kahane_khintchine_ratio(CoefficientSpace(d, 2.0), 1.0, 16, 10000, 4);
    EXPECT_GE(r.min_ratio, 0.5);
    EXPECT_LE(r.max_ratio, 1.0);
    EXPECT_TRUE(r.pass);
  }
  EXPECT_THROW(kahane_khintchine_ratio(CoefficientSpace(), INFINITY, 4, 100, 1), ParameterError);
}

TEST(Levy, SingleTermIsExactlyOne) {
  const auto r = levy_maximal_check(CoefficientSpace(2, 1.0), 2.0, 1, 1000, 1);
  EXPECT_EQ(r.min_ratio, 1.0);
  EXPECT_EQ(r.max_ratio, 1.0);
  EXPECT_TRUE(r.pass);
}

TEST(Levy, BoundedByTwo) {
  const auto r = levy_maximal_check(CoefficientSpace(1, 2.0), 2.0, 32, 10000, 7);
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.min_ratio, 1.0);
  EXPECT_LE(r.max_ratio, 2.0);
  EXPECT_GT(r.standard_error, 0.0);
  const auto v = levy_maximal_check(CoefficientSpace(8, INFINITY), 1.0, 32, 10000, 7);
  EXPECT_TRUE(v.pass);
}

TEST(Verification, ThreadCountDoesNotChangeReports) {
  MomentConfig one;
  MomentConfig many;
  many.threads = 4;
  const auto a = levy_maximal_check(CoefficientSpace(2, 3.0), 1.5, 12, 9000, 5, one);
  const auto b = levy_maximal_check(CoefficientSpace(2, 3.0), 1.5, 12, 9000, 5, many);
  EXPECT_EQ(a.max_ratio, b.max_ratio);
  EXPECT_EQ(a.standard_error, b.standard_error);
  RandomPolyConfig cfg;
  cfg.lengths = {3, 5};
  cfg.samples = 6;
  const auto c = verify_quantitative_bohr(cfg, 0.5);
  cfg.threads = 3;
  const auto d = verify_quantitative_bohr(cfg, 0.5);
  EXPECT_EQ(c.quantiles, d.quantiles);
}

TEST(Verification, ConfigValidation) {
  RandomPolyConfig cfg;
  cfg.lengths = {};
  EXPECT_THROW(verify_bt_inequality(cfg, 1.0), ParameterError);
  cfg.lengths = {0};
  EXPECT_THROW(verify_bt_inequality(cfg, 1.0), ParameterError);
  cfg.lengths = {2};
  cfg.samples = 0;
  EXPECT_THROW(verify_bt_inequality(cfg, 1.0), ParameterError);
}
