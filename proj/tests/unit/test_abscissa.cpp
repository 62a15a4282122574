#include <gtest/gtest.h>

#include <cmath>

#include <gendir/abscissa.hpp>
#include <gendir/error.hpp>

#include "support/oracles.hpp"

using namespace gendir;

TEST(SigmaC, UnitLogIsOne) {
  const auto e = sigma_c_estimate(unit_family(make_log_frequency()), 0.0, 10000);
  EXPECT_NEAR(e.value, 1.0, 0.05);
  EXPECT_FALSE(e.upper_bound_only);
  EXPECT_EQ(e.kind, AbscissaKind::convergence);
  EXPECT_EQ(e.quotients.size(), 9999u);
}

TEST(SigmaC, AlternatingIsZero) {
  const auto e = sigma_c_estimate(alternating_family(make_log_frequency()), 0.0, 10000);
  // Partial sums are -1 or 0, so quotients are 0 or -inf.
  EXPECT_EQ(e.value, 0.0);
  EXPECT_TRUE(e.upper_bound_only);
  // Direct partial-sum oracle on the first midpoints.
  double s = 0.0;
  for (std::size_t n = 1; n <= 20; ++n) {
    s += n % 2 == 0 ? 1.0 : -1.0;
    const double x = 0.5 * (std::log(n) + std::log(n + 1.0));
    const double q = s == 0.0 ? -INFINITY : std::log(std::abs(s)) / x;
    EXPECT_EQ(e.quotients[n - 1].quotient, q);
  }
}

TEST(SigmaC, SingleTermIsFlagged) {
  const auto e = sigma_c_estimate(single_term_family(make_log_frequency(), 0.5), 0.0, 100);
  EXPECT_LE(e.value, 0.0);
  EXPECT_TRUE(e.upper_bound_only);
  EXPECT_LT(e.quotients.back().quotient, 0.0);
}

TEST(SigmaC, RieszOrderMatchesDirectFormula) {
  const auto fam = power_family(make_log_frequency(), -0.5);
  const auto e = sigma_c_estimate(fam, 1.5, 200);
  const auto d = fam.truncate(200);
  for (std::size_t n : {1u, 50u, 199u}) {
    const double x = 0.5 * (d.lambda(n) + d.lambda(n + 1));
    double s = 0.0;
    for (std::size_t m = 1; m <= n; ++m) s += d.coefficient(m)[0].real() * std::pow(1.0 - d.lambda(m) / x, 1.5);
    EXPECT_NEAR(e.quotients[n - 1].quotient, std::log(s) / x, 1e-10);
  }
}

TEST(SigmaA, Examples) {
  EXPECT_NEAR(sigma_a_estimate(unit_family(make_log_frequency()), 0.0, 10000).value, 1.0, 0.05);
  // Tail maximum of log(n)/n over the second half of the prefix.
  const auto lin = sigma_a_estimate(unit_family(make_linear_frequency()), 0.0, 2000);
  EXPECT_NEAR(lin.value, 0.0, 0.01);
  const auto sq = sigma_a_estimate(power_family(make_log_frequency(), 2.0), 0.0, 10000);
  EXPECT_TRUE(sq.upper_bound_only);
  EXPECT_LT(sq.value, 0.1);
}

TEST(SigmaA, AgreesWithStripL) {
  for (auto f : {make_log_frequency(), make_linear_frequency()}) {
    const double L = strip_L(f, 10000).value;
    EXPECT_NEAR(sigma_a_estimate(unit_family(f), 0.0, 10000).value, L, 0.05) << f.label();
  }
}

TEST(SigmaU, PositiveCoefficientsMatchSigmaA) {
  const auto fam = power_family(make_log_frequency(), 0.5);
  SupConfig sup;
  sup.line_search = false;
  const auto u = sigma_u_estimate(fam, 1.0, 60, sup);
  const auto a = sigma_a_estimate(fam, 1.0, 60);
  ASSERT_EQ(u.quotients.size(), a.quotients.size());
  for (std::size_t i = 0; i < u.quotients.size(); ++i) {
    EXPECT_NEAR(u.quotients[i].quotient, a.quotients[i].quotient, 1e-10);
  }
  EXPECT_NEAR(u.value, a.value, 1e-10);
}

TEST(SigmaU, IndependentFrequencyNearAbsolute) {
  // ℚ-independent λ: sup_t |Σ (-1)^n e^{-iλ_n t}| = Σ|a_n| (Kronecker).
  const auto f = make_log_prime_frequency(6);
  const auto u = sigma_u_estimate(alternating_family(f), 0.0, 6);
  const auto a = sigma_a_estimate(alternating_family(f), 0.0, 6);
  for (std::size_t i = 0; i < u.quotients.size(); ++i) {
    EXPECT_NEAR(u.quotients[i].quotient, a.quotients[i].quotient, 1e-9);
  }
  // Dense t-search oracle: the line itself nearly attains the sum for N = 3.
  const auto d = alternating_family(f).truncate(3);
  const std::vector<Complex> c(d.coefficients().begin(), d.coefficients().end());
  EXPECT_GT(oracle::dense_line_max(d.lambdas(), c, 0.0, 2e4, 2000000), 0.99 * 3.0);
}

TEST(SigmaU, SingleTermIsFlagged) {
  const auto e = sigma_u_estimate(single_term_family(make_log_frequency(), 0.25), 1.0, 20);
  EXPECT_LE(e.value, 0.0);
  EXPECT_TRUE(e.upper_bound_only);
}

TEST(Abscissa, Errors) {
  const auto fam = unit_family(make_log_frequency());
  EXPECT_THROW(sigma_c_estimate(fam, 0.0, 1), ParameterError);
  EXPECT_THROW(sigma_a_estimate(fam, -1.0, 10), ParameterError);
  EXPECT_THROW(fam.truncate(0), ParameterError);
}
