// Randomized invariants. Each property runs over gen::kCases generated cases
// unless its cost forces a smaller sample.
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include <gendir/abscissa.hpp>
#include <gendir/error.hpp>
#include <gendir/frequency.hpp>
#include <gendir/norms.hpp>
#include <gendir/series.hpp>
#include <gendir/strip.hpp>
#include <gendir/summation.hpp>
#include <gendir/verification.hpp>

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gendir;

namespace {

double max_abs_diff(const CoefficientVector& a, const CoefficientVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double vec_scale(const CoefficientVector& a) {
  double m = 1.0;
  for (const auto& x : a) m = std::max(m, std::abs(x));
  return m;
}

bool has_decomposition(const DirichletSeries& d) { return d.frequency().decomposition() != nullptr; }

bool hilbert(const CoefficientSpace& s) { return s.dimension() == 1 || s.norm_exponent() == 2.0; }

NormConfig short_average(double p) {
  NormConfig cfg;
  cfg.p = p;
  cfg.T_max = 300.0;
  cfg.quadrature_points = 1024;
  return cfg;
}

SupConfig quick_sup() {
  SupConfig cfg;
  cfg.t_range = 400.0;
  cfg.grid_points = 4096;
  cfg.multistarts = 4;
  cfg.sweeps = 10;
  return cfg;
}

DirichletSeries scaled(const DirichletSeries& d, Complex c) {
  auto coeffs = d.coefficients();
  for (auto& x : coeffs) x *= c;
  return d.with_coefficients(std::move(coeffs));
}

DirichletSeries sum(const DirichletSeries& a, const DirichletSeries& b) {
  auto coeffs = a.coefficients();
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += b.coefficients()[i];
  return a.with_coefficients(std::move(coeffs));
}

SeriesFamily random_family(Frequency f, std::uint64_t seed) {
  SeriesFamily fam;
  fam.frequency = std::move(f);
  fam.label = "random";
  const double decay = gen::Gen(seed, 0).uniform(-0.5, 1.5);
  fam.rule = [seed, decay](std::size_t n, std::span<Complex> out) {
    gen::Gen g(seed, static_cast<int>(n));
    for (auto& x : out) x = g.unimodular() * std::pow(static_cast<double>(n), -decay);
  };
  return fam;
}

}  // namespace

TEST(Properties, TranslateIsASemigroup) {
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(1, i);
    const auto d = g.series();
    const double a = g.uniform(0.0, 2.0), b = g.uniform(0.0, 2.0);
    const auto lhs = translate(translate(d, a), b).coefficients();
    const auto rhs = translate(d, a + b).coefficients();
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-12 * vec_scale(rhs)) << i;
  }
}

TEST(Properties, TranslateShiftsEvaluation) {
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(2, i);
    const auto d = g.series();
    const double sigma = g.uniform(0.0, 2.0), t = g.uniform(-50.0, 50.0);
    const auto lhs = evaluate(translate(d, sigma), {0.0, t});
    const auto rhs = evaluate(d, {sigma, t});
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-12 * vec_scale(rhs)) << i;
    // Independent evaluation of the first coordinate.
    std::vector<double> lam = d.lambdas();
    std::vector<Complex> a0;
    for (std::size_t n = 1; n <= d.length(); ++n) a0.push_back(d.coefficient(n)[0]);
    EXPECT_LE(std::abs(rhs[0] - oracle::evaluate(lam, a0, Complex(sigma, t))), 1e-10 * vec_scale(rhs)) << i;
  }
}

TEST(Properties, EvaluationBelowTriangleCeiling) {
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(3, i);
    const auto d = g.series();
    const double sigma = g.uniform(0.0, 1.0);
    double ceiling = 0.0;
    for (std::size_t n = 1; n <= d.length(); ++n) ceiling += d.coefficient_norm(n) * std::exp(-sigma * d.lambda(n));
    const auto v = evaluate(d, {sigma, g.uniform(-100.0, 100.0)});
    EXPECT_LE(d.space().norm(v), ceiling * (1 + 1e-12)) << i;
  }
}

TEST(Properties, AbschnittCommutesWithTranslate) {
  int checked = 0;
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(4, i);
    const auto d = g.series(40);
    if (!has_decomposition(d)) {
      EXPECT_THROW(abschnitt(d, 1), UnsupportedError);
      continue;
    }
    const std::size_t N = g.size(1, 6);
    const double sigma = g.uniform(0.0, 1.0);
    EXPECT_EQ(abschnitt(translate(d, sigma), N).coefficients(),
              translate(abschnitt(d, N), sigma).coefficients())
        << i;
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST(Properties, VerticalTranslatePreservesCoefficientNorms) {
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(5, i);
    auto d = g.series();
    if (!has_decomposition(d)) d = g.series(make_log_frequency(), d.space(), d.length());
    const auto dw = vertical_translate(d, g.omega(g.size(0, 12)));
    for (std::size_t n = 1; n <= d.length(); ++n) {
      EXPECT_NEAR(dw.coefficient_norm(n), d.coefficient_norm(n), 1e-12 * (1 + d.coefficient_norm(n)));
    }
    if (hilbert(d.space())) {
      NormConfig cfg;
      cfg.method = NormMethod::parseval;
      const double a = hardy_norm(d, cfg).value, b = hardy_norm(dw, cfg).value;
      EXPECT_NEAR(a, b, 1e-12 * a) << i;
    }
  }
}

TEST(Properties, PartialSumIsIdempotent) {
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(6, i);
    const auto d = g.series();
    const std::size_t M = g.size(1, d.length());
    const std::size_t N = g.size(1, M);
    EXPECT_EQ(partial_sum(partial_sum(d, M), N).coefficients(), partial_sum(d, N).coefficients());
    EXPECT_EQ(partial_sum(d, d.length()).coefficients(), d.coefficients());
  }
}

TEST(Properties, NormIsHomogeneousAndSubadditive) {
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(7, i);
    const auto d = g.series(10);
    const auto e = g.series(d.frequency(), d.space(), d.length());
    const double p = g.coin() ? 1.0 : g.uniform(1.0, 4.0);
    const auto cfg = short_average(p);
    const Complex c = g.complex_gaussian();
    const double nd = hardy_norm(d, cfg).value;
    EXPECT_NEAR(hardy_norm(scaled(d, c), cfg).value, std::abs(c) * nd, 1e-10 * std::abs(c) * nd) << i;
    EXPECT_LE(hardy_norm(sum(d, e), cfg).value, (nd + hardy_norm(e, cfg).value) * (1 + 1e-12)) << i;
  }
}

TEST(Properties, NormIsMonotoneInP) {
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(8, i);
    const auto d = g.series(10);
    const double p = g.uniform(1.0, 3.0), q = p + g.uniform(0.0, 3.0);
    EXPECT_LE(hardy_norm(d, short_average(p)).value, hardy_norm(d, short_average(q)).value * (1 + 1e-12))
        << i;
  }
}

TEST(Properties, TranslationContracts) {
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(9, i);
    const auto d = g.series(10);
    const double sigma = g.uniform(0.0, 2.0);
    NormConfig cfg;
    if (hilbert(d.space())) {
      cfg.method = NormMethod::parseval;
      EXPECT_LE(hardy_norm(translate(d, sigma), cfg).value, hardy_norm(d, cfg).value * (1 + 1e-12)) << i;
    }
    EXPECT_LE(sup_on_line(d, sigma, quick_sup()).ceiling, sup_on_line(d, 0.0, quick_sup()).ceiling * (1 + 1e-12));
  }
}

TEST(Properties, ParsevalMatchesTimeAverage) {
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(10, i);
    const std::size_t N = g.size(1, 16);
    const auto d = g.series(g.frequency(N), CoefficientSpace(g.size(1, 3), 2.0), N);
    NormConfig cfg;
    cfg.T_max = 2000.0;
    const double ta = hardy_norm(d, cfg).value;
    cfg.method = NormMethod::parseval;
    const double exact = hardy_norm(d, cfg).value;
    EXPECT_NEAR(ta, exact, 1e-3 * exact) << i << " " << d.frequency().label();
  }
}

TEST(Properties, SupEstimateBracketedByCoefficients) {
  for (int i = 0; i < gen::kCases / 4; ++i) {
    gen::Gen g(11, i);
    const std::size_t N = g.size(1, 12);
    const auto d = g.series(g.frequency(N), CoefficientSpace::scalars(), N);
    const double sigma = g.uniform(0.0, 0.5);
    const auto s = sup_on_line(d, sigma, quick_sup());
    EXPECT_LE(s.lower_bound, s.ceiling * (1 + 1e-12)) << i;
    EXPECT_LE(s.value, s.ceiling * (1 + 1e-9)) << i;
    EXPECT_GE(s.value, s.lower_bound);
    // Each Bohr coefficient is bounded by the sup.
    const auto t = translate(d, sigma);
    for (std::size_t n = 1; n <= N; ++n) EXPECT_LE(t.coefficient_norm(n), s.value * 1.01) << i << " n=" << n;
  }
}

TEST(Properties, StripOfLogNIsOne) {
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(12, i);
    const std::size_t n_max = g.size(4, 5000);
    EXPECT_NEAR(strip_L(make_log_frequency(), n_max).value, 1.0, 1e-12) << n_max;
  }
}

TEST(Properties, BohrConditionImpliesLandau) {
  std::vector<Frequency> fs{make_log_frequency(), make_linear_frequency(), make_sqrt_log_frequency(),
                            make_log_log_frequency(), make_lacunary_frequency(2.0)};
  for (int i = 0; i < 10; ++i) fs.push_back(gen::Gen(13, i).frequency(1000));
  int implications = 0;
  for (const auto& f : fs) {
    for (double l : {0.5, 1.0, 2.0}) {
      if (!check_bc(f, l, 0.1, 1000).holds_on_prefix) continue;
      ++implications;
      for (double dl : {0.5, 1.0}) EXPECT_TRUE(check_lc(f, dl, 1000).holds_on_prefix) << f.label();
    }
  }
  EXPECT_GT(implications, 0);
}

TEST(Properties, AbschnittMaskIsMonotone) {
  const auto dec = make_log_frequency().decomposition();
  ASSERT_NE(dec, nullptr);
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(14, i);
    const std::size_t n_max = g.size(1, 500), N = g.size(1, 20);
    const auto a = abschnitt_mask(*dec, N, n_max), b = abschnitt_mask(*dec, N + 1, n_max);
    for (std::size_t n = 0; n < n_max; ++n) EXPECT_TRUE(!a[n] || b[n]) << n;
  }
}

TEST(Properties, DecompositionReconstructsFrequency) {
  for (const auto& f : {make_log_frequency(), make_linear_frequency()}) {
    const auto* dec = f.decomposition();
    ASSERT_NE(dec, nullptr);
    const std::size_t n_max = 2000;
    const auto lam = f.prefix(n_max);
    const auto rows = dec->rows(n_max);
    for (std::size_t n = 0; n < n_max; ++n) {
      EXPECT_NEAR(dec->reconstruct(rows[n]), lam[n], 1e-12 * (1 + lam[n])) << f.label() << " " << n + 1;
    }
  }
}

TEST(Properties, RieszWeightsInUnitInterval) {
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(15, i);
    const double lambda = g.uniform(0.0, 10.0), k = g.uniform(0.0, 4.0), x = g.uniform(0.01, 12.0);
    const double w = riesz_weight(lambda, k, x);
    EXPECT_GE(w, 0.0);
    EXPECT_LE(w, 1.0);
    EXPECT_LE(w, riesz_weight(lambda, k, x + g.uniform(0.0, 3.0)));
    if (lambda >= x) EXPECT_EQ(w, 0.0);
  }
}

TEST(Properties, AbscissaOrdering) {
  SupConfig sup = quick_sup();
  sup.t_range = 200.0;
  sup.grid_points = 1024;
  sup.refine_cells = 2;
  sup.multistarts = 2;
  sup.sweeps = 5;
  for (int i = 0; i < 6; ++i) {
    gen::Gen g(16, i);
    const auto fam = random_family(i % 2 ? make_log_frequency() : make_linear_frequency(), 1600 + i);
    const double k = g.uniform(0.0, 1.0);
    const std::size_t n_max = 24;
    const auto c = sigma_c_estimate(fam, k, n_max);
    const auto u = sigma_u_estimate(fam, k, n_max, sup);
    const auto a = sigma_a_estimate(fam, k, n_max);
    ASSERT_EQ(c.quotients.size(), u.quotients.size());
    for (std::size_t j = 0; j < c.quotients.size(); ++j) {
      EXPECT_LE(c.quotients[j].quotient, u.quotients[j].quotient + 1e-9) << i << " " << j;
      EXPECT_LE(u.quotients[j].quotient, a.quotients[j].quotient + 1e-9) << i << " " << j;
    }
    EXPECT_LE(c.value, u.value + 1e-9);
    EXPECT_LE(u.value, a.value + 1e-9);
  }
}

TEST(Properties, AbsoluteAbscissaDecreasesInK) {
  for (int i = 0; i < gen::kCases / 4; ++i) {
    gen::Gen g(17, i);
    const auto fam = random_family(g.frequency(400), 1700 + i);
    const double k = g.uniform(0.0, 2.0), k2 = k + g.uniform(0.0, 2.0);
    EXPECT_LE(sigma_a_estimate(fam, k2, 400).value, sigma_a_estimate(fam, k, 400).value + 1e-12) << i;
  }
}

TEST(Properties, LevyRatioAtLeastOne) {
  for (int i = 0; i < gen::kCases / 4; ++i) {
    gen::Gen g(18, i);
    const auto space = g.space();
    const auto r = levy_maximal_check(space, g.uniform(1.0, 4.0), g.size(1, 20), 200, 1800 + i);
    EXPECT_GE(r.min_ratio, 1.0) << i;
  }
}

TEST(Properties, StripFormulaIsContinuous) {
  for (int i = 0; i < gen::kCases; ++i) {
    gen::Gen g(19, i);
    const double L = g.uniform(0.0, 3.0), r = g.uniform(1.0, 8.0);
    const double eps = 1e-7;
    EXPECT_NEAR(strip_S_formula(L, r), strip_S_formula(L, r + eps), 1e-5) << r;
    EXPECT_GE(strip_S_formula(L, r), 0.0);
    EXPECT_LE(strip_S_formula(L, r), L + 1e-15);
  }
  EXPECT_NEAR(strip_S_formula(1.0, 2.0 - 1e-9), strip_S_formula(1.0, 2.0), 1e-8);
}
