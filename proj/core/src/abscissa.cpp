#include "gendir/abscissa.hpp"

#include <cmath>
#include <limits>

#include "gendir/error.hpp"
#include "gendir/parallel.hpp"
#include "gendir/summation.hpp"

namespace gendir {
namespace {

void check_args(double k, std::size_t n_max) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw ParameterError("Riesz order k must be >= 0");
  if (n_max < 2) throw ParameterError("abscissa estimates need n_max >= 2");
}

std::vector<double> midpoints(const std::vector<double>& lambda) {
  std::vector<double> x(lambda.size() - 1);
  for (std::size_t n = 0; n + 1 < lambda.size(); ++n) x[n] = 0.5 * (lambda[n] + lambda[n + 1]);
  return x;
}

double log_quotient(double numerator, double x) {
  if (numerator <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(numerator) / x;
}

// ‖Σ_{m<=n} v_m (1-λ_m/x_n)^k‖ for every midpoint x_n, where `values` holds
// rows of `dim` entries and `norm` measures one row.
template <typename Norm>
std::vector<double> riesz_numerators(const std::vector<Complex>& values, std::size_t dim,
                                     const std::vector<double>& lambda,
                                     const std::vector<double>& x, double k, Norm&& norm) {
  const std::size_t count = x.size();
  std::vector<double> out(count);
  std::vector<Complex> acc(dim, Complex(0.0)), moment(dim, Complex(0.0)), tmp(dim);
  if (k == 0.0 || k == 1.0) {
    // Running sums: Σ v_m and Σ v_m λ_m.
    for (std::size_t n = 0; n < count; ++n) {
      for (std::size_t j = 0; j < dim; ++j) {
        acc[j] += values[n * dim + j];
        moment[j] += values[n * dim + j] * lambda[n];
      }
      if (k == 0.0) {
        out[n] = norm(acc);
      } else {
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = acc[j] - moment[j] / x[n];
        out[n] = norm(tmp);
      }
    }
    return out;
  }
  const bool integral = std::floor(k) == k && k <= 16.0;
  for (std::size_t n = 0; n < count; ++n) {
    std::fill(tmp.begin(), tmp.end(), Complex(0.0));
    for (std::size_t m = 0; m <= n; ++m) {
      const double base = 1.0 - lambda[m] / x[n];
      double w = 1.0;
      if (integral) {
        for (int i = 0; i < static_cast<int>(k); ++i) w *= base;
      } else {
        w = std::pow(base, k);
      }
      for (std::size_t j = 0; j < dim; ++j) tmp[j] += values[m * dim + j] * w;
    }
    out[n] = norm(tmp);
  }
  return out;
}

AbscissaEstimate finish(AbscissaKind kind, double k, std::size_t n_max,
                        const std::vector<double>& x, const std::vector<double>& numerators,
                        const EstimatorConfig& cfg) {
  AbscissaEstimate est;
  est.kind = kind;
  est.riesz_order = k;
  est.prefix_length = n_max;
  est.quotients.reserve(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    est.quotients.push_back({x[n], log_quotient(numerators[n], x[n])});
  }
  est.value = tail_max(est.quotients, cfg.tail_fraction);
  est.upper_bound_only = !(est.value > cfg.zero_tolerance);
  est.converged = !still_increasing(est.quotients, cfg.tail_fraction);
  return est;
}

}  // namespace

DirichletSeries SeriesFamily::truncate(std::size_t n_max) const {
  if (n_max == 0) throw ParameterError("truncation length must be >= 1");
  const std::size_t dim = space.dimension();
  std::vector<Complex> c(n_max * dim);
  for (std::size_t n = 1; n <= n_max; ++n) {
    rule(n, std::span<Complex>(c).subspan((n - 1) * dim, dim));
  }
  return DirichletSeries(frequency, space, std::move(c));
}

SeriesFamily unit_family(Frequency f) {
  return {std::move(f), CoefficientSpace::scalars(),
          [](std::size_t, std::span<Complex> out) { out[0] = 1.0; }, "unit"};
}

SeriesFamily alternating_family(Frequency f) {
  return {std::move(f), CoefficientSpace::scalars(),
          [](std::size_t n, std::span<Complex> out) { out[0] = n % 2 == 0 ? 1.0 : -1.0; },
          "alternating"};
}

SeriesFamily power_family(Frequency f, double exponent) {
  return {std::move(f), CoefficientSpace::scalars(),
          [exponent](std::size_t n, std::span<Complex> out) {
            out[0] = std::pow(static_cast<double>(n), -exponent);
          },
          "power"};
}

SeriesFamily single_term_family(Frequency f, Complex value) {
  return {std::move(f), CoefficientSpace::scalars(),
          [value](std::size_t n, std::span<Complex> out) { out[0] = n == 1 ? value : 0.0; },
          "single"};
}

AbscissaEstimate sigma_c_estimate(const SeriesFamily& family, double k, std::size_t n_max,
                                  const EstimatorConfig& cfg) {
  check_args(k, n_max);
  const auto d = family.truncate(n_max);
  const auto x = midpoints(d.lambdas());
  const auto& space = d.space();
  const auto numerators = riesz_numerators(
      d.coefficients(), d.dimension(), d.lambdas(), x, k,
      [&](std::span<const Complex> v) { return space.norm(v); });
  return finish(AbscissaKind::convergence, k, n_max, x, numerators, cfg);
}

AbscissaEstimate sigma_a_estimate(const SeriesFamily& family, double k, std::size_t n_max,
                                  const EstimatorConfig& cfg) {
  check_args(k, n_max);
  const auto d = family.truncate(n_max);
  const auto x = midpoints(d.lambdas());
  std::vector<Complex> norms(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) norms[n - 1] = d.coefficient_norm(n);
  const auto numerators =
      riesz_numerators(norms, 1, d.lambdas(), x, k,
                       [](std::span<const Complex> v) { return std::abs(v[0].real()); });
  return finish(AbscissaKind::absolute, k, n_max, x, numerators, cfg);
}

AbscissaEstimate sigma_u_estimate(const SeriesFamily& family, double k, std::size_t n_max,
                                  const SupConfig& sup_cfg, const EstimatorConfig& cfg) {
  check_args(k, n_max);
  const auto d = family.truncate(n_max);
  const auto x = midpoints(d.lambdas());
  std::vector<double> numerators(x.size());
  parallel_for(x.size(), cfg.threads, [&](std::size_t n) {
    const auto mean = riesz_mean(partial_sum(d, n + 1), {k, x[n]});
    numerators[n] = sup_on_line(mean, 0.0, sup_cfg).value;
  });
  return finish(AbscissaKind::uniform, k, n_max, x, numerators, cfg);
}

}  // namespace gendir
