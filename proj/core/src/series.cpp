#include "gendir/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gendir/error.hpp"
#include "gendir/parallel.hpp"

namespace gendir {
namespace {

constexpr double kUnitModulusTolerance = 1e-9;

bool is_inf(double r) { return std::isinf(r); }

double lr_norm(std::span<const Complex> x, double r) {
  if (x.size() == 1) return std::abs(x[0]);
  if (is_inf(r)) {
    double m = 0.0;
    for (const auto& v : x) m = std::max(m, std::abs(v));
    return m;
  }
  if (r == 1.0) {
    double s = 0.0;
    for (const auto& v : x) s += std::abs(v);
    return s;
  }
  if (r == 2.0) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
  }
  double m = 0.0;
  for (const auto& v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& v : x) s += std::pow(std::abs(v) / m, r);
  return m * std::pow(s, 1.0 / r);
}

// Unit-norm functional x* in ℓ_{r'} maximizing Re Σ_j x*_j v_j; the maximum
// equals ‖v‖_r.
CoefficientVector norming_functional(std::span<const Complex> v, double r) {
  const std::size_t d = v.size();
  CoefficientVector x(d, Complex(0.0));
  const double nv = lr_norm(v, r);
  if (nv == 0.0) {
    x[0] = 1.0;
    return x;
  }
  auto phase = [](Complex z) { return std::abs(z) > 0 ? std::conj(z) / std::abs(z) : Complex(1.0); };
  if (is_inf(r)) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < d; ++j) {
      if (std::abs(v[j]) > std::abs(v[best])) best = j;
    }
    x[best] = phase(v[best]);
  } else if (r == 1.0) {
    for (std::size_t j = 0; j < d; ++j) x[j] = phase(v[j]);
  } else {
    for (std::size_t j = 0; j < d; ++j) {
      x[j] = phase(v[j]) * std::pow(std::abs(v[j]) / nv, r - 1.0);
    }
  }
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// CoefficientSpace

CoefficientSpace::CoefficientSpace(std::size_t dimension, double r) : dim_(dimension), r_(r) {
  if (dimension == 0) throw ParameterError("coefficient space dimension must be >= 1");
  if (!(r >= 1.0)) throw ParameterError("norm exponent r must lie in [1, inf]");
}

double CoefficientSpace::dual_exponent() const noexcept {
  if (is_inf(r_)) return 1.0;
  if (r_ == 1.0) return std::numeric_limits<double>::infinity();
  return r_ / (r_ - 1.0);
}

double CoefficientSpace::cotype() const noexcept {
  if (is_inf(r_)) return std::numeric_limits<double>::infinity();
  return std::max(r_, 2.0);
}

bool CoefficientSpace::cotype_is_proxy_only() const noexcept { return is_inf(r_); }

double CoefficientSpace::norm(std::span<const Complex> x) const {
  if (x.size() != dim_) throw ParameterError("vector dimension does not match the space");
  return lr_norm(x, r_);
}

double CoefficientSpace::dual_norm(std::span<const Complex> x) const {
  if (x.size() != dim_) throw ParameterError("vector dimension does not match the space");
  return lr_norm(x, dual_exponent());
}

// ---------------------------------------------------------------------------
// DirichletSeries

DirichletSeries::DirichletSeries(Frequency frequency, CoefficientSpace space,
                                 std::vector<Complex> coefficients)
    : frequency_(std::move(frequency)), space_(space), coeffs_(std::move(coefficients)) {
  const std::size_t d = space_.dimension();
  if (coeffs_.empty()) throw ParameterError("a Dirichlet series needs at least one coefficient");
  if (coeffs_.size() % d != 0) {
    throw ParameterError("coefficient count is not a multiple of the space dimension");
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!std::isfinite(coeffs_[i].real()) || !std::isfinite(coeffs_[i].imag())) {
      throw ValidationError("coefficient " + std::to_string(i / d + 1) + " is not finite",
                            i / d + 1);
    }
  }
  lambda_ = frequency_.prefix(coeffs_.size() / d);
}

DirichletSeries::DirichletSeries(Frequency frequency, std::vector<Complex> coefficients)
    : DirichletSeries(std::move(frequency), CoefficientSpace::scalars(), std::move(coefficients)) {}

std::span<const Complex> DirichletSeries::coefficient(std::size_t n) const {
  if (n == 0 || n > length()) {
    throw ParameterError("coefficient index " + std::to_string(n) + " out of range");
  }
  const std::size_t d = dimension();
  return std::span<const Complex>(coeffs_).subspan((n - 1) * d, d);
}

DirichletSeries DirichletSeries::with_coefficients(std::vector<Complex> coefficients) const {
  if (coefficients.size() != coeffs_.size()) {
    throw ParameterError("replacement coefficients have a different length");
  }
  DirichletSeries out = *this;
  out.coeffs_ = std::move(coefficients);
  return out;
}

// ---------------------------------------------------------------------------
// Operations

CoefficientVector evaluate(const DirichletSeries& d, Point s) {
  const std::size_t dim = d.dimension();
  std::vector<long double> re(dim, 0.0L), im(dim, 0.0L);
  for (std::size_t n = 1; n <= d.length(); ++n) {
    const long double lam = d.lambda(n);
    const long double mag = std::exp(-lam * static_cast<long double>(s.sigma));
    const long double ang = -lam * static_cast<long double>(s.t);
    const long double c = mag * std::cos(ang);
    const long double sn = mag * std::sin(ang);
    const auto a = d.coefficient(n);
    for (std::size_t j = 0; j < dim; ++j) {
      const long double ar = a[j].real();
      const long double ai = a[j].imag();
      re[j] += ar * c - ai * sn;
      im[j] += ar * sn + ai * c;
    }
  }
  CoefficientVector out(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    out[j] = Complex(static_cast<double>(re[j]), static_cast<double>(im[j]));
  }
  return out;
}

DirichletSeries translate(const DirichletSeries& d, double sigma) {
  if (sigma == 0.0) return d;
  std::vector<Complex> c = d.coefficients();
  const std::size_t dim = d.dimension();
  for (std::size_t n = 1; n <= d.length(); ++n) {
    const double w = std::exp(-sigma * d.lambda(n));
    for (std::size_t j = 0; j < dim; ++j) c[(n - 1) * dim + j] *= w;
  }
  return d.with_coefficients(std::move(c));
}

DirichletSeries partial_sum(const DirichletSeries& d, std::size_t N) {
  if (N == 0 || N > d.length()) {
    throw ParameterError("partial sum length " + std::to_string(N) + " outside [1, " +
                         std::to_string(d.length()) + "]");
  }
  const auto& c = d.coefficients();
  return DirichletSeries(d.frequency(), d.space(),
                         std::vector<Complex>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(N * d.dimension())));
}

DirichletSeries abschnitt(const DirichletSeries& d, std::size_t N) {
  const auto* dec = d.frequency().decomposition();
  if (!dec) {
    throw UnsupportedError("frequency '" + d.frequency().label() +
                           "' carries no Bohr decomposition");
  }
  const auto mask = abschnitt_mask(*dec, N, d.length());
  std::vector<Complex> c = d.coefficients();
  const std::size_t dim = d.dimension();
  for (std::size_t n = 0; n < d.length(); ++n) {
    if (!mask[n]) std::fill_n(c.begin() + static_cast<std::ptrdiff_t>(n * dim), dim, Complex(0.0));
  }
  return d.with_coefficients(std::move(c));
}

std::vector<Complex> character_values(const DirichletSeries& d, std::span<const Complex> omega) {
  for (std::size_t j = 0; j < omega.size(); ++j) {
    if (std::abs(std::abs(omega[j]) - 1.0) > kUnitModulusTolerance) {
      throw ParameterError("omega[" + std::to_string(j) + "] is not unimodular");
    }
  }
  std::vector<Complex> unit(omega.size());
  for (std::size_t j = 0; j < omega.size(); ++j) unit[j] = omega[j] / std::abs(omega[j]);

  std::vector<Complex> h(d.length(), Complex(1.0));
  if (const auto* dec = d.frequency().decomposition()) {
    const auto rows = dec->rows(d.length());
    for (std::size_t n = 0; n < d.length(); ++n) {
      const auto& row = rows[n];
      Complex value(1.0);
      double angle = 0.0;
      for (std::size_t k = 0; k < std::min(row.size(), unit.size()); ++k) {
        if (row[k].is_zero()) continue;
        if (row[k].is_integer()) {
          const auto e = row[k].num();
          value *= e >= 0 ? std::pow(unit[k], static_cast<int>(e))
                          : std::pow(std::conj(unit[k]), static_cast<int>(-e));
        } else {
          angle += row[k].to_double() * std::arg(unit[k]);
        }
      }
      value *= std::polar(1.0, angle);
      h[n] = value / std::abs(value);
    }
    return h;
  }
  if (d.frequency().q_independent()) {
    std::copy_n(unit.begin(), std::min(unit.size(), d.length()), h.begin());
    return h;
  }
  throw UnsupportedError("vertical translates need a Bohr decomposition or a declared "
                         "Q-independent frequency");
}

DirichletSeries vertical_translate(const DirichletSeries& d, std::span<const Complex> omega) {
  const auto h = character_values(d, omega);
  std::vector<Complex> c = d.coefficients();
  const std::size_t dim = d.dimension();
  for (std::size_t n = 0; n < d.length(); ++n) {
    for (std::size_t j = 0; j < dim; ++j) c[n * dim + j] *= h[n];
  }
  return d.with_coefficients(std::move(c));
}

WeakL1Result weak_l1_norm(const DirichletSeries& d, std::size_t n_dual_samples,
                          std::uint64_t seed) {
  const std::size_t dim = d.dimension();
  const std::size_t len = d.length();
  if (dim == 1) {
    double s = 0.0;
    for (std::size_t n = 1; n <= len; ++n) s += std::abs(d.coefficient(n)[0]);
    return {s, false};
  }
  const double r = d.space().norm_exponent();

  // Σ_n |x*(a_n)| for a functional of dual norm <= 1.
  auto objective = [&](std::span<const Complex> x) {
    double s = 0.0;
    for (std::size_t n = 1; n <= len; ++n) {
      const auto a = d.coefficient(n);
      Complex v(0.0);
      for (std::size_t j = 0; j < dim; ++j) v += x[j] * a[j];
      s += std::abs(v);
    }
    return s;
  };
  // Alternate: phases θ_n aligning x*(a_n), then the functional norming
  // Σ θ_n a_n. Both steps are monotone and every value is attained.
  auto polish = [&](CoefficientVector x) {
    double current = objective(x);
    double best = current;
    for (int iter = 0; iter < 100; ++iter) {
      CoefficientVector v(dim, Complex(0.0));
      for (std::size_t n = 1; n <= len; ++n) {
        const auto a = d.coefficient(n);
        Complex xa(0.0);
        for (std::size_t j = 0; j < dim; ++j) xa += x[j] * a[j];
        const Complex theta = std::abs(xa) > 0 ? std::conj(xa) / std::abs(xa) : Complex(1.0);
        for (std::size_t j = 0; j < dim; ++j) v[j] += theta * a[j];
      }
      best = std::max(best, lr_norm(v, r));
      x = norming_functional(v, r);
      const double next = objective(x);
      best = std::max(best, next);
      if (next <= current * (1.0 + 1e-13)) break;
      current = next;
    }
    return best;
  };

  double best = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    CoefficientVector e(dim, Complex(0.0));
    e[j] = 1.0;
    best = std::max(best, polish(std::move(e)));
  }
  auto rng = stream_rng(seed, 0, 0x77);
  std::normal_distribution<double> gauss;
  for (std::size_t s = 0; s < n_dual_samples; ++s) {
    CoefficientVector x(dim);
    for (auto& v : x) v = Complex(gauss(rng), gauss(rng));
    const double nx = lr_norm(x, d.space().dual_exponent());
    for (auto& v : x) v /= nx;
    best = std::max(best, polish(std::move(x)));
  }
  return {best, true};
}

}  // namespace gendir
