#pragma once

// Dirichlet polynomials D = Σ_{n=1}^{N} a_n e^{-λ_n s} with coefficients in a
// finite-dimensional coordinate space ℓ_r^d.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gendir/frequency.hpp"

namespace gendir {

using Complex = std::complex<double>;
using CoefficientVector = std::vector<Complex>;

/// ℂ^d with the ℓ_r norm, r ∈ [1, ∞]. d = 1 gives the scalars for any r.
class CoefficientSpace {
 public:
  CoefficientSpace(std::size_t dimension = 1, double r = 2.0);
  static CoefficientSpace scalars() { return CoefficientSpace(1, 2.0); }

  std::size_t dimension() const noexcept { return dim_; }
  double norm_exponent() const noexcept { return r_; }
  /// Conjugate exponent r' with 1/r + 1/r' = 1.
  double dual_exponent() const noexcept;

  /// Optimal cotype of the infinite-dimensional ℓ_r this space stands in for:
  /// max(r, 2), and +inf for r = ∞. Every finite-dimensional space has
  /// cotype 2; see `cotype_is_proxy_only()`.
  double cotype() const noexcept;
  /// True for r = ∞, where the cotype refers to the infinite-dimensional
  /// space only.
  bool cotype_is_proxy_only() const noexcept;

  double norm(std::span<const Complex> x) const;
  /// ℓ_{r'} norm, the dual norm of functionals acting by Σ x_j a_j.
  double dual_norm(std::span<const Complex> x) const;

  friend bool operator==(const CoefficientSpace&, const CoefficientSpace&) = default;

 private:
  std::size_t dim_;
  double r_;
};

/// A point s = sigma + i t.
struct Point {
  double sigma = 0.0;
  double t = 0.0;
};

/// Immutable finite Dirichlet series. The frequency prefix λ_1..λ_N is
/// materialized (and validated) at construction.
class DirichletSeries {
 public:
  /// `coefficients` is row-major: N rows of `space.dimension()` entries.
  DirichletSeries(Frequency frequency, CoefficientSpace space, std::vector<Complex> coefficients);
  /// Scalar convenience constructor.
  DirichletSeries(Frequency frequency, std::vector<Complex> coefficients);

  const Frequency& frequency() const noexcept { return frequency_; }
  const CoefficientSpace& space() const noexcept { return space_; }
  std::size_t length() const noexcept { return lambda_.size(); }
  std::size_t dimension() const noexcept { return space_.dimension(); }

  /// λ_n, 1-based.
  double lambda(std::size_t n) const { return lambda_.at(n - 1); }
  const std::vector<double>& lambdas() const noexcept { return lambda_; }

  /// a_n, 1-based.
  std::span<const Complex> coefficient(std::size_t n) const;
  const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
  double coefficient_norm(std::size_t n) const { return space_.norm(coefficient(n)); }

  /// Same frequency and space with new coefficients (same length).
  DirichletSeries with_coefficients(std::vector<Complex> coefficients) const;

 private:
  Frequency frequency_;
  CoefficientSpace space_;
  std::vector<double> lambda_;
  std::vector<Complex> coeffs_;
};

/// Σ_n a_n e^{-λ_n (σ + i t)} by direct summation in extended precision.
CoefficientVector evaluate(const DirichletSeries& d, Point s);

/// Coefficients a_n e^{-σ λ_n}.
DirichletSeries translate(const DirichletSeries& d, double sigma);

/// First N terms, 1 <= N <= length.
DirichletSeries partial_sum(const DirichletSeries& d, std::size_t N);

/// Zeroes every coefficient whose frequency uses a Bohr basis element beyond
/// the first N. Throws UnsupportedError without a decomposition.
DirichletSeries abschnitt(const DirichletSeries& d, std::size_t N);

/// Character values h_{λ_n}(ω) for n = 1..length. With a Bohr decomposition
/// ω is indexed by basis element and h(ω) = Π_k ω_k^{q_k} (principal
/// branch for non-integer q); for declared ℚ-independent frequencies ω is
/// indexed by n. Entries beyond ω's length are taken as 1. Throws
/// ParameterError if some |ω_j| deviates from 1 by more than 1e-9.
std::vector<Complex> character_values(const DirichletSeries& d, std::span<const Complex> omega);

/// Vertical limit D^ω: a_n ↦ a_n h_{λ_n}(ω).
DirichletSeries vertical_translate(const DirichletSeries& d, std::span<const Complex> omega);

struct WeakL1Result {
  double value = 0.0;
  /// True when `value` is a certified lower bound rather than exact (d > 1).
  bool lower_bound = false;
};

/// w((a_n)) = sup over the unit ball of the dual of Σ_n |x*(a_n)|. Exact for
/// d = 1; for d > 1 a lower bound from random dual functionals, coordinate
/// functionals and alternating sign-alignment ascent.
WeakL1Result weak_l1_norm(const DirichletSeries& d, std::size_t n_dual_samples,
                          std::uint64_t seed);

}  // namespace gendir
