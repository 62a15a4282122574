#pragma once

// Riesz summation: R_x^{λ,k}(D) = Σ_{λ_n < x} a_n (1 - λ_n/x)^k e^{-λ_n s}.

#include <cstddef>
#include <span>
#include <vector>

#include "gendir/norms.hpp"
#include "gendir/series.hpp"

namespace gendir {

struct RieszParams {
  double k = 1.0;  ///< order, k >= 0
  double x = 1.0;  ///< length, x > 0

  void validate() const;
};

/// (1 - λ/x)^k for λ < x and 0 otherwise; k = 0 is the sharp cutoff.
double riesz_weight(double lambda, double k, double x);

/// The Riesz mean as a Dirichlet polynomial of the same length.
DirichletSeries riesz_mean(const DirichletSeries& d, const RieszParams& p);

/// riesz_mean(D, (k, x)) evaluated at s for every x of a strictly increasing
/// grid of positive lengths.
std::vector<CoefficientVector> riesz_limit_scan(const DirichletSeries& d, double k, Point s,
                                                std::span<const double> x_grid);

struct PlusNormConfig {
  NormConfig norm;
  SupConfig sup;
  /// Geometric nodes per decade on [λ_last, 10 λ_last].
  int per_decade = 32;
  /// Interior nodes between consecutive breakpoints.
  int interior = 3;
};

struct PlusNormResult {
  double value = 0.0;
  /// value minus the maximum over every other grid node; >= 0.
  double grid_delta = 0.0;
  /// Maximizing length; +inf when the x → ∞ limit (D itself) wins.
  double argmax_x = 0.0;
  std::size_t grid_size = 0;
};

/// M_{k,p}(D) = sup_{x>0} ‖R_x^{λ,k}(D)‖_p over the breakpoints λ_n, interior
/// points between them, a geometric tail up to 10 λ_last and the limit x → ∞.
/// p = ∞ uses sup_on_line at σ = 0; finite p uses hardy_norm with cfg.norm.
PlusNormResult plus_norm(const DirichletSeries& d, double k, double p,
                         const PlusNormConfig& cfg = {});

}  // namespace gendir
