#pragma once

// Bohr–Cahen estimators for the abscissas σ_c, σ_u, σ_a of Riesz-summed
// truncation families.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "gendir/estimate.hpp"
#include "gendir/norms.hpp"
#include "gendir/series.hpp"

namespace gendir {

/// An infinite series given by a deterministic coefficient rule; the
/// estimators only ever look at its truncations.
struct SeriesFamily {
  Frequency frequency;
  CoefficientSpace space;
  /// Writes a_n (1-based) into `out`, which has space.dimension() entries.
  std::function<void(std::size_t n, std::span<Complex> out)> rule;
  std::string label;

  DirichletSeries truncate(std::size_t n_max) const;
};

/// a_n = 1.
SeriesFamily unit_family(Frequency f);
/// a_n = (-1)^n.
SeriesFamily alternating_family(Frequency f);
/// a_n = n^{-exponent}.
SeriesFamily power_family(Frequency f, double exponent);
/// a_1 = value, a_n = 0 for n > 1.
SeriesFamily single_term_family(Frequency f, Complex value);

struct EstimatorConfig {
  double tail_fraction = 0.5;
  /// Estimates at or below this value cannot certify the nonnegativity
  /// needed for equality and are flagged `upper_bound_only`.
  double zero_tolerance = 0.1;
  unsigned threads = 1;
};

/// limsup_x log‖Σ_{λ_n<x} a_n (1-λ_n/x)^k‖ / x, sampled at the midpoints
/// x = (λ_n + λ_{n+1})/2, n < n_max.
AbscissaEstimate sigma_c_estimate(const SeriesFamily& family, double k, std::size_t n_max,
                                  const EstimatorConfig& cfg = {});

/// limsup_x log(Σ_{λ_n<x} ‖a_n‖ (1-λ_n/x)^k) / x.
AbscissaEstimate sigma_a_estimate(const SeriesFamily& family, double k, std::size_t n_max,
                                  const EstimatorConfig& cfg = {});

/// limsup_x log(sup_t ‖R_x^{λ,k}(D)(it)‖) / x with the line sup from
/// sup_on_line. Costs one sup estimate per midpoint.
AbscissaEstimate sigma_u_estimate(const SeriesFamily& family, double k, std::size_t n_max,
                                  const SupConfig& sup_cfg = {},
                                  const EstimatorConfig& cfg = {});

}  // namespace gendir
