#pragma once

// Norm estimators for Dirichlet polynomials: the Besicovitch/Hardy norms
// ‖D‖_p (long-run time averages of ‖D(it)‖^p) and the sup norm on a
// vertical line.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "gendir/series.hpp"

namespace gendir {

enum class NormMethod { time_average, parseval, torus_mc };

std::string_view to_string(NormMethod method);
/// Parses "time_average", "parseval" or "torus_mc"; throws ParameterError.
NormMethod parse_norm_method(std::string_view text);

struct NormConfig {
  double p = 2.0;
  /// Longest averaging horizon; means are also taken at T_max/4 and T_max/2.
  double T_max = 1e4;
  /// Minimum number of quadrature nodes on [-T_max, T_max].
  std::size_t quadrature_points = 4096;
  NormMethod method = NormMethod::time_average;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 0;
  /// Nodes per Nyquist interval of the widest frequency difference.
  double oversampling = 2.0;
  /// Relative horizon-to-horizon change above which a time average is flagged.
  double flag_tolerance = 1e-3;
  unsigned threads = 1;

  void validate() const;
};

struct NormEstimate {
  double value = 0.0;
  /// time_average: relative change between the T_max/2 and T_max means.
  /// torus_mc: standard error of `value`. parseval: 0.
  double delta = 0.0;
  NormMethod method = NormMethod::time_average;
  /// Set when a time average has not stabilized to `flag_tolerance`, or when
  /// T_max spans fewer than ten beat periods of the closest frequency pair.
  bool flagged = false;
  /// Means at T_max/4, T_max/2, T_max (time_average only).
  std::array<double, 3> horizon_values{};
};

/// ‖D‖_p for 1 <= p < ∞.
///
/// time_average integrates ‖Σ a_n e^{-iλ_n t}‖^p against a smooth compactly
/// supported window on [-T, T] (a Bochner–Fejér type mean, which has the
/// same limit as the flat mean on [-T, T] for almost periodic functions but
/// suppresses the O(1/T) oscillation of cross terms). parseval returns
/// (Σ‖a_n‖²)^{1/2} and requires p = 2 and
/// Hilbert coefficients (d = 1 or r = 2). torus_mc averages over the compact
/// group through the Bohr lift (integral decompositions such as (log n)) or
/// over independent circles for declared ℚ-independent frequencies.
///
/// Throws ParameterError for p = ∞ (use sup_on_line) and UnsupportedError
/// when torus_mc has no lift.
NormEstimate hardy_norm(const DirichletSeries& d, const NormConfig& cfg);

struct SupConfig {
  /// Window [0, t_range]; 0 selects 10^3 · 2π / (min gap), capped at 10^6.
  double t_range = 0.0;
  /// Grid nodes; 0 selects about four nodes per period of the widest
  /// frequency difference, at least 256.
  std::size_t grid_points = 0;
  std::size_t max_grid_points = std::size_t{1} << 22;
  /// Golden-section iterations per refined grid cell.
  int refine_iters = 60;
  std::size_t refine_cells = 8;
  std::uint64_t seed = 0;
  /// Also maximize over the torus when the frequency admits a lift.
  bool torus_lift = true;
  /// Run the line grid; may be disabled when a torus lift is available.
  bool line_search = true;
  int multistarts = 16;
  int sweeps = 25;

  void validate() const;
};

struct SupEstimate {
  /// Largest ‖D(σ + it)‖ found on the line, attained at t_at_max.
  double lower_bound = 0.0;
  /// Best estimate of the sup: max(lower_bound, torus_value).
  double value = 0.0;
  double t_at_max = 0.0;
  /// Torus multistart maximum, NaN when no lift was used.
  double torus_value = 0.0;
  bool used_torus = false;
  /// Σ‖a_n‖ e^{-λ_n σ}, the triangle-inequality ceiling.
  double ceiling = 0.0;
};

/// sup_t ‖D(σ + it)‖ for σ >= 0. For polynomials this is also the sup over
/// the half-plane [Re > σ].
SupEstimate sup_on_line(const DirichletSeries& d, double sigma, const SupConfig& cfg = {});

/// True when the frequency of `d` admits a torus lift (integral Bohr
/// decomposition or declared ℚ-independence).
bool has_torus_lift(const DirichletSeries& d);

}  // namespace gendir
