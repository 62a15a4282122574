#pragma once

// Randomized verification harnesses: ratio statistics of inequalities over
// seeded ensembles of random Dirichlet polynomials, plus Monte Carlo checks
// of Steinhaus moment inequalities.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gendir/frequency.hpp"
#include "gendir/norms.hpp"
#include "gendir/series.hpp"

namespace gendir {

enum class Ensemble { gaussian, unimodular, ones };

std::string_view to_string(Ensemble e);
Ensemble parse_ensemble(std::string_view text);

struct RandomPolyConfig {
  Frequency frequency = make_log_frequency();
  CoefficientSpace space{};
  std::vector<std::size_t> lengths{4, 8, 16, 32, 64};
  /// Samples per length.
  std::size_t samples = 200;
  Ensemble ensemble = Ensemble::gaussian;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Pass threshold for the maximal ratio.
  double ceiling = std::numeric_limits<double>::infinity();
  /// Allowed growth of the per-length maximum from the shortest to the
  /// longest length (quantitative Bohr stability).
  double max_growth = 2.0;
  NormConfig norm{};
  SupConfig sup{};
  /// Prefix used to estimate L(λ) when labeling a run exploratory.
  std::size_t strip_n_max = 10000;

  void validate() const;
};

/// Random polynomial number `index` of length N: entries are standard
/// complex Gaussians, uniform unit complex numbers, or ones. Depends only on
/// (cfg.seed, N, index, ensemble, frequency, space).
DirichletSeries random_polynomial(const RandomPolyConfig& cfg, std::size_t N, std::size_t index);

struct LengthSummary {
  std::size_t length = 0;
  std::size_t samples = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
};

struct VerificationReport {
  std::string inequality_name;
  std::size_t samples = 0;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  double mean_ratio = 0.0;
  /// (level, value) pairs at levels 0, 0.05, 0.25, 0.5, 0.75, 0.95, 1.
  std::vector<std::pair<double, double>> quantiles;
  double empirical_constant = 0.0;
  std::uint64_t seed = 0;
  bool pass = false;
  double ceiling = std::numeric_limits<double>::infinity();
  /// "verified", or "exploratory" when run outside the range where the
  /// inequality is known to hold.
  std::string status = "verified";
  /// Monte Carlo standard error of the reported maximal ratio (0 if n/a).
  double standard_error = 0.0;
  std::vector<LengthSummary> per_length;
  std::vector<std::string> notes;
};

/// Order statistics of `ratios` at the standard report levels.
std::vector<std::pair<double, double>> quantile_table(std::vector<double> ratios);

/// Σ‖a_n‖e^{-λ_n σ} / ‖D‖_p (p = +inf uses sup_on_line at σ = 0).
/// Exploratory when σ <= L(λ)(1 - 1/cot X).
VerificationReport verify_coefficient_sum(const RandomPolyConfig& cfg, double sigma, double p);

/// ‖S_N D‖_∞ / [(1/k)(λ_{N+1}/(λ_{N+1}-λ_N))^k ‖D‖_∞] for polynomials of
/// length N+1, N in cfg.lengths. Passes when every ratio is finite, the
/// maximum is below the ceiling and the per-length maximum at the longest
/// length is within max_growth of the shortest.
VerificationReport verify_quantitative_bohr(const RandomPolyConfig& cfg, double k);

/// max_{N<=M} ‖S_N D‖_∞ / (e^{λ_M σ} ‖D‖_∞) for polynomials of length M in
/// cfg.lengths.
VerificationReport verify_bt_inequality(const RandomPolyConfig& cfg, double sigma);

struct MomentConfig {
  /// Independent coefficient draws (x_1..x_N); each gets its own estimate.
  std::size_t draws = 8;
  double lower = 0.5;
  double upper = 1.0;
  unsigned threads = 1;
};

/// ‖Σ x_n z_n‖_{L_p} / ‖Σ x_n z_n‖_{L_2} over Steinhaus z_n, for Gaussian
/// coefficient draws x_n ∈ X. Passes when every ratio lies in
/// [lower, upper].
VerificationReport kahane_khintchine_ratio(const CoefficientSpace& space, double p,
                                           std::size_t N, std::size_t mc, std::uint64_t seed,
                                           const MomentConfig& cfg = {});

/// ‖max_{M<=N} ‖Σ_{n<=M} x_n z_n‖‖_{L_p} / ‖‖Σ_{n<=N} x_n z_n‖‖_{L_p} over
/// Steinhaus z_n. Passes when the maximal ratio is at most 2 plus three
/// standard errors.
VerificationReport levy_maximal_check(const CoefficientSpace& space, double p, std::size_t N,
                                      std::size_t mc, std::uint64_t seed,
                                      const MomentConfig& cfg = {});

}  // namespace gendir
