#pragma once

// Frequencies λ = (λ_n): strictly increasing nonnegative reals indexing a
// general Dirichlet series Σ a_n e^{-λ_n s}. Indices are 1-based throughout.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gendir/estimate.hpp"
#include "gendir/rational.hpp"

namespace gendir {

/// One row of a Bohr matrix: λ_n = Σ_k row[k] b_k, trailing zeros trimmed.
using BohrRow = std::vector<Rational>;

/// Exact rational decomposition λ_n = Σ_k q^n_k b_k over a basis (b_k).
///
/// Three kinds exist: the prime-logarithm basis of (log n) (rows are prime
/// exponent vectors, basis unbounded), the single-element basis (1) used
/// for integer frequencies, and an explicit user-supplied matrix.
class BohrDecomposition {
 public:
  enum class Kind { prime_logarithms, integer_multiples, explicit_matrix };

  static BohrDecomposition prime_logarithms();
  /// Basis (scale); row n is the integer λ_n / scale. Used for λ_n = n.
  static BohrDecomposition integer_multiples(double scale = 1.0);
  static BohrDecomposition explicit_matrix(std::vector<double> basis,
                                           std::vector<BohrRow> rows);

  Kind kind() const noexcept { return kind_; }

  /// Number of basis elements, or nullopt when the basis is unbounded.
  std::optional<std::size_t> basis_length() const;
  /// First `count` basis elements. Throws ParameterError past basis_length().
  std::vector<double> basis(std::size_t count) const;

  /// Row n (1-based). Explicit matrices throw ParameterError past their rows.
  BohrRow row(std::size_t n) const;
  /// Rows 1..n_max, computed in bulk.
  std::vector<BohrRow> rows(std::size_t n_max) const;
  /// Number of materialized rows for explicit matrices, nullopt otherwise.
  std::optional<std::size_t> row_count() const;

  /// True when every row entry is an integer (characters are then products
  /// of integer powers of the basis characters).
  bool integral() const;

  /// Σ_k row[k] b_k.
  double reconstruct(const BohrRow& row) const;

 private:
  Kind kind_ = Kind::prime_logarithms;
  double scale_ = 1.0;
  std::shared_ptr<const std::vector<double>> basis_;
  std::shared_ptr<const std::vector<BohrRow>> rows_;
};

/// Immutable frequency handle. Copies share the underlying generator.
class Frequency {
 public:
  using Generator = std::function<double(std::size_t)>;

  /// Lazily generated frequency. Monotonicity is checked when a prefix is
  /// materialized, not at construction.
  static Frequency from_generator(std::string label, Generator generator,
                                  std::optional<std::size_t> known_length = std::nullopt);
  /// Finite explicit frequency; throws ValidationError naming the first index
  /// violating λ_1 >= 0 or strict increase.
  static Frequency from_values(std::string label, std::vector<double> values);

  /// Returns a copy carrying `decomposition`. Reconstruction is checked on the
  /// materialized values of explicit frequencies.
  Frequency with_decomposition(BohrDecomposition decomposition) const;
  Frequency with_q_independence(bool independent = true) const;

  const std::string& label() const noexcept { return label_; }
  std::optional<std::size_t> known_length() const noexcept { return known_length_; }
  bool is_explicit() const noexcept { return explicit_values_ != nullptr; }
  bool q_independent() const noexcept { return q_independent_; }
  const BohrDecomposition* decomposition() const noexcept {
    return decomposition_ ? &*decomposition_ : nullptr;
  }
  /// Explicit values, empty for generated frequencies.
  const std::vector<double>& explicit_values() const;

  /// λ_n for 1-based n, without monotonicity validation.
  double value(std::size_t n) const;
  /// λ_1..λ_{n_max}, validated. Throws ValidationError, or ParameterError when
  /// n_max exceeds a known finite length.
  std::vector<double> prefix(std::size_t n_max) const;

 private:
  std::string label_;
  Generator generator_;
  std::optional<std::size_t> known_length_;
  std::shared_ptr<const std::vector<double>> explicit_values_;
  std::optional<BohrDecomposition> decomposition_;
  bool q_independent_ = false;
};

// Built-in families.

/// λ_n = log n with exact decomposition over (log p_j).
Frequency make_log_frequency();
/// λ_n = n with decomposition over the basis (1).
Frequency make_linear_frequency();
/// λ_n = sqrt(log n): satisfies Landau's condition but not Bohr's.
Frequency make_sqrt_log_frequency();
/// λ_n = log log(n + 2), for which L(λ) = ∞.
Frequency make_log_log_frequency();
/// λ_n = q^n for q > 1.
Frequency make_lacunary_frequency(double q);
/// λ_n = log p_n for the first `count` primes, declared ℚ-linearly independent.
Frequency make_log_prime_frequency(std::size_t count);
/// λ_n = n + u_n with u_n ∈ [0, 1/2) drawn from a counter-based hash of
/// (seed, n); declared ℚ-linearly independent.
Frequency make_q_independent_sample(std::uint64_t seed);

/// The first `count` primes.
std::vector<std::uint64_t> first_primes(std::size_t count);

/// (λ_{n+1} - λ_n) for n = 1..n_max-1. Throws ValidationError on a
/// non-increasing prefix, ParameterError for n_max < 2.
std::vector<double> gaps(const Frequency& f, std::size_t n_max);

/// Finite-prefix evidence for the gap conditions of Bohr and Landau.
struct ConditionWitness {
  bool holds_on_prefix = false;
  std::size_t prefix_length = 0;
  /// min_n of the normalized gap; may overflow to +inf.
  double infimum_statistic = 0.0;
  /// log of infimum_statistic, finite even when the statistic overflows.
  double log_infimum = 0.0;
  std::size_t argmin_index = 0;
  /// Least-squares slope of log-statistic against log n over the tail.
  double trend = 0.0;
};

struct ConditionConfig {
  double floor = 1e-12;
  double trend_threshold = -1e-3;
  double tail_fraction = 0.5;
};

/// Bohr's condition statistic (λ_{n+1} - λ_n) e^{(l+δ)λ_n}.
ConditionWitness check_bc(const Frequency& f, double l, double delta, std::size_t n_max,
                          const ConditionConfig& cfg = {});
/// Landau's condition statistic (λ_{n+1} - λ_n) e^{e^{δλ_n}}.
ConditionWitness check_lc(const Frequency& f, double delta, std::size_t n_max,
                          const ConditionConfig& cfg = {});

struct StripConfig {
  double tail_fraction = 0.5;
};

/// L(λ) = limsup log(N)/λ_N estimated by a tail maximum. Throws
/// UndefinedError when every λ_N on the prefix is zero.
AbscissaEstimate strip_L(const Frequency& f, std::size_t n_max, const StripConfig& cfg = {});

/// Entry n-1 is true iff row n uses only the first N basis elements. N past
/// a finite basis length keeps every row.
std::vector<bool> abschnitt_mask(const BohrDecomposition& dec, std::size_t N,
                                 std::size_t n_max);

}  // namespace gendir
