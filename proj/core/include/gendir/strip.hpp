#pragma once

// Bohr strip widths S(λ, X) = sup (σ_a - σ_u) over X-valued λ-series.

namespace gendir {

/// S(λ, ℓ_r) from L = L(λ): L/2 for 1 <= r <= 2 and L(1 - 1/r) for
/// 2 <= r <= ∞ (r = +inf gives L). Throws ParameterError for r < 1 or L < 0.
double strip_S_formula(double L, double r);

struct StripResult {
  double value = 0.0;
  /// Set when the cotype formula is applied outside the type 2 setting where
  /// it is known to hold.
  bool conjectured = false;
};

/// L(1 - 1/cotype); cotype = +inf gives L. Throws ParameterError for
/// cotype < 2 or L < 0.
double strip_S_cotype(double L, double cotype);

/// strip_S_cotype with a label: the value is an established width only when
/// the space has type 2 (`type2`), otherwise it is marked conjectured.
StripResult strip_S_cotype(double L, double cotype, bool type2);

}  // namespace gendir
