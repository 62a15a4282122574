#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gendir {

enum class AbscissaKind { convergence, uniform, absolute, strip_width };

std::string_view to_string(AbscissaKind kind);

/// One sample (x, log(numerator(x)) / x) of a Bohr–Cahen quotient sequence.
struct QuotientPoint {
  double x = 0.0;
  double quotient = 0.0;
};

/// A limsup read off a finite quotient sequence.
struct AbscissaEstimate {
  /// Tail maximum of the quotients; may be -inf when every numerator vanishes.
  double value = 0.0;
  AbscissaKind kind = AbscissaKind::convergence;
  double riesz_order = 0.0;
  std::size_t prefix_length = 0;
  std::vector<QuotientPoint> quotients;
  /// The nonnegativity condition for equality could not be certified, so
  /// `value` is only an upper bound for the abscissa.
  bool upper_bound_only = false;
  /// False when the quotients are still increasing at the end of the prefix.
  bool converged = true;
};

/// Maximum of the last `fraction` of `quotients` (at least one entry).
/// Returns the index of the maximizer through `argmax` when non-null.
double tail_max(std::span<const QuotientPoint> quotients, double fraction,
                std::size_t* argmax = nullptr);

/// True when the tail maximum sits at the final sample and exceeds the
/// first tail value by more than `rel_tol` (relative).
bool still_increasing(std::span<const QuotientPoint> quotients, double fraction,
                      double rel_tol = 1e-3);

}  // namespace gendir
