#include "gendir/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gendir/error.hpp"

namespace gendir {

std::string_view to_string(AbscissaKind kind) {
  switch (kind) {
    case AbscissaKind::convergence: return "convergence";
    case AbscissaKind::uniform: return "uniform";
    case AbscissaKind::absolute: return "absolute";
    case AbscissaKind::strip_width: return "strip_width";
  }
  return "unknown";
}

namespace {

std::size_t tail_begin(std::size_t size, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ParameterError("tail fraction must lie in (0, 1]");
  }
  const auto len = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(size)));
  return size - std::clamp<std::size_t>(len, 1, size);
}

}  // namespace

double tail_max(std::span<const QuotientPoint> quotients, double fraction,
                std::size_t* argmax) {
  if (quotients.empty()) throw ParameterError("empty quotient sequence");
  const std::size_t begin = tail_begin(quotients.size(), fraction);
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_index = begin;
  for (std::size_t i = begin; i < quotients.size(); ++i) {
    if (quotients[i].quotient > best) {
      best = quotients[i].quotient;
      best_index = i;
    }
  }
  if (argmax) *argmax = best_index;
  return best;
}

bool still_increasing(std::span<const QuotientPoint> quotients, double fraction,
                      double rel_tol) {
  std::size_t argmax = 0;
  const double best = tail_max(quotients, fraction, &argmax);
  if (argmax + 1 != quotients.size() || !std::isfinite(best)) return false;
  const double first = quotients[tail_begin(quotients.size(), fraction)].quotient;
  if (!std::isfinite(first)) return true;
  return best - first > rel_tol * std::max(std::abs(best), 1e-300);
}

}  // namespace gendir
