#include "gendir/strip.hpp"

#include <cmath>

#include "gendir/error.hpp"

namespace gendir {
namespace {

void check_L(double L) {
  if (!(L >= 0.0)) throw ParameterError("L must be >= 0");
}

}  // namespace

double strip_S_formula(double L, double r) {
  check_L(L);
  if (!(r >= 1.0)) throw ParameterError("r must lie in [1, inf]");
  if (r <= 2.0) return L / 2.0;
  if (std::isinf(r)) return L;
  return L * (1.0 - 1.0 / r);
}

double strip_S_cotype(double L, double cotype) {
  check_L(L);
  if (!(cotype >= 2.0)) throw ParameterError("cotype must be >= 2");
  if (std::isinf(cotype)) return L;
  return L * (1.0 - 1.0 / cotype);
}

StripResult strip_S_cotype(double L, double cotype, bool type2) {
  return {strip_S_cotype(L, cotype), !type2};
}

}  // namespace gendir
