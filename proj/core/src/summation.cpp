#include "gendir/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gendir/error.hpp"

namespace gendir {

void RieszParams::validate() const {
  if (!(k >= 0.0) || !std::isfinite(k)) throw ParameterError("Riesz order k must be >= 0");
  if (!(x > 0.0)) throw ParameterError("Riesz length x must be > 0");
}

double riesz_weight(double lambda, double k, double x) {
  if (!(lambda < x)) return 0.0;
  if (k == 0.0) return 1.0;
  const double base = 1.0 - lambda / x;
  if (k == 1.0) return base;
  return std::pow(base, k);
}

DirichletSeries riesz_mean(const DirichletSeries& d, const RieszParams& p) {
  p.validate();
  if (std::isinf(p.x)) return d;
  std::vector<Complex> c = d.coefficients();
  const std::size_t dim = d.dimension();
  for (std::size_t n = 1; n <= d.length(); ++n) {
    const double w = riesz_weight(d.lambda(n), p.k, p.x);
    for (std::size_t j = 0; j < dim; ++j) c[(n - 1) * dim + j] *= w;
  }
  return d.with_coefficients(std::move(c));
}

std::vector<CoefficientVector> riesz_limit_scan(const DirichletSeries& d, double k, Point s,
                                                std::span<const double> x_grid) {
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] > 0.0)) throw ParameterError("Riesz lengths must be positive");
    if (i > 0 && !(x_grid[i] > x_grid[i - 1])) {
      throw ParameterError("x grid must be strictly increasing");
    }
  }
  std::vector<CoefficientVector> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) out.push_back(evaluate(riesz_mean(d, {k, x}), s));
  return out;
}

PlusNormResult plus_norm(const DirichletSeries& d, double k, double p,
                         const PlusNormConfig& cfg) {
  if (!(k > 0.0)) throw ParameterError("plus_norm needs k > 0");
  if (!(p >= 1.0)) throw ParameterError("plus_norm needs p in [1, inf]");

  // Breakpoints (positive, distinct) where the active set changes.
  std::vector<double> breaks;
  for (double lam : d.lambdas()) {
    if (lam > 0.0) breaks.push_back(lam);
  }
  std::vector<double> grid;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const double lo = i == 0 ? 0.0 : breaks[i - 1];
    const double hi = breaks[i];
    for (int j = 1; j <= cfg.interior; ++j) {
      const double x = lo + (hi - lo) * j / (cfg.interior + 1);
      if (x > 0.0) grid.push_back(x);
    }
    grid.push_back(hi);
  }
  const double last = breaks.empty() ? 1.0 : breaks.back();
  for (int j = 1; j <= cfg.per_decade; ++j) {
    grid.push_back(last * std::pow(10.0, static_cast<double>(j) / cfg.per_decade));
  }
  grid.push_back(std::numeric_limits<double>::infinity());

  NormConfig norm_cfg = cfg.norm;
  norm_cfg.p = p;
  auto norm_of = [&](const DirichletSeries& r) {
    if (std::isinf(p)) return sup_on_line(r, 0.0, cfg.sup).value;
    return hardy_norm(r, norm_cfg).value;
  };

  PlusNormResult res;
  res.grid_size = grid.size();
  double coarse = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double v = norm_of(riesz_mean(d, {k, x}));
    if (v > res.value) {
      res.value = v;
      res.argmax_x = x;
    }
    // The limit node belongs to both grids.
    if (i % 2 == 0 || i + 1 == grid.size()) coarse = std::max(coarse, v);
  }
  res.grid_delta = res.value - coarse;
  return res;
}

}  // namespace gendir
