#include "gendir/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gendir/error.hpp"
#include "gendir/parallel.hpp"
#include "gendir/strip.hpp"

namespace gendir {
namespace {

constexpr std::size_t kChunk = 4096;

Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const double re = g(rng);
  const double im = g(rng);
  return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

Complex steinhaus(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, u(rng));
}

double sup_norm(const DirichletSeries& d, const SupConfig& cfg) {
  return sup_on_line(d, 0.0, cfg).value;
}

void fill_summary(VerificationReport& report, const std::vector<double>& ratios) {
  report.samples = ratios.size();
  if (ratios.empty()) return;
  report.max_ratio = *std::max_element(ratios.begin(), ratios.end());
  report.min_ratio = *std::min_element(ratios.begin(), ratios.end());
  double sum = 0.0;
  for (double r : ratios) sum += r;
  report.mean_ratio = sum / static_cast<double>(ratios.size());
  report.quantiles = quantile_table(ratios);
  report.empirical_constant = report.max_ratio;
}

// Evaluates ratio(N, index) for every (length, sample) pair and fills the
// order statistics and per-length summaries.
template <typename Ratio>
std::vector<double> run_ensemble(const RandomPolyConfig& cfg, VerificationReport& report,
                                 Ratio&& ratio) {
  const std::size_t per = cfg.samples;
  const std::size_t total = per * cfg.lengths.size();
  std::vector<double> ratios(total);
  parallel_for(total, cfg.threads, [&](std::size_t item) {
    const std::size_t N = cfg.lengths[item / per];
    ratios[item] = ratio(N, item % per);
  });
  report.per_length.clear();
  for (std::size_t l = 0; l < cfg.lengths.size(); ++l) {
    LengthSummary s;
    s.length = cfg.lengths[l];
    s.samples = per;
    double sum = 0.0;
    for (std::size_t i = 0; i < per; ++i) {
      const double r = ratios[l * per + i];
      s.max_ratio = std::max(s.max_ratio, r);
      sum += r;
    }
    s.mean_ratio = sum / static_cast<double>(per);
    report.per_length.push_back(s);
  }
  fill_summary(report, ratios);
  report.seed = cfg.seed;
  report.ceiling = cfg.ceiling;
  return ratios;
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

NormConfig serial(NormConfig cfg) {
  cfg.threads = 1;
  return cfg;
}

// Sums of a, b, a², b², ab over one Monte Carlo chunk.
struct Moments {
  double a = 0, b = 0, aa = 0, bb = 0, ab = 0;
  std::size_t n = 0;

  void add(double x, double y) {
    a += x;
    b += y;
    aa += x * x;
    bb += y * y;
    ab += x * y;
    ++n;
  }
  void merge(const Moments& o) {
    a += o.a;
    b += o.b;
    aa += o.aa;
    bb += o.bb;
    ab += o.ab;
    n += o.n;
  }
};

struct Covariance {
  double mean_a, mean_b, var_a, var_b, cov;
};

Covariance covariance(const Moments& m) {
  const double n = static_cast<double>(m.n);
  Covariance c{m.a / n, m.b / n, 0.0, 0.0, 0.0};
  if (m.n > 1) {
    c.var_a = std::max(0.0, (m.aa - n * c.mean_a * c.mean_a) / (n - 1));
    c.var_b = std::max(0.0, (m.bb - n * c.mean_b * c.mean_b) / (n - 1));
    c.cov = (m.ab - n * c.mean_a * c.mean_b) / (n - 1);
  }
  return c;
}

void check_moment_args(double p, std::size_t N, std::size_t mc, const MomentConfig& cfg) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("p must lie in [1, inf)");
  if (N == 0) throw ParameterError("N must be >= 1");
  if (mc < 2) throw ParameterError("need at least 2 Monte Carlo samples");
  if (cfg.draws == 0) throw ParameterError("need at least one coefficient draw");
}

std::vector<Complex> coefficient_draw(const CoefficientSpace& space, std::size_t N,
                                      std::uint64_t seed, std::size_t draw, std::uint64_t salt) {
  auto rng = stream_rng(seed, draw, salt);
  std::vector<Complex> x(N * space.dimension());
  for (auto& v : x) v = gaussian(rng);
  return x;
}

// Runs `sample(rng, moments)` mc times per draw, chunked by kChunk with one
// generator per (draw, chunk), and merges chunks in order.
template <typename Sample>
std::vector<Moments> monte_carlo(std::size_t draws, std::size_t mc, std::uint64_t seed,
                                 std::uint64_t salt, unsigned threads, Sample&& sample) {
  const std::size_t chunks = (mc + kChunk - 1) / kChunk;
  std::vector<Moments> parts(draws * chunks);
  parallel_for(parts.size(), threads, [&](std::size_t item) {
    const std::size_t draw = item / chunks;
    const std::size_t chunk = item % chunks;
    auto rng = stream_rng(seed, (static_cast<std::uint64_t>(draw) << 32) | chunk, salt);
    const std::size_t count = std::min(kChunk, mc - chunk * kChunk);
    for (std::size_t i = 0; i < count; ++i) sample(draw, rng, parts[item]);
  });
  std::vector<Moments> out(draws);
  for (std::size_t d = 0; d < draws; ++d) {
    for (std::size_t c = 0; c < chunks; ++c) out[d].merge(parts[d * chunks + c]);
  }
  return out;
}

}  // namespace

std::string_view to_string(Ensemble e) {
  switch (e) {
    case Ensemble::gaussian: return "gaussian";
    case Ensemble::unimodular: return "unimodular";
    case Ensemble::ones: return "ones";
  }
  return "unknown";
}

Ensemble parse_ensemble(std::string_view text) {
  if (text == "gaussian") return Ensemble::gaussian;
  if (text == "unimodular") return Ensemble::unimodular;
  if (text == "ones") return Ensemble::ones;
  throw ParameterError("unknown ensemble '" + std::string(text) + "'");
}

void RandomPolyConfig::validate() const {
  if (lengths.empty()) throw ParameterError("ensemble needs at least one length");
  for (std::size_t N : lengths) {
    if (N == 0) throw ParameterError("ensemble lengths must be >= 1");
  }
  if (samples == 0) throw ParameterError("ensemble needs at least one sample");
  if (!(max_growth > 0.0)) throw ParameterError("max_growth must be > 0");
  norm.validate();
  sup.validate();
}

DirichletSeries random_polynomial(const RandomPolyConfig& cfg, std::size_t N, std::size_t index) {
  const std::size_t dim = cfg.space.dimension();
  std::vector<Complex> c(N * dim);
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto rng = stream_rng(cfg.seed, (static_cast<std::uint64_t>(N) << 32) ^ index,
                          0x52 + (attempt << 8));
    bool nonzero = false;
    for (auto& v : c) {
      switch (cfg.ensemble) {
        case Ensemble::gaussian: v = gaussian(rng); break;
        case Ensemble::unimodular: v = steinhaus(rng); break;
        case Ensemble::ones: v = 1.0; break;
      }
      nonzero = nonzero || v != Complex(0.0);
    }
    if (nonzero) break;
  }
  return DirichletSeries(cfg.frequency, cfg.space, std::move(c));
}

std::vector<std::pair<double, double>> quantile_table(std::vector<double> ratios) {
  static constexpr double kLevels[] = {0.0, 0.05, 0.25, 0.5, 0.75, 0.95, 1.0};
  std::vector<std::pair<double, double>> out;
  if (ratios.empty()) return out;
  std::sort(ratios.begin(), ratios.end());
  const double last = static_cast<double>(ratios.size() - 1);
  for (double q : kLevels) {
    const double pos = q * last;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, ratios.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    out.emplace_back(q, ratios[lo] + frac * (ratios[hi] - ratios[lo]));
  }
  return out;
}

VerificationReport verify_coefficient_sum(const RandomPolyConfig& cfg, double sigma, double p) {
  cfg.validate();
  if (!(p >= 1.0)) throw ParameterError("p must lie in [1, inf]");
  if (!std::isfinite(sigma)) throw ParameterError("sigma must be finite");
  VerificationReport report;
  report.inequality_name = "coefficient_sum";

  try {
    std::size_t n_max = cfg.strip_n_max;
    if (auto len = cfg.frequency.known_length()) n_max = std::min(n_max, *len);
    const double L = strip_L(cfg.frequency, n_max).value;
    const double S = strip_S_cotype(L, cfg.space.cotype());
    report.notes.push_back("strip width estimate " + std::to_string(S));
    if (!(sigma > S)) report.status = "exploratory";
  } catch (const Error& e) {
    report.status = "exploratory";
    report.notes.push_back(std::string("strip width unavailable: ") + e.what());
  }

  NormConfig norm = serial(cfg.norm);
  norm.p = p;
  const auto ratios = run_ensemble(cfg, report, [&](std::size_t N, std::size_t i) {
    const auto d = random_polynomial(cfg, N, i);
    double num = 0.0;
    for (std::size_t n = 1; n <= N; ++n) num += d.coefficient_norm(n) * std::exp(-d.lambda(n) * sigma);
    const double den = std::isinf(p) ? sup_norm(d, cfg.sup) : hardy_norm(d, norm).value;
    return num / den;
  });
  report.pass = all_finite(ratios) && report.max_ratio <= cfg.ceiling;
  return report;
}

VerificationReport verify_quantitative_bohr(const RandomPolyConfig& cfg, double k) {
  cfg.validate();
  if (!(k > 0.0 && k <= 1.0)) throw ParameterError("k must lie in (0, 1]");
  VerificationReport report;
  report.inequality_name = "quantitative_bohr";
  const auto ratios = run_ensemble(cfg, report, [&](std::size_t N, std::size_t i) {
    const auto d = random_polynomial(cfg, N + 1, i);
    const double lN = d.lambda(N);
    const double lN1 = d.lambda(N + 1);
    const double factor = std::pow(lN1 / (lN1 - lN), k) / k;
    const double lhs = sup_norm(partial_sum(d, N), cfg.sup);
    return lhs / (factor * sup_norm(d, cfg.sup));
  });
  const double first = report.per_length.front().max_ratio;
  const double last = report.per_length.back().max_ratio;
  report.pass = all_finite(ratios) && report.max_ratio <= cfg.ceiling &&
                last <= cfg.max_growth * first;
  return report;
}

VerificationReport verify_bt_inequality(const RandomPolyConfig& cfg, double sigma) {
  cfg.validate();
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ParameterError("sigma must be > 0");
  VerificationReport report;
  report.inequality_name = "bt_inequality";
  const auto ratios = run_ensemble(cfg, report, [&](std::size_t M, std::size_t i) {
    const auto d = random_polynomial(cfg, M, i);
    double lhs = 0.0;
    for (std::size_t N = 1; N < M; ++N) lhs = std::max(lhs, sup_norm(partial_sum(d, N), cfg.sup));
    const double full = sup_norm(d, cfg.sup);
    lhs = std::max(lhs, full);
    return lhs / (std::exp(d.lambda(M) * sigma) * full);
  });
  report.pass = all_finite(ratios) && report.max_ratio <= cfg.ceiling;
  return report;
}

VerificationReport kahane_khintchine_ratio(const CoefficientSpace& space, double p,
                                           std::size_t N, std::size_t mc, std::uint64_t seed,
                                           const MomentConfig& cfg) {
  check_moment_args(p, N, mc, cfg);
  const std::size_t dim = space.dimension();
  std::vector<std::vector<Complex>> x(cfg.draws);
  for (std::size_t j = 0; j < cfg.draws; ++j) x[j] = coefficient_draw(space, N, seed, j, 0x4b);

  const auto moments = monte_carlo(
      cfg.draws, mc, seed, 0x4c, cfg.threads,
      [&](std::size_t draw, std::mt19937_64& rng, Moments& m) {
        std::vector<Complex> sum(dim, Complex(0.0));
        for (std::size_t n = 0; n < N; ++n) {
          const Complex z = steinhaus(rng);
          for (std::size_t j = 0; j < dim; ++j) sum[j] += x[draw][n * dim + j] * z;
        }
        const double s = space.norm(sum);
        m.add(std::pow(s, p), s * s);
      });

  VerificationReport report;
  report.inequality_name = "kahane_khintchine";
  report.seed = seed;
  std::vector<double> ratios(cfg.draws);
  double worst_se = 0.0;
  for (std::size_t j = 0; j < cfg.draws; ++j) {
    const auto c = covariance(moments[j]);
    const double A = c.mean_a, B = c.mean_b;
    ratios[j] = std::pow(A, 1.0 / p) / std::sqrt(B);
    const double var_log = (c.var_a / (p * p * A * A) - c.cov / (p * A * B) +
                            c.var_b / (4.0 * B * B)) /
                           static_cast<double>(moments[j].n);
    worst_se = std::max(worst_se, ratios[j] * std::sqrt(std::max(0.0, var_log)));
  }
  fill_summary(report, ratios);
  report.samples = mc;
  report.standard_error = worst_se;
  report.ceiling = cfg.upper;
  report.pass = report.min_ratio >= cfg.lower && report.max_ratio <= cfg.upper;
  return report;
}

VerificationReport levy_maximal_check(const CoefficientSpace& space, double p, std::size_t N,
                                      std::size_t mc, std::uint64_t seed,
                                      const MomentConfig& cfg) {
  check_moment_args(p, N, mc, cfg);
  const std::size_t dim = space.dimension();
  std::vector<std::vector<Complex>> x(cfg.draws);
  for (std::size_t j = 0; j < cfg.draws; ++j) x[j] = coefficient_draw(space, N, seed, j, 0x4d);

  const auto moments = monte_carlo(
      cfg.draws, mc, seed, 0x4e, cfg.threads,
      [&](std::size_t draw, std::mt19937_64& rng, Moments& m) {
        std::vector<Complex> sum(dim, Complex(0.0));
        double max_prefix = 0.0;
        double s = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
          const Complex z = steinhaus(rng);
          for (std::size_t j = 0; j < dim; ++j) sum[j] += x[draw][n * dim + j] * z;
          s = space.norm(sum);
          max_prefix = std::max(max_prefix, s);
        }
        m.add(std::pow(max_prefix, p), std::pow(s, p));
      });

  VerificationReport report;
  report.inequality_name = "levy_maximal";
  report.seed = seed;
  std::vector<double> ratios(cfg.draws), errors(cfg.draws);
  for (std::size_t j = 0; j < cfg.draws; ++j) {
    const auto c = covariance(moments[j]);
    const double A = c.mean_a, B = c.mean_b;
    const double q = A / B;
    ratios[j] = std::pow(q, 1.0 / p);
    const double var_q = (c.var_a / (B * B) - 2.0 * A * c.cov / (B * B * B) +
                          A * A * c.var_b / (B * B * B * B)) /
                         static_cast<double>(moments[j].n);
    errors[j] = ratios[j] / (p * q) * std::sqrt(std::max(0.0, var_q));
  }
  fill_summary(report, ratios);
  const auto worst = static_cast<std::size_t>(
      std::max_element(ratios.begin(), ratios.end()) - ratios.begin());
  report.samples = mc;
  report.standard_error = errors[worst];
  report.ceiling = 2.0 + 3.0 * report.standard_error;
  report.pass = report.min_ratio >= 1.0 && report.max_ratio <= report.ceiling;
  report.notes.push_back("independent Steinhaus model of a Q-independent frequency");
  return report;
}

}  // namespace gendir
