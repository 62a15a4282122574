#include "gendir/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <random>

#include "gendir/error.hpp"
#include "gendir/parallel.hpp"

namespace gendir {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kResyncInterval = 256;
constexpr std::size_t kMcChunk = 4096;

// Nonzero terms of D with coefficients c_n = a_n e^{-λ_n σ}, split into
// real and imaginary parts for the hot loops.
struct Terms {
  std::size_t dim = 1;
  CoefficientSpace space;
  std::vector<double> lambda;
  std::vector<std::size_t> index;  // 1-based series index
  std::vector<double> cr, ci;      // row-major, dim per term

  std::size_t size() const { return lambda.size(); }
  double spread() const { return lambda.empty() ? 0.0 : lambda.back() - lambda.front(); }
};

Terms collect_terms(const DirichletSeries& d, double sigma) {
  Terms t;
  t.dim = d.dimension();
  t.space = d.space();
  for (std::size_t n = 1; n <= d.length(); ++n) {
    const auto a = d.coefficient(n);
    if (std::all_of(a.begin(), a.end(), [](Complex z) { return z == Complex(0.0); })) continue;
    const double w = sigma == 0.0 ? 1.0 : std::exp(-sigma * d.lambda(n));
    t.lambda.push_back(d.lambda(n));
    t.index.push_back(n);
    for (const auto& z : a) {
      t.cr.push_back(w * z.real());
      t.ci.push_back(w * z.imag());
    }
  }
  return t;
}

double min_gap(const Terms& t) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < t.size(); ++i) g = std::min(g, t.lambda[i] - t.lambda[i - 1]);
  return g;
}

// Evaluates ‖Σ c_n e^{-iλ_n t}‖ at arbitrary t.
class LineFunction {
 public:
  explicit LineFunction(const Terms& terms) : t_(terms), re_(terms.dim), im_(terms.dim) {}

  double norm_at(double t) {
    std::fill(re_.begin(), re_.end(), 0.0);
    std::fill(im_.begin(), im_.end(), 0.0);
    const std::size_t d = t_.dim;
    for (std::size_t n = 0; n < t_.size(); ++n) {
      const double ang = -t_.lambda[n] * t;
      const double c = std::cos(ang), s = std::sin(ang);
      for (std::size_t k = 0; k < d; ++k) {
        const double ar = t_.cr[n * d + k], ai = t_.ci[n * d + k];
        re_[k] += ar * c - ai * s;
        im_[k] += ar * s + ai * c;
      }
    }
    return vector_norm();
  }

  double vector_norm() {
    if (t_.dim == 1) return std::hypot(re_[0], im_[0]);
    buf_.resize(t_.dim);
    for (std::size_t k = 0; k < t_.dim; ++k) buf_[k] = Complex(re_[k], im_[k]);
    return t_.space.norm(buf_);
  }

  std::vector<double>& re() { return re_; }
  std::vector<double>& im() { return im_; }

 private:
  const Terms& t_;
  std::vector<double> re_, im_;
  std::vector<Complex> buf_;
};

// Calls fn(j, t_j, ‖f(t_j)‖) for t_j = t0 + j h, j < count, advancing the
// phases by recurrence with periodic exact resynchronization.
template <typename Fn>
void sample_line(const Terms& terms, double t0, double h, std::size_t count, Fn&& fn) {
  const std::size_t N = terms.size();
  const std::size_t d = terms.dim;
  std::vector<double> zr(N), zi(N), sr(N), si(N);
  for (std::size_t n = 0; n < N; ++n) {
    sr[n] = std::cos(-terms.lambda[n] * h);
    si[n] = std::sin(-terms.lambda[n] * h);
  }
  LineFunction f(terms);
  auto& re = f.re();
  auto& im = f.im();
  for (std::size_t j = 0; j < count; ++j) {
    const double t = t0 + static_cast<double>(j) * h;
    if (j % kResyncInterval == 0) {
      for (std::size_t n = 0; n < N; ++n) {
        zr[n] = std::cos(-terms.lambda[n] * t);
        zi[n] = std::sin(-terms.lambda[n] * t);
      }
    }
    if (d == 1) {
      double vr = 0.0, vi = 0.0;
      for (std::size_t n = 0; n < N; ++n) {
        vr += terms.cr[n] * zr[n] - terms.ci[n] * zi[n];
        vi += terms.cr[n] * zi[n] + terms.ci[n] * zr[n];
      }
      re[0] = vr;
      im[0] = vi;
    } else {
      std::fill(re.begin(), re.end(), 0.0);
      std::fill(im.begin(), im.end(), 0.0);
      for (std::size_t n = 0; n < N; ++n) {
        for (std::size_t k = 0; k < d; ++k) {
          const double ar = terms.cr[n * d + k], ai = terms.ci[n * d + k];
          re[k] += ar * zr[n] - ai * zi[n];
          im[k] += ar * zi[n] + ai * zr[n];
        }
      }
    }
    fn(j, t, f.vector_norm());
    for (std::size_t n = 0; n < N; ++n) {
      const double r = zr[n] * sr[n] - zi[n] * si[n];
      zi[n] = zr[n] * si[n] + zi[n] * sr[n];
      zr[n] = r;
    }
  }
}

// Beat periods of the closest pair that a trusted time average must span.
constexpr double kMinBeats = 10.0;

// exp(-1/(1-u^2)) on |u| < 1.
double bump(double u) {
  const double v = 1.0 - u * u;
  return v > 0.0 ? std::exp(-1.0 / v) : 0.0;
}

double coefficient_norm(const Terms& t, std::size_t n) {
  std::vector<Complex> a(t.dim);
  for (std::size_t k = 0; k < t.dim; ++k) a[k] = Complex(t.cr[n * t.dim + k], t.ci[n * t.dim + k]);
  return t.space.norm(a);
}

NormEstimate time_average(const Terms& terms, const NormConfig& cfg) {
  NormEstimate est;
  est.method = NormMethod::time_average;
  if (terms.size() == 0) return est;
  if (terms.size() == 1) {
    est.value = coefficient_norm(terms, 0);
    est.horizon_values = {est.value, est.value, est.value};
    return est;
  }
  const double T = cfg.T_max;
  // The golden factor keeps the node spacing away from rational multiples of
  // the beat periods; |D|^p is not band-limited for p != 2 and commensurate
  // sampling aliases its harmonics into the mean.
  constexpr double kGolden = 0.6180339887498949;
  const double h_target = kGolden * std::numbers::pi / (cfg.oversampling * terms.spread());
  const auto count = std::max<std::size_t>(
      cfg.quadrature_points, static_cast<std::size_t>(std::ceil(2.0 * T / h_target)));
  const double h = 2.0 * T / static_cast<double>(count);
  const std::array<double, 3> horizons{T / 4.0, T / 2.0, T};
  std::array<long double, 3> num{}, den{};
  const double p = cfg.p;
  sample_line(terms, -T, h, count + 1, [&](std::size_t, double t, double norm) {
    const double g = p == 2.0 ? norm * norm : (p == 1.0 ? norm : std::pow(norm, p));
    for (std::size_t l = 0; l < 3; ++l) {
      const double w = bump(t / horizons[l]);
      if (w == 0.0) continue;
      num[l] += static_cast<long double>(w) * g;
      den[l] += w;
    }
  });
  for (std::size_t l = 0; l < 3; ++l) {
    est.horizon_values[l] = std::pow(static_cast<double>(num[l] / den[l]), 1.0 / p);
  }
  est.value = est.horizon_values[2];
  est.delta = est.value > 0 ? std::abs(est.horizon_values[2] - est.horizon_values[1]) / est.value
                            : std::abs(est.horizon_values[2] - est.horizon_values[1]);
  // Horizons too short to separate the closest frequencies agree with each
  // other without having converged.
  est.flagged = est.delta >= cfg.flag_tolerance || min_gap(terms) * T < kMinBeats * 2.0 * std::numbers::pi;
  return est;
}

// Exponent matrix of the torus lift: column count `width`, one row per term.
struct TorusLift {
  std::size_t width = 0;
  std::vector<int> exponents;  // row-major, size() * width
};

std::optional<TorusLift> torus_lift(const DirichletSeries& d, const Terms& terms) {
  TorusLift lift;
  const auto* dec = d.frequency().decomposition();
  if (dec && dec->integral()) {
    std::vector<BohrRow> rows;
    rows.reserve(terms.size());
    const std::size_t n_max = terms.index.empty() ? 0 : terms.index.back();
    const auto all = dec->rows(n_max);
    for (auto n : terms.index) {
      rows.push_back(all[n - 1]);
      lift.width = std::max(lift.width, rows.back().size());
    }
    lift.width = std::max<std::size_t>(lift.width, 1);
    lift.exponents.assign(terms.size() * lift.width, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t k = 0; k < rows[i].size(); ++k) {
        const auto e = rows[i][k].num();
        if (e > std::numeric_limits<int>::max() || e < std::numeric_limits<int>::min()) {
          throw UnsupportedError("Bohr matrix exponent too large for a torus lift");
        }
        lift.exponents[i * lift.width + k] = static_cast<int>(e);
      }
    }
    return lift;
  }
  if (d.frequency().q_independent()) {
    lift.width = terms.size();
    lift.exponents.assign(terms.size() * lift.width, 0);
    for (std::size_t i = 0; i < terms.size(); ++i) lift.exponents[i * lift.width + i] = 1;
    return lift;
  }
  return std::nullopt;
}

// ‖Σ c_n e^{i <e_n, θ>}‖ on the torus.
double torus_norm(const Terms& terms, const TorusLift& lift, std::span<const double> theta,
                  LineFunction& f) {
  auto& re = f.re();
  auto& im = f.im();
  std::fill(re.begin(), re.end(), 0.0);
  std::fill(im.begin(), im.end(), 0.0);
  const std::size_t d = terms.dim;
  for (std::size_t n = 0; n < terms.size(); ++n) {
    double ang = 0.0;
    for (std::size_t k = 0; k < lift.width; ++k) {
      const int e = lift.exponents[n * lift.width + k];
      if (e != 0) ang += e * theta[k];
    }
    const double c = std::cos(ang), s = std::sin(ang);
    for (std::size_t k = 0; k < d; ++k) {
      const double ar = terms.cr[n * d + k], ai = terms.ci[n * d + k];
      re[k] += ar * c - ai * s;
      im[k] += ar * s + ai * c;
    }
  }
  return f.vector_norm();
}

NormEstimate torus_monte_carlo(const DirichletSeries& d, const Terms& terms,
                               const NormConfig& cfg) {
  const auto lift = torus_lift(d, terms);
  if (!lift) {
    throw UnsupportedError("torus_mc needs an integral Bohr decomposition or a declared "
                           "Q-independent frequency");
  }
  NormEstimate est;
  est.method = NormMethod::torus_mc;
  if (terms.size() == 0) return est;
  const std::size_t chunks = (cfg.mc_samples + kMcChunk - 1) / kMcChunk;
  std::vector<long double> sum(chunks, 0.0L), sum_sq(chunks, 0.0L);
  parallel_for(chunks, cfg.threads, [&](std::size_t c) {
    auto rng = stream_rng(cfg.seed, c, 0x70);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::vector<double> theta(lift->width);
    LineFunction f(terms);
    const std::size_t begin = c * kMcChunk;
    const std::size_t end = std::min(cfg.mc_samples, begin + kMcChunk);
    for (std::size_t i = begin; i < end; ++i) {
      for (auto& th : theta) th = angle(rng);
      const double norm = torus_norm(terms, *lift, theta, f);
      const double g = cfg.p == 2.0 ? norm * norm : std::pow(norm, cfg.p);
      sum[c] += g;
      sum_sq[c] += static_cast<long double>(g) * g;
    }
  });
  long double s = 0.0L, s2 = 0.0L;
  for (std::size_t c = 0; c < chunks; ++c) {
    s += sum[c];
    s2 += sum_sq[c];
  }
  const auto n = static_cast<long double>(cfg.mc_samples);
  const double mean = static_cast<double>(s / n);
  const double var = std::max(0.0, static_cast<double>(s2 / n - (s / n) * (s / n)));
  const double se_mean = std::sqrt(var / static_cast<double>(n));
  est.value = std::pow(mean, 1.0 / cfg.p);
  est.delta = mean > 0 ? est.value * se_mean / (cfg.p * mean) : 0.0;
  return est;
}

// Maximizes θ ↦ ‖Σ c_n e^{i<e_n,θ>}‖ by cyclic coordinate ascent. Along one
// coordinate the function is Σ_e G_e e^{ieφ} with G_e grouped by exponent.
double torus_sup(const Terms& terms, const TorusLift& lift, const SupConfig& cfg) {
  const std::size_t m = lift.width;
  const std::size_t d = terms.dim;
  LineFunction f(terms);
  double best_overall = 0.0;

  for (int start = 0; start < std::max(cfg.multistarts, 1); ++start) {
    std::vector<double> theta(m, 0.0);
    if (start > 0) {
      auto rng = stream_rng(cfg.seed, static_cast<std::uint64_t>(start), 0x5u);
      std::uniform_real_distribution<double> angle(0.0, kTwoPi);
      for (auto& th : theta) th = angle(rng);
    }
    double current = torus_norm(terms, lift, theta, f);
    for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
      const double before = current;
      for (std::size_t k = 0; k < m; ++k) {
        // Group terms by their exponent in coordinate k.
        std::vector<int> exps;
        std::vector<double> gr, gi;
        for (std::size_t n = 0; n < terms.size(); ++n) {
          double ang = 0.0;
          for (std::size_t q = 0; q < m; ++q) {
            const int e = lift.exponents[n * m + q];
            if (q != k && e != 0) ang += e * theta[q];
          }
          const int ek = lift.exponents[n * m + k];
          auto it = std::find(exps.begin(), exps.end(), ek);
          std::size_t g = static_cast<std::size_t>(it - exps.begin());
          if (it == exps.end()) {
            exps.push_back(ek);
            gr.resize(gr.size() + d, 0.0);
            gi.resize(gi.size() + d, 0.0);
          }
          const double c = std::cos(ang), s = std::sin(ang);
          for (std::size_t j = 0; j < d; ++j) {
            const double ar = terms.cr[n * d + j], ai = terms.ci[n * d + j];
            gr[g * d + j] += ar * c - ai * s;
            gi[g * d + j] += ar * s + ai * c;
          }
        }
        if (exps.size() == 1) continue;  // norm is constant in this coordinate
        auto& re = f.re();
        auto& im = f.im();
        auto along = [&](double phi) {
          std::fill(re.begin(), re.end(), 0.0);
          std::fill(im.begin(), im.end(), 0.0);
          for (std::size_t g = 0; g < exps.size(); ++g) {
            const double c = std::cos(exps[g] * phi), s = std::sin(exps[g] * phi);
            for (std::size_t j = 0; j < d; ++j) {
              re[j] += gr[g * d + j] * c - gi[g * d + j] * s;
              im[j] += gr[g * d + j] * s + gi[g * d + j] * c;
            }
          }
          return f.vector_norm();
        };
        int max_exp = 1;
        for (int e : exps) max_exp = std::max(max_exp, std::abs(e));
        const int grid = std::clamp(8 * max_exp, 32, 4096);
        const double step = kTwoPi / grid;
        double best_phi = theta[k];
        double best_val = along(theta[k]);
        for (int i = 0; i < grid; ++i) {
          const double phi = theta[k] + step * i;
          const double v = along(phi);
          if (v > best_val) {
            best_val = v;
            best_phi = phi;
          }
        }
        // Golden-section refinement around the best node.
        double lo = best_phi - step, hi = best_phi + step;
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
        double f1 = along(x1), f2 = along(x2);
        for (int it = 0; it < 40; ++it) {
          if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = along(x2);
          } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = along(x1);
          }
        }
        if (f1 > best_val) {
          best_val = f1;
          best_phi = x1;
        }
        if (f2 > best_val) {
          best_val = f2;
          best_phi = x2;
        }
        theta[k] = std::fmod(best_phi, kTwoPi);
        current = best_val;
      }
      if (current <= before * (1.0 + 1e-13)) break;
    }
    // Re-evaluate at the final point so the reported value is attained.
    best_overall = std::max(best_overall, torus_norm(terms, lift, theta, f));
  }
  return best_overall;
}

struct Candidate {
  double value;
  std::size_t j;
  bool operator>(const Candidate& o) const { return value > o.value; }
};

}  // namespace

std::string_view to_string(NormMethod method) {
  switch (method) {
    case NormMethod::time_average: return "time_average";
    case NormMethod::parseval: return "parseval";
    case NormMethod::torus_mc: return "torus_mc";
  }
  return "unknown";
}

NormMethod parse_norm_method(std::string_view text) {
  if (text == "time_average") return NormMethod::time_average;
  if (text == "parseval") return NormMethod::parseval;
  if (text == "torus_mc") return NormMethod::torus_mc;
  throw ParameterError("unknown norm method '" + std::string(text) + "'");
}

void NormConfig::validate() const {
  if (!(p >= 1.0)) throw ParameterError("norm exponent p must lie in [1, inf]");
  if (!(T_max > 0.0)) throw ParameterError("T_max must be positive");
  if (quadrature_points < 64) throw ParameterError("quadrature_points must be >= 64");
  if (!(oversampling > 0.0)) throw ParameterError("oversampling must be positive");
  if (method == NormMethod::torus_mc && mc_samples == 0) {
    throw ParameterError("torus_mc needs mc_samples >= 1");
  }
}

void SupConfig::validate() const {
  if (t_range < 0.0) throw ParameterError("t_range must be nonnegative");
  if (grid_points != 0 && grid_points < 256) throw ParameterError("grid_points must be >= 256");
}

bool has_torus_lift(const DirichletSeries& d) {
  const auto* dec = d.frequency().decomposition();
  return (dec && dec->integral()) || d.frequency().q_independent();
}

NormEstimate hardy_norm(const DirichletSeries& d, const NormConfig& cfg) {
  cfg.validate();
  if (std::isinf(cfg.p)) {
    throw ParameterError("p = inf is a sup norm; use sup_on_line");
  }
  const Terms terms = collect_terms(d, 0.0);
  switch (cfg.method) {
    case NormMethod::parseval: {
      if (cfg.p != 2.0) throw ParameterError("the parseval method requires p = 2");
      if (d.dimension() > 1 && d.space().norm_exponent() != 2.0) {
        throw UnsupportedError("the parseval identity needs Hilbert coefficients (d = 1 or r = 2)");
      }
      long double s = 0.0L;
      for (std::size_t n = 0; n < terms.size(); ++n) {
        const double a = coefficient_norm(terms, n);
        s += static_cast<long double>(a) * a;
      }
      NormEstimate est;
      est.method = NormMethod::parseval;
      est.value = std::sqrt(static_cast<double>(s));
      est.horizon_values = {est.value, est.value, est.value};
      return est;
    }
    case NormMethod::time_average: return time_average(terms, cfg);
    case NormMethod::torus_mc: return torus_monte_carlo(d, terms, cfg);
  }
  throw ParameterError("unknown norm method");
}

SupEstimate sup_on_line(const DirichletSeries& d, double sigma, const SupConfig& cfg) {
  if (!(sigma >= 0.0)) throw ParameterError("sup_on_line needs sigma >= 0");
  cfg.validate();
  const Terms terms = collect_terms(d, sigma);
  SupEstimate est;
  est.torus_value = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t n = 0; n < terms.size(); ++n) est.ceiling += coefficient_norm(terms, n);
  if (terms.size() == 0) return est;

  LineFunction f(terms);
  est.lower_bound = f.norm_at(0.0);
  est.t_at_max = 0.0;

  const auto lift = cfg.torus_lift ? torus_lift(d, terms) : std::nullopt;
  if (terms.size() > 1 && (cfg.line_search || !lift)) {
    double t_range = cfg.t_range;
    if (t_range == 0.0) t_range = std::min(1e3 * kTwoPi / min_gap(terms), 1e6);
    std::size_t points = cfg.grid_points;
    if (points == 0) {
      const double per_period = 4.0;
      points = static_cast<std::size_t>(std::ceil(t_range * terms.spread() * per_period / kTwoPi));
      points = std::clamp<std::size_t>(points, 256, cfg.max_grid_points);
    }
    const double h = t_range / static_cast<double>(points - 1);

    // Keep the best `refine_cells` local maxima of the grid.
    std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> top;
    double prev2 = -1.0, prev1 = -1.0;
    auto offer = [&](double value, std::size_t j) {
      if (top.size() < cfg.refine_cells) {
        top.push({value, j});
      } else if (!top.empty() && value > top.top().value) {
        top.pop();
        top.push({value, j});
      }
    };
    sample_line(terms, 0.0, h, points, [&](std::size_t j, double t, double v) {
      if (v > est.lower_bound) {
        est.lower_bound = v;
        est.t_at_max = t;
      }
      if (j >= 2 && prev1 >= prev2 && prev1 >= v) offer(prev1, j - 1);
      prev2 = prev1;
      prev1 = v;
    });
    if (prev1 >= prev2) offer(prev1, points - 1);

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    while (!top.empty()) {
      const auto cand = top.top();
      top.pop();
      const double center = static_cast<double>(cand.j) * h;
      double lo = std::max(0.0, center - h), hi = std::min(t_range, center + h);
      double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
      double f1 = f.norm_at(x1), f2 = f.norm_at(x2);
      for (int it = 0; it < cfg.refine_iters; ++it) {
        if (f1 < f2) {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + inv_phi * (hi - lo);
          f2 = f.norm_at(x2);
        } else {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - inv_phi * (hi - lo);
          f1 = f.norm_at(x1);
        }
      }
      for (auto [x, v] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
        if (v > est.lower_bound) {
          est.lower_bound = v;
          est.t_at_max = x;
        }
      }
    }
  }
  est.value = est.lower_bound;
  if (lift) {
    est.used_torus = true;
    est.torus_value = terms.size() == 1 ? est.lower_bound : torus_sup(terms, *lift, cfg);
    est.value = std::max(est.value, est.torus_value);
  }
  return est;
}

}  // namespace gendir
