#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <spdlog/spdlog.h>

#include <gendir/abscissa.hpp>
#include <gendir/error.hpp>
#include <gendir/parallel.hpp>
#include <gendir/strip.hpp>
#include <gendir/summation.hpp>
#include <gendir/verification.hpp>

namespace gendir::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Frequency resolve_frequency(const Options& o) {
  if (!o.frequency_file.empty()) {
    spdlog::debug("loading frequency from {}", o.frequency_file);
    return load_frequency(o.frequency_file);
  }
  return builtin_frequency(o.builtin.empty() ? "log_n" : o.builtin);
}

DirichletSeries resolve_series(const Options& o) {
  if (o.series.empty()) throw ParameterError("--series is required");
  if (std::filesystem::exists(o.series)) {
    spdlog::debug("loading series from {}", o.series);
    return load_series(o.series);
  }
  try {
    return builtin_series(o.series);
  } catch (const ParameterError&) {
    if (o.series.find('/') != std::string::npos || o.series.ends_with(".json")) {
      throw Error("cannot open '" + o.series + "'");
    }
    throw;
  }
}

std::string frequency_name(const Options& o) {
  if (!o.frequency_file.empty()) return o.frequency_file;
  return o.builtin.empty() ? "log_n" : o.builtin;
}

SeriesFamily resolve_family(const Options& o, Frequency f) {
  const auto colon = o.family.find(':');
  const std::string head = o.family.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : o.family.substr(colon + 1);
  if (head == "unit" && arg.empty()) return unit_family(std::move(f));
  if (head == "alternating" && arg.empty()) return alternating_family(std::move(f));
  if (head == "power") {
    return power_family(std::move(f), arg.empty() ? 2.0 : parse_extended_real(arg, "--family"));
  }
  if (head == "single") {
    return single_term_family(std::move(f), arg.empty() ? 1.0 : parse_extended_real(arg, "--family"));
  }
  throw ParameterError("unknown family '" + o.family + "' (unit, alternating, power[:e], single[:a])");
}

SupConfig sup_config(const Options& o) {
  SupConfig cfg;
  cfg.t_range = o.t_range;
  cfg.grid_points = o.grid_points;
  cfg.multistarts = o.multistarts;
  cfg.seed = o.seed.value_or(0);
  cfg.validate();
  return cfg;
}

Json sup_config_json(const SupConfig& cfg) {
  return {{"t_range", cfg.t_range},
          {"grid_points", cfg.grid_points},
          {"multistarts", cfg.multistarts},
          {"seed", cfg.seed}};
}

Json vector_json(const CoefficientVector& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(Json::array({c.real(), c.imag()}));
  return out;
}

CoefficientSpace resolve_space(const Options& o) {
  return CoefficientSpace(o.dim, parse_extended_real(o.space_r, "--r"));
}

double difference_norm(const CoefficientSpace& space, const CoefficientVector& a,
                       const CoefficientVector& b) {
  CoefficientVector d(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) d[j] = a[j] - b[j];
  return space.norm(d);
}

}  // namespace

double parse_extended_real(const std::string& text, const std::string& flag) {
  if (text == "inf" || text == "infinity") return kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParameterError("invalid value '" + text + "' for " + flag);
}

Json freq_report(const Options& o) {
  const Frequency f = resolve_frequency(o);
  const std::size_t n_max = o.n_max ? o.n_max : 10000;
  spdlog::info("freq-report on {} with n_max {}", f.label(), n_max);

  Json result;
  const auto L = strip_L(f, n_max);
  result["L_estimate"] = real_to_json(L.value);
  result["L_converged"] = L.converged;

  Json bc = Json::array();
  bool bc_holds = false;
  for (double l : {0.5, 1.0, 2.0}) {
    bool all = true;
    for (double delta : {0.05, 0.1, 0.2}) {
      const auto w = check_bc(f, l, delta, n_max);
      all = all && w.holds_on_prefix;
      Json entry = {{"l", l}, {"delta", delta}};
      entry.update(to_json(w));
      bc.push_back(std::move(entry));
    }
    bc_holds = bc_holds || all;
  }
  Json lc = Json::array();
  bool lc_holds = false;
  for (double delta : {0.25, 0.5, 1.0}) {
    const auto w = check_lc(f, delta, n_max);
    lc_holds = lc_holds || w.holds_on_prefix;
    Json entry = {{"delta", delta}};
    entry.update(to_json(w));
    lc.push_back(std::move(entry));
  }
  result["bc_holds"] = bc_holds;
  result["lc_holds"] = lc_holds;
  result["bc_witness"] = std::move(bc);
  result["lc_witness"] = std::move(lc);

  const auto g = gaps(f, n_max);
  const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
  double sum = 0.0;
  for (double x : g) sum += x;
  result["gap_stats"] = {{"count", g.size()},
                         {"min", *lo},
                         {"argmin_index", static_cast<std::size_t>(lo - g.begin()) + 1},
                         {"max", *hi},
                         {"mean", sum / static_cast<double>(g.size())},
                         {"last", g.back()}};

  return {{"config", {{"frequency", frequency_name(o)}, {"n_max", n_max}}},
          {"result", std::move(result)}};
}

Json abscissa(const Options& o) {
  const std::size_t n_max = o.n_max ? o.n_max : 1000;
  const double k = o.k.value_or(0.0);
  const auto family = resolve_family(o, resolve_frequency(o));
  EstimatorConfig cfg;
  cfg.threads = o.threads;
  spdlog::info("abscissa kind {} k {} n_max {}", o.kind, k, n_max);

  Json config = {{"frequency", frequency_name(o)},
                 {"family", o.family},
                 {"kind", o.kind},
                 {"k", k},
                 {"n_max", n_max},
                 {"tail_fraction", cfg.tail_fraction},
                 {"zero_tolerance", cfg.zero_tolerance}};
  AbscissaEstimate est;
  if (o.kind == "c") {
    est = sigma_c_estimate(family, k, n_max, cfg);
  } else if (o.kind == "a") {
    est = sigma_a_estimate(family, k, n_max, cfg);
  } else if (o.kind == "u") {
    const auto sup = sup_config(o);
    config["sup"] = sup_config_json(sup);
    est = sigma_u_estimate(family, k, n_max, sup, cfg);
  } else {
    throw ParameterError("--kind must be one of c, u, a");
  }
  Json result = to_json(est);
  if (!o.full) {
    result.erase("quotients");
    result["quotient_count"] = est.quotients.size();
  }
  return {{"config", std::move(config)}, {"result", std::move(result)}};
}

Json riesz_sum(const Options& o) {
  const auto d = resolve_series(o);
  const double k = o.k.value_or(1.0);
  const Point s{o.sigma.value_or(0.0), o.t};
  std::vector<double> grid = o.x;
  if (grid.empty()) {
    const double last = d.lambdas().back();
    if (!(last > 0.0)) throw ParameterError("--x is required when every frequency is zero");
    grid = {2.0 * last, 4.0 * last, 8.0 * last};
  }
  const auto values = riesz_limit_scan(d, k, s, grid);
  const auto full = evaluate(d, s);

  Json scan = Json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    scan.push_back({{"x", grid[i]},
                    {"value", vector_json(values[i])},
                    {"deviation", difference_norm(d.space(), values[i], full)}});
  }
  Json config = {{"series", o.series}, {"k", k}, {"sigma", s.sigma}, {"t", s.t}, {"x", grid}};
  Json result = {{"value", vector_json(full)}, {"scan", std::move(scan)}};
  return {{"config", std::move(config)}, {"result", std::move(result)}};
}

Json norms(const Options& o) {
  const auto d = resolve_series(o);
  const double p = parse_extended_real(o.p, "--p");
  Json config = {{"series", o.series}, {"p", real_to_json(p)}};
  Json result;

  if (std::isinf(p)) {
    if (!o.method.empty() && o.method != "sup") {
      throw ParameterError("p = inf requires the line sup; method '" + o.method + "' applies to finite p");
    }
    const double sigma = o.sigma.value_or(0.0);
    const auto sup = sup_config(o);
    config["method"] = "sup";
    config["sigma"] = sigma;
    config["sup"] = sup_config_json(sup);
    result["norm"] = to_json(sup_on_line(d, sigma, sup));
  } else {
    if (o.method == "sup") throw ParameterError("method 'sup' requires --p inf");
    NormConfig cfg;
    cfg.p = p;
    cfg.T_max = o.T_max;
    cfg.quadrature_points = o.quadrature_points;
    cfg.method = o.method.empty() ? NormMethod::time_average : parse_norm_method(o.method);
    cfg.mc_samples = o.mc;
    cfg.seed = o.seed.value_or(0);
    cfg.threads = o.threads;
    cfg.validate();
    config["method"] = to_string(cfg.method);
    config["T_max"] = cfg.T_max;
    config["quadrature_points"] = cfg.quadrature_points;
    config["mc"] = cfg.mc_samples;
    config["seed"] = cfg.seed;
    result["norm"] = to_json(hardy_norm(d, cfg));
  }

  if (o.plus) {
    const double k = o.k.value_or(1.0);
    PlusNormConfig cfg;
    cfg.norm.T_max = o.T_max;
    cfg.norm.quadrature_points = o.quadrature_points;
    cfg.norm.threads = o.threads;
    if (!o.method.empty() && o.method != "sup") cfg.norm.method = parse_norm_method(o.method);
    cfg.sup = sup_config(o);
    config["plus_k"] = k;
    result["plus_norm"] = to_json(plus_norm(d, k, p, cfg));
  }
  return {{"config", std::move(config)}, {"result", std::move(result)}};
}

Json strip(const Options& o) {
  Json config;
  Json result;
  double L = 0.0;
  if (o.L) {
    L = *o.L;
    config["L"] = L;
  } else {
    const std::size_t n_max = o.n_max ? o.n_max : 10000;
    const auto est = strip_L(resolve_frequency(o), n_max);
    L = est.value;
    config["frequency"] = frequency_name(o);
    config["n_max"] = n_max;
    result["L_estimate"] = L;
  }
  if (!o.r && !o.cotype) throw ParameterError("strip needs --r or --cotype");
  if (o.r) {
    const double r = parse_extended_real(*o.r, "--r");
    config["r"] = real_to_json(r);
    result["S_formula"] = real_to_json(strip_S_formula(L, r));
  }
  if (o.cotype) {
    config["cotype"] = real_to_json(*o.cotype);
    config["type2"] = o.type2;
    const auto s = strip_S_cotype(L, *o.cotype, o.type2);
    result["S_cotype"] = {{"value", real_to_json(s.value)}, {"conjectured", s.conjectured}};
  }
  return {{"config", std::move(config)}, {"result", std::move(result)}};
}

Json verify(const Options& o) {
  if (!o.seed) throw ParameterError("verify requires --seed");
  const auto space = resolve_space(o);
  const unsigned threads = resolve_threads(o.threads);
  Json config = {{"name", o.name},
                 {"seed", *o.seed},
                 {"threads", threads},
                 {"dim", space.dimension()},
                 {"r", real_to_json(space.norm_exponent())}};
  VerificationReport report;

  if (o.name == "kahane" || o.name == "levy") {
    const double p = parse_extended_real(o.p, "--p");
    MomentConfig cfg;
    cfg.draws = o.draws;
    cfg.threads = threads;
    config["p"] = real_to_json(p);
    config["N"] = o.N;
    config["mc"] = o.mc;
    config["draws"] = cfg.draws;
    report = o.name == "kahane" ? kahane_khintchine_ratio(space, p, o.N, o.mc, *o.seed, cfg)
                                : levy_maximal_check(space, p, o.N, o.mc, *o.seed, cfg);
  } else {
    RandomPolyConfig cfg;
    cfg.frequency = resolve_frequency(o);
    cfg.space = space;
    cfg.seed = *o.seed;
    cfg.threads = threads;
    cfg.ensemble = parse_ensemble(o.ensemble);
    cfg.sup = sup_config(o);
    cfg.norm.T_max = o.T_max;
    cfg.norm.quadrature_points = o.quadrature_points;
    cfg.norm.mc_samples = o.mc;
    cfg.norm.seed = *o.seed;
    if (!o.method.empty() && o.method != "sup") cfg.norm.method = parse_norm_method(o.method);
    if (o.ceiling) cfg.ceiling = *o.ceiling;
    if (!o.lengths.empty()) {
      cfg.lengths = o.lengths;
    } else if (o.name != "coefficient-sum") {
      cfg.lengths = {4, 8, 16, 32};
    }
    cfg.samples = o.samples ? o.samples : (o.name == "bt" ? 20 : 200);
    config["frequency"] = frequency_name(o);
    config["ensemble"] = to_string(cfg.ensemble);
    config["lengths"] = cfg.lengths;
    config["samples"] = cfg.samples;
    config["ceiling"] = real_to_json(cfg.ceiling);
    config["sup"] = sup_config_json(cfg.sup);

    if (o.name == "coefficient-sum") {
      const double sigma = o.sigma.value_or(0.6);
      const double p = parse_extended_real(o.p, "--p");
      config["sigma"] = sigma;
      config["p"] = real_to_json(p);
      config["method"] = to_string(cfg.norm.method);
      config["T_max"] = cfg.norm.T_max;
      report = verify_coefficient_sum(cfg, sigma, p);
    } else if (o.name == "quantitative-bohr") {
      const double k = o.k.value_or(1.0);
      config["k"] = k;
      config["max_growth"] = cfg.max_growth;
      report = verify_quantitative_bohr(cfg, k);
    } else if (o.name == "bt") {
      const double sigma = o.sigma.value_or(0.5);
      config["sigma"] = sigma;
      report = verify_bt_inequality(cfg, sigma);
    } else {
      throw ParameterError("unknown --name '" + o.name +
                           "' (coefficient-sum, quantitative-bohr, bt, kahane, levy)");
    }
  }
  spdlog::info("{}: pass={} max_ratio={}", report.inequality_name, report.pass, report.max_ratio);
  if (!o.csv.empty()) {
    std::ofstream out(o.csv);
    if (!out) throw Error("cannot write '" + o.csv + "'");
    out << quantile_csv(report);
  }
  Json result = to_json(report);
  result.erase("schema_version");
  return {{"config", std::move(config)}, {"result", std::move(result)}};
}

}  // namespace gendir::cli
