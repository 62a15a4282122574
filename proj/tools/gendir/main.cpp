#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <gendir/error.hpp>

#include "commands.hpp"

namespace {

constexpr int kUsageError = 2;

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("gendir");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("GENDIR_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

void add_source_flags(CLI::App* cmd, gendir::cli::Options& o) {
  cmd->add_option("--builtin", o.builtin, "Built-in frequency (log_n, linear, sqrt_log_n, ...)");
  cmd->add_option("--frequency", o.frequency_file, "Frequency JSON file");
  cmd->add_option("--n-max", o.n_max, "Prefix length");
}

void add_run_flags(CLI::App* cmd, gendir::cli::Options& o) {
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

void add_sup_flags(CLI::App* cmd, gendir::cli::Options& o) {
  cmd->add_option("--t-range", o.t_range, "Line-sup window length (0 = automatic)");
  cmd->add_option("--grid-points", o.grid_points, "Line-sup grid size (0 = automatic)");
  cmd->add_option("--multistarts", o.multistarts, "Torus ascent starting points");
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  gendir::cli::Options o;
  std::string out;
  std::function<gendir::Json(const gendir::cli::Options&)> command;
  std::string command_name;

  CLI::App app{"Numerical experiments with general Dirichlet series"};
  app.require_subcommand(1);
  app.add_option("--out", out, "Also write the JSON report to this file");

  auto bind = [&](CLI::App* cmd, auto fn) {
    cmd->add_option("--out", out, "Also write the JSON report to this file");
    cmd->callback([&, cmd, fn] {
      command = fn;
      command_name = cmd->get_name();
    });
  };

  auto* freq = app.add_subcommand("freq-report", "Gap conditions and L(lambda) of a frequency");
  add_source_flags(freq, o);
  bind(freq, gendir::cli::freq_report);

  auto* absc = app.add_subcommand("abscissa", "Bohr-Cahen abscissa estimate of a series family");
  add_source_flags(absc, o);
  add_run_flags(absc, o);
  add_sup_flags(absc, o);
  absc->add_option("--kind", o.kind, "c, u or a")->check(CLI::IsMember({"c", "u", "a"}));
  absc->add_option("--k", o.k, "Riesz order (default 0)");
  absc->add_option("--family", o.family, "unit, alternating, power[:e], single[:a]");
  absc->add_flag("--full", o.full, "Include the quotient sequence");
  bind(absc, gendir::cli::abscissa);

  auto* riesz = app.add_subcommand("riesz-sum", "Riesz means of a series at a point");
  riesz->add_option("--series", o.series, "Series JSON file or built-in series")->required();
  riesz->add_option("--k", o.k, "Riesz order (default 1)");
  riesz->add_option("--x", o.x, "Lengths x (default 2, 4, 8 times the last frequency)");
  riesz->add_option("--sigma", o.sigma, "Real part of s");
  riesz->add_option("--t", o.t, "Imaginary part of s");
  bind(riesz, gendir::cli::riesz_sum);

  auto* norm = app.add_subcommand("norms", "Hardy/Besicovitch or sup norm of a series");
  norm->add_option("--series", o.series, "Series JSON file or built-in series")->required();
  norm->add_option("--p", o.p, "Exponent in [1, inf]");
  norm->add_option("--method", o.method, "time_average, parseval, torus_mc, or sup");
  norm->add_option("--sigma", o.sigma, "Line for the sup norm");
  norm->add_option("--T-max", o.T_max, "Time-average horizon");
  norm->add_option("--quadrature-points", o.quadrature_points, "Minimum quadrature nodes");
  norm->add_option("--mc", o.mc, "Monte Carlo samples for torus_mc");
  norm->add_flag("--plus", o.plus, "Also compute the Riesz-mean plus norm");
  norm->add_option("--k", o.k, "Riesz order for --plus (default 1)");
  add_run_flags(norm, o);
  add_sup_flags(norm, o);
  bind(norm, gendir::cli::norms);

  auto* strip = app.add_subcommand("strip", "Bohr strip width formulas");
  add_source_flags(strip, o);
  strip->add_option("--L", o.L, "L(lambda); estimated from the frequency when omitted");
  strip->add_option("--r", o.r, "Coefficient space l_r, r in [1, inf]");
  strip->add_option("--cotype", o.cotype, "Cotype >= 2 of the coefficient space");
  strip->add_flag("--type2", o.type2, "The coefficient space has type 2");
  bind(strip, gendir::cli::strip);

  auto* ver = app.add_subcommand("verify", "Randomized inequality verification");
  add_source_flags(ver, o);
  add_run_flags(ver, o);
  add_sup_flags(ver, o);
  ver->add_option("--name", o.name, "coefficient-sum, quantitative-bohr, bt, kahane, levy")
      ->required();
  ver->add_option("--p", o.p, "Exponent");
  ver->add_option("--k", o.k, "Riesz order for quantitative-bohr (default 1)");
  ver->add_option("--sigma", o.sigma, "Abscissa shift");
  ver->add_option("--N", o.N, "Number of Steinhaus terms (kahane, levy)");
  ver->add_option("--mc", o.mc, "Monte Carlo samples");
  ver->add_option("--draws", o.draws, "Coefficient draws (kahane, levy)");
  ver->add_option("--lengths", o.lengths, "Polynomial lengths");
  ver->add_option("--samples", o.samples, "Samples per length");
  ver->add_option("--dim", o.dim, "Coefficient space dimension");
  ver->add_option("--r", o.space_r, "Coefficient space exponent");
  ver->add_option("--ensemble", o.ensemble, "gaussian, unimodular or ones");
  ver->add_option("--ceiling", o.ceiling, "Pass threshold for the maximal ratio");
  ver->add_option("--method", o.method, "Norm method for coefficient-sum");
  ver->add_option("--T-max", o.T_max, "Time-average horizon");
  ver->add_option("--quadrature-points", o.quadrature_points, "Minimum quadrature nodes");
  ver->add_option("--csv", o.csv, "Write the quantile table as CSV");
  bind(ver, gendir::cli::verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    gendir::Json doc;
    doc["schema_version"] = gendir::schema_version();
    doc["command"] = command_name;
    doc.update(command(o));
    const std::string text = doc.dump(2);
    std::cout << text << '\n';
    if (!out.empty()) gendir::write_json(doc, out);
  } catch (const gendir::Error& e) {
    spdlog::error("{}", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    spdlog::critical("{}", e.what());
    return 1;
  }
  return 0;
}
