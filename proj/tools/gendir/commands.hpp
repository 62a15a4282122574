#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gendir/io.hpp>

namespace gendir::cli {

/// Every flag of every subcommand; unused ones keep their defaults.
struct Options {
  std::string builtin;
  std::string frequency_file;
  std::string series;
  std::size_t n_max = 0;
  std::optional<double> k;
  std::string p = "2";
  std::optional<double> sigma;
  double T_max = 1e4;
  std::size_t mc = 10000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string out;

  // abscissa
  std::string kind = "c";
  std::string family = "unit";
  bool full = false;

  // riesz-sum
  std::vector<double> x;
  double t = 0.0;

  // norms
  /// Empty selects time_average for finite p and the line sup for p = inf.
  std::string method;
  std::size_t quadrature_points = 4096;
  bool plus = false;

  // strip
  std::optional<double> L;
  std::optional<std::string> r;
  std::optional<double> cotype;
  bool type2 = false;

  // verify
  std::string name;
  std::size_t N = 32;
  std::vector<std::size_t> lengths;
  std::size_t samples = 0;
  std::size_t dim = 1;
  std::string space_r = "2";
  std::string ensemble = "gaussian";
  std::size_t draws = 8;
  std::optional<double> ceiling;
  std::string csv;

  // sup search
  double t_range = 0.0;
  std::size_t grid_points = 0;
  int multistarts = 16;
};

Json freq_report(const Options& o);
Json abscissa(const Options& o);
Json riesz_sum(const Options& o);
Json norms(const Options& o);
Json strip(const Options& o);
Json verify(const Options& o);

/// Parses a real that may be "inf".
double parse_extended_real(const std::string& text, const std::string& flag);

}  // namespace gendir::cli
