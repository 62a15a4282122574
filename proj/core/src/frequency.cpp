#include "gendir/frequency.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "gendir/error.hpp"

namespace gendir {
namespace {

constexpr double kReconstructionTolerance = 1e-12;

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Smallest prime factor for 0..limit.
std::vector<std::uint32_t> smallest_prime_factors(std::size_t limit) {
  std::vector<std::uint32_t> spf(limit + 1, 0);
  for (std::size_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (std::size_t j = i; j <= limit; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

// prime_index[p] = 0-based position of prime p among the primes.
std::vector<std::uint32_t> prime_indices(const std::vector<std::uint32_t>& spf) {
  std::vector<std::uint32_t> index(spf.size(), 0);
  std::uint32_t count = 0;
  for (std::size_t i = 2; i < spf.size(); ++i) {
    if (spf[i] == i) index[i] = count++;
  }
  return index;
}

BohrRow factor_row(std::size_t n, const std::vector<std::uint32_t>& spf,
                   const std::vector<std::uint32_t>& index) {
  BohrRow row;
  while (n > 1) {
    const std::uint32_t p = spf[n];
    std::int64_t alpha = 0;
    while (n % p == 0) {
      n /= p;
      ++alpha;
    }
    const std::size_t j = index[p];
    if (row.size() <= j) row.resize(j + 1, Rational(0));
    row[j] = Rational(alpha);
  }
  return row;
}

ConditionWitness witness_from_log_statistics(const std::vector<double>& log_stats,
                                             std::size_t n_max,
                                             const ConditionConfig& cfg) {
  ConditionWitness w;
  w.prefix_length = n_max;
  const auto min_it = std::min_element(log_stats.begin(), log_stats.end());
  w.log_infimum = *min_it;
  w.argmin_index = static_cast<std::size_t>(min_it - log_stats.begin()) + 1;
  w.infimum_statistic = std::exp(w.log_infimum);

  const std::size_t m = log_stats.size();
  const auto tail_len = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(cfg.tail_fraction * static_cast<double>(m))), 1, m);
  const std::size_t begin = m - tail_len;
  bool overflow = false;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = begin; i < m; ++i) {
    if (std::isinf(log_stats[i])) {
      overflow = true;
      break;
    }
    const double x = std::log(static_cast<double>(i + 1));
    sx += x;
    sy += log_stats[i];
    sxx += x * x;
    sxy += x * log_stats[i];
  }
  if (overflow) {
    w.trend = std::numeric_limits<double>::infinity();
  } else if (tail_len < 2) {
    w.trend = 0.0;
  } else {
    const double k = static_cast<double>(tail_len);
    const double denom = k * sxx - sx * sx;
    w.trend = denom > 0 ? (k * sxy - sx * sy) / denom : 0.0;
  }
  w.holds_on_prefix = w.log_infimum > std::log(cfg.floor) && w.trend >= cfg.trend_threshold;
  return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// BohrDecomposition

BohrDecomposition BohrDecomposition::prime_logarithms() {
  BohrDecomposition d;
  d.kind_ = Kind::prime_logarithms;
  return d;
}

BohrDecomposition BohrDecomposition::integer_multiples(double scale) {
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw ParameterError("integer_multiples scale must be positive");
  }
  BohrDecomposition d;
  d.kind_ = Kind::integer_multiples;
  d.scale_ = scale;
  return d;
}

BohrDecomposition BohrDecomposition::explicit_matrix(std::vector<double> basis,
                                                     std::vector<BohrRow> rows) {
  for (std::size_t n = 0; n < rows.size(); ++n) {
    auto& row = rows[n];
    while (!row.empty() && row.back().is_zero()) row.pop_back();
    if (row.size() > basis.size()) {
      throw ValidationError("Bohr matrix row " + std::to_string(n + 1) +
                                " is longer than the basis",
                            n + 1);
    }
  }
  BohrDecomposition d;
  d.kind_ = Kind::explicit_matrix;
  d.basis_ = std::make_shared<const std::vector<double>>(std::move(basis));
  d.rows_ = std::make_shared<const std::vector<BohrRow>>(std::move(rows));
  return d;
}

std::optional<std::size_t> BohrDecomposition::basis_length() const {
  switch (kind_) {
    case Kind::prime_logarithms: return std::nullopt;
    case Kind::integer_multiples: return 1;
    case Kind::explicit_matrix: return basis_->size();
  }
  return std::nullopt;
}

std::vector<double> BohrDecomposition::basis(std::size_t count) const {
  if (auto len = basis_length(); len && count > *len) {
    throw ParameterError("requested " + std::to_string(count) +
                         " basis elements, only " + std::to_string(*len) + " available");
  }
  switch (kind_) {
    case Kind::prime_logarithms: {
      std::vector<double> out;
      out.reserve(count);
      for (auto p : first_primes(count)) out.push_back(std::log(static_cast<double>(p)));
      return out;
    }
    case Kind::integer_multiples: return std::vector<double>(count, scale_);
    case Kind::explicit_matrix:
      return std::vector<double>(basis_->begin(), basis_->begin() + static_cast<std::ptrdiff_t>(count));
  }
  return {};
}

std::optional<std::size_t> BohrDecomposition::row_count() const {
  if (kind_ == Kind::explicit_matrix) return rows_->size();
  return std::nullopt;
}

BohrRow BohrDecomposition::row(std::size_t n) const {
  if (n == 0) throw ParameterError("frequency indices are 1-based");
  switch (kind_) {
    case Kind::prime_logarithms: {
      const auto spf = smallest_prime_factors(n);
      return factor_row(n, spf, prime_indices(spf));
    }
    case Kind::integer_multiples:
      return BohrRow{Rational(static_cast<std::int64_t>(n))};
    case Kind::explicit_matrix:
      if (n > rows_->size()) {
        throw ParameterError("Bohr matrix has no row " + std::to_string(n));
      }
      return (*rows_)[n - 1];
  }
  return {};
}

std::vector<BohrRow> BohrDecomposition::rows(std::size_t n_max) const {
  std::vector<BohrRow> out;
  out.reserve(n_max);
  if (kind_ == Kind::prime_logarithms) {
    const auto spf = smallest_prime_factors(n_max);
    const auto index = prime_indices(spf);
    for (std::size_t n = 1; n <= n_max; ++n) out.push_back(factor_row(n, spf, index));
    return out;
  }
  for (std::size_t n = 1; n <= n_max; ++n) out.push_back(row(n));
  return out;
}

bool BohrDecomposition::integral() const {
  if (kind_ != Kind::explicit_matrix) return true;
  return std::all_of(rows_->begin(), rows_->end(), [](const BohrRow& r) {
    return std::all_of(r.begin(), r.end(), [](const Rational& q) { return q.is_integer(); });
  });
}

double BohrDecomposition::reconstruct(const BohrRow& row) const {
  const auto b = basis(row.size());
  long double sum = 0.0L;
  for (std::size_t k = 0; k < row.size(); ++k) {
    sum += static_cast<long double>(row[k].to_double()) * b[k];
  }
  return static_cast<double>(sum);
}

// ---------------------------------------------------------------------------
// Frequency

Frequency Frequency::from_generator(std::string label, Generator generator,
                                    std::optional<std::size_t> known_length) {
  if (!generator) throw ParameterError("frequency generator is empty");
  Frequency f;
  f.label_ = std::move(label);
  f.generator_ = std::move(generator);
  f.known_length_ = known_length;
  return f;
}

Frequency Frequency::from_values(std::string label, std::vector<double> values) {
  if (values.empty()) throw ParameterError("explicit frequency needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ValidationError("frequency value at index " + std::to_string(i + 1) +
                                " is not finite",
                            i + 1);
    }
  }
  if (values[0] < 0.0) throw ValidationError("frequency value at index 1 is negative", 1);
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw ValidationError("frequency is not strictly increasing at index " +
                                std::to_string(i + 1),
                            i + 1);
    }
  }
  auto shared = std::make_shared<const std::vector<double>>(std::move(values));
  Frequency f = from_generator(
      std::move(label), [shared](std::size_t n) { return (*shared)[n - 1]; }, shared->size());
  f.explicit_values_ = std::move(shared);
  return f;
}

Frequency Frequency::with_decomposition(BohrDecomposition decomposition) const {
  std::size_t check = 0;
  if (explicit_values_) check = explicit_values_->size();
  if (auto rows = decomposition.row_count()) {
    if (explicit_values_ && *rows < explicit_values_->size()) {
      throw ValidationError("Bohr matrix has fewer rows than the frequency has values",
                            *rows + 1);
    }
    check = std::max(check, std::min<std::size_t>(*rows, known_length_.value_or(*rows)));
  }
  if (!explicit_values_ && !decomposition.row_count()) check = 0;
  for (std::size_t n = 1; n <= check; ++n) {
    const double lambda = value(n);
    const double rebuilt = decomposition.reconstruct(decomposition.row(n));
    if (std::abs(lambda - rebuilt) > kReconstructionTolerance * std::max(1.0, std::abs(lambda))) {
      throw ValidationError("Bohr matrix row " + std::to_string(n) +
                                " does not reconstruct the frequency value",
                            n);
    }
  }
  Frequency f = *this;
  f.decomposition_ = std::move(decomposition);
  return f;
}

Frequency Frequency::with_q_independence(bool independent) const {
  Frequency f = *this;
  f.q_independent_ = independent;
  return f;
}

const std::vector<double>& Frequency::explicit_values() const {
  static const std::vector<double> empty;
  return explicit_values_ ? *explicit_values_ : empty;
}

double Frequency::value(std::size_t n) const {
  if (n == 0) throw ParameterError("frequency indices are 1-based");
  if (known_length_ && n > *known_length_) {
    throw ParameterError("index " + std::to_string(n) + " exceeds frequency length " +
                         std::to_string(*known_length_));
  }
  return generator_(n);
}

std::vector<double> Frequency::prefix(std::size_t n_max) const {
  if (known_length_ && n_max > *known_length_) {
    throw ParameterError("prefix length " + std::to_string(n_max) +
                         " exceeds frequency length " + std::to_string(*known_length_));
  }
  std::vector<double> out(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double v = generator_(n);
    if (!std::isfinite(v)) {
      throw ValidationError("frequency value at index " + std::to_string(n) + " is not finite",
                            n);
    }
    if (n == 1 && v < 0.0) throw ValidationError("frequency value at index 1 is negative", 1);
    if (n > 1 && !(v > out[n - 2])) {
      throw ValidationError(
          "frequency is not strictly increasing at index " + std::to_string(n), n);
    }
    out[n - 1] = v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Built-in families

std::vector<std::uint64_t> first_primes(std::size_t count) {
  if (count == 0) return {};
  const double c = static_cast<double>(std::max<std::size_t>(count, 6));
  const auto limit = static_cast<std::size_t>(c * (std::log(c) + std::log(std::log(c)))) + 16;
  const auto spf = smallest_prime_factors(limit);
  std::vector<std::uint64_t> primes;
  primes.reserve(count);
  for (std::size_t i = 2; i <= limit && primes.size() < count; ++i) {
    if (spf[i] == i) primes.push_back(i);
  }
  return primes;
}

Frequency make_log_frequency() {
  return Frequency::from_generator("log_n",
                                   [](std::size_t n) { return std::log(static_cast<double>(n)); })
      .with_decomposition(BohrDecomposition::prime_logarithms());
}

Frequency make_linear_frequency() {
  return Frequency::from_generator("linear",
                                   [](std::size_t n) { return static_cast<double>(n); })
      .with_decomposition(BohrDecomposition::integer_multiples(1.0));
}

Frequency make_sqrt_log_frequency() {
  return Frequency::from_generator(
      "sqrt_log_n", [](std::size_t n) { return std::sqrt(std::log(static_cast<double>(n))); });
}

Frequency make_log_log_frequency() {
  return Frequency::from_generator(
      "loglog", [](std::size_t n) { return std::log(std::log(static_cast<double>(n) + 2.0)); });
}

Frequency make_lacunary_frequency(double q) {
  if (!(q > 1.0) || !std::isfinite(q)) throw ParameterError("lacunary ratio q must exceed 1");
  return Frequency::from_generator("lacunary:" + shortest(q), [q](std::size_t n) {
    return std::pow(q, static_cast<double>(n));
  });
}

Frequency make_log_prime_frequency(std::size_t count) {
  if (count == 0) throw ParameterError("log_primes needs a positive count");
  auto primes = std::make_shared<const std::vector<std::uint64_t>>(first_primes(count));
  return Frequency::from_generator(
             "log_primes:" + std::to_string(count),
             [primes](std::size_t n) { return std::log(static_cast<double>((*primes)[n - 1])); },
             count)
      .with_q_independence(true);
}

Frequency make_q_independent_sample(std::uint64_t seed) {
  return Frequency::from_generator("q_independent:" + std::to_string(seed),
                                   [seed](std::size_t n) {
                                     const std::uint64_t h = splitmix64(seed ^ splitmix64(n));
                                     const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
                                     return static_cast<double>(n) + 0.5 * u;
                                   })
      .with_q_independence(true);
}

// ---------------------------------------------------------------------------
// Operations

std::vector<double> gaps(const Frequency& f, std::size_t n_max) {
  if (n_max < 2) throw ParameterError("gaps needs n_max >= 2");
  const auto lambda = f.prefix(n_max);
  std::vector<double> out(n_max - 1);
  for (std::size_t n = 0; n + 1 < n_max; ++n) out[n] = lambda[n + 1] - lambda[n];
  return out;
}

ConditionWitness check_bc(const Frequency& f, double l, double delta, std::size_t n_max,
                          const ConditionConfig& cfg) {
  if (!(l > 0)) throw ParameterError("Bohr's condition needs l > 0");
  if (!(delta > 0)) throw ParameterError("Bohr's condition needs delta > 0");
  const auto lambda = f.prefix(n_max);
  const auto g = gaps(f, n_max);
  std::vector<double> log_stats(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    log_stats[n] = std::log(g[n]) + (l + delta) * lambda[n];
  }
  return witness_from_log_statistics(log_stats, n_max, cfg);
}

ConditionWitness check_lc(const Frequency& f, double delta, std::size_t n_max,
                          const ConditionConfig& cfg) {
  if (!(delta > 0)) throw ParameterError("Landau's condition needs delta > 0");
  const auto lambda = f.prefix(n_max);
  const auto g = gaps(f, n_max);
  std::vector<double> log_stats(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    log_stats[n] = std::log(g[n]) + std::exp(delta * lambda[n]);
  }
  return witness_from_log_statistics(log_stats, n_max, cfg);
}

AbscissaEstimate strip_L(const Frequency& f, std::size_t n_max, const StripConfig& cfg) {
  if (n_max == 0) throw ParameterError("strip_L needs n_max >= 1");
  const auto lambda = f.prefix(n_max);
  AbscissaEstimate est;
  est.kind = AbscissaKind::strip_width;
  est.prefix_length = n_max;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (lambda[n - 1] <= 0.0) continue;
    est.quotients.push_back(
        {static_cast<double>(n), std::log(static_cast<double>(n)) / lambda[n - 1]});
  }
  if (est.quotients.empty()) {
    throw UndefinedError("log(N)/lambda_N is undefined: every lambda_N on the prefix is zero");
  }
  est.value = tail_max(est.quotients, cfg.tail_fraction);
  est.converged = !still_increasing(est.quotients, cfg.tail_fraction);
  return est;
}

std::vector<bool> abschnitt_mask(const BohrDecomposition& dec, std::size_t N,
                                 std::size_t n_max) {
  if (N == 0) throw ParameterError("abschnitt index N must be >= 1");
  const auto rows = dec.rows(n_max);
  std::vector<bool> mask(n_max);
  for (std::size_t n = 0; n < n_max; ++n) mask[n] = rows[n].size() <= N;
  return mask;
}

}  // namespace gendir
