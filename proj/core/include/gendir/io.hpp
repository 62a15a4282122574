#pragma once

// JSON files for frequencies, series and reports, and the named built-in
// corpus. Every document carries "schema_version": "<major>.<minor>";
// readers reject majors newer than kSchemaMajor.

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "gendir/abscissa.hpp"
#include "gendir/frequency.hpp"
#include "gendir/norms.hpp"
#include "gendir/series.hpp"
#include "gendir/summation.hpp"
#include "gendir/verification.hpp"

namespace gendir {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaMajor = 1;
inline constexpr int kSchemaMinor = 0;
std::string schema_version();

/// Throws SchemaError when "schema_version" is missing, malformed or has a
/// newer major version.
void check_schema_version(const Json& doc);

// Frequencies. Built-in (generated) frequencies are stored by label; explicit
// ones store their values and optional Bohr matrix with "p/q" entries.
Json frequency_to_json(const Frequency& f);
Frequency frequency_from_json(const Json& doc, const std::string& path = "");

// Series: {"frequency", "space": {"dim", "r"}, "coefficients": [[[re, im], ...], ...]}.
Json series_to_json(const DirichletSeries& d);
DirichletSeries series_from_json(const Json& doc);

/// Reads and parses a JSON file. Throws Error when the file cannot be
/// opened and SchemaError on malformed JSON.
Json read_json(const std::filesystem::path& path);
/// Writes `doc` with two-space indentation and a trailing newline.
void write_json(const Json& doc, const std::filesystem::path& path);

Frequency load_frequency(const std::filesystem::path& path);
void save_frequency(const Frequency& f, const std::filesystem::path& path);
DirichletSeries load_series(const std::filesystem::path& path);
void save_series(const DirichletSeries& d, const std::filesystem::path& path);

/// log_n, linear, sqrt_log_n, loglog, lacunary[:q], log_primes:count,
/// q_independent[:seed] (alias q_independent_sample). Throws ParameterError
/// for unknown names.
Frequency builtin_frequency(std::string_view name);
/// zeta_truncation:N (a_n = 1 over log n), alternating:N (a_n = (-1)^n over
/// log n), unit_coefficients:N[:frequency].
DirichletSeries builtin_series(std::string_view name);
std::variant<Frequency, DirichletSeries> builtin(std::string_view name);

// Reports. Non-finite reals are written as the strings "inf", "-inf", "nan".
Json real_to_json(double x);
Json to_json(const AbscissaEstimate& e);
Json to_json(const ConditionWitness& w);
Json to_json(const NormEstimate& e);
Json to_json(const SupEstimate& e);
Json to_json(const PlusNormResult& r);
Json to_json(const VerificationReport& r);

/// Writes a report document, adding schema_version when absent.
void save_report(const VerificationReport& report, const std::filesystem::path& path);

/// "level,value" rows of the quantile table.
std::string quantile_csv(const VerificationReport& report);

}  // namespace gendir
