#include "gendir/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "gendir/error.hpp"

namespace gendir {
namespace {

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

std::string field_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

const Json& require(const Json& obj, const std::string& key, const std::string& base) {
  if (!obj.is_object()) throw SchemaError(base, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(field_path(base, key), "missing required field");
  return *it;
}

double require_number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  return v.get<double>();
}

std::string require_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

const Json& require_array(const Json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array");
  return v;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_param(const std::string& text, std::string_view name) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParameterError("invalid parameter '" + text + "' in builtin '" + std::string(name) + "'");
  }
  return value;
}

Json exponent_to_json(double r) {
  if (std::isinf(r)) return "inf";
  return r;
}

double exponent_from_json(const Json& v, const std::string& path) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    throw SchemaError(path, "expected a number or \"inf\"");
  }
  return require_number(v, path);
}

Complex entry_from_json(const Json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) {
    return {require_number(v[0], index_path(path, 0)), require_number(v[1], index_path(path, 1))};
  }
  throw SchemaError(path, "expected a number or a [re, im] pair");
}

std::string bohr_kind_name(BohrDecomposition::Kind kind) {
  switch (kind) {
    case BohrDecomposition::Kind::prime_logarithms: return "prime_logarithms";
    case BohrDecomposition::Kind::integer_multiples: return "integer_multiples";
    case BohrDecomposition::Kind::explicit_matrix: return "explicit_matrix";
  }
  return "unknown";
}

Frequency with_builtin_errors(const std::string& name, const std::string& path) {
  try {
    return builtin_frequency(name);
  } catch (const ParameterError& e) {
    throw SchemaError(path, e.what());
  }
}

}  // namespace

std::string schema_version() {
  return std::to_string(kSchemaMajor) + "." + std::to_string(kSchemaMinor);
}

void check_schema_version(const Json& doc) {
  const auto text = require_string(require(doc, "schema_version", ""), "schema_version");
  const auto parts = split(text, '.');
  int major = 0;
  const auto& head = parts.front();
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), major);
  if (ec != std::errc() || ptr != head.data() + head.size() || parts.size() > 3) {
    throw SchemaError("schema_version", "malformed version '" + text + "'");
  }
  if (major > kSchemaMajor) {
    throw SchemaError("schema_version", "unsupported future major version '" + text +
                                            "' (reader supports " + schema_version() + ")");
  }
}

Json frequency_to_json(const Frequency& f) {
  Json j;
  if (!f.is_explicit()) {
    j["kind"] = "builtin";
    j["label"] = f.label();
    return j;
  }
  j["kind"] = "explicit";
  j["label"] = f.label();
  j["values"] = f.explicit_values();
  j["q_independent"] = f.q_independent();
  if (const auto* dec = f.decomposition()) {
    j["bohr_kind"] = bohr_kind_name(dec->kind());
    if (dec->kind() == BohrDecomposition::Kind::integer_multiples) {
      j["bohr_scale"] = dec->basis(1).front();
    } else if (dec->kind() == BohrDecomposition::Kind::explicit_matrix) {
      j["bohr_basis"] = dec->basis(dec->basis_length().value_or(0));
      Json rows = Json::array();
      for (const auto& row : dec->rows(dec->row_count().value_or(0))) {
        Json r = Json::array();
        for (const auto& q : row) r.push_back(q.to_string());
        rows.push_back(std::move(r));
      }
      j["bohr_matrix"] = std::move(rows);
    }
  }
  return j;
}

Frequency frequency_from_json(const Json& doc, const std::string& path) {
  if (doc.is_string()) return with_builtin_errors(doc.get<std::string>(), path);
  const auto kind = require_string(require(doc, "kind", path), field_path(path, "kind"));
  if (kind == "builtin") {
    const auto label_path = field_path(path, "label");
    return with_builtin_errors(require_string(require(doc, "label", path), label_path),
                               label_path);
  }
  if (kind != "explicit") {
    throw SchemaError(field_path(path, "kind"), "expected \"builtin\" or \"explicit\"");
  }
  std::string label = "explicit";
  if (doc.contains("label")) label = require_string(doc["label"], field_path(path, "label"));

  const auto values_path = field_path(path, "values");
  const auto& values_json = require_array(require(doc, "values", path), values_path);
  if (values_json.empty()) throw SchemaError(values_path, "expected at least one value");
  std::vector<double> values;
  for (std::size_t i = 0; i < values_json.size(); ++i) {
    values.push_back(require_number(values_json[i], index_path(values_path, i)));
  }
  Frequency f = [&] {
    try {
      return Frequency::from_values(label, std::move(values));
    } catch (const ValidationError& e) {
      throw SchemaError(index_path(values_path, e.index() - 1), e.what());
    }
  }();

  if (doc.contains("q_independent")) {
    const auto& q = doc["q_independent"];
    if (!q.is_boolean()) throw SchemaError(field_path(path, "q_independent"), "expected a boolean");
    f = f.with_q_independence(q.get<bool>());
  }

  std::string bohr_kind;
  if (doc.contains("bohr_kind")) {
    bohr_kind = require_string(doc["bohr_kind"], field_path(path, "bohr_kind"));
  } else if (doc.contains("bohr_matrix")) {
    bohr_kind = "explicit_matrix";
  }
  if (bohr_kind.empty()) return f;

  try {
    if (bohr_kind == "prime_logarithms") {
      return f.with_decomposition(BohrDecomposition::prime_logarithms());
    }
    if (bohr_kind == "integer_multiples") {
      double scale = 1.0;
      if (doc.contains("bohr_scale")) {
        scale = require_number(doc["bohr_scale"], field_path(path, "bohr_scale"));
      }
      return f.with_decomposition(BohrDecomposition::integer_multiples(scale));
    }
    if (bohr_kind != "explicit_matrix") {
      throw SchemaError(field_path(path, "bohr_kind"), "unknown decomposition '" + bohr_kind + "'");
    }
    const auto basis_path = field_path(path, "bohr_basis");
    const auto& basis_json = require_array(require(doc, "bohr_basis", path), basis_path);
    std::vector<double> basis;
    for (std::size_t i = 0; i < basis_json.size(); ++i) {
      basis.push_back(require_number(basis_json[i], index_path(basis_path, i)));
    }
    const auto matrix_path = field_path(path, "bohr_matrix");
    const auto& matrix_json = require_array(require(doc, "bohr_matrix", path), matrix_path);
    std::vector<BohrRow> rows;
    for (std::size_t n = 0; n < matrix_json.size(); ++n) {
      const auto row_path = index_path(matrix_path, n);
      const auto& row_json = require_array(matrix_json[n], row_path);
      BohrRow row;
      for (std::size_t k = 0; k < row_json.size(); ++k) {
        const auto entry_path = index_path(row_path, k);
        try {
          row.push_back(Rational::parse(require_string(row_json[k], entry_path)));
        } catch (const ParameterError& e) {
          throw SchemaError(entry_path, e.what());
        }
      }
      rows.push_back(std::move(row));
    }
    return f.with_decomposition(BohrDecomposition::explicit_matrix(std::move(basis), std::move(rows)));
  } catch (const ValidationError& e) {
    throw SchemaError(index_path(field_path(path, "bohr_matrix"), e.index() - 1), e.what());
  } catch (const ParameterError& e) {
    throw SchemaError(field_path(path, "bohr_kind"), e.what());
  }
}

Json series_to_json(const DirichletSeries& d) {
  Json j;
  j["schema_version"] = schema_version();
  j["frequency"] = frequency_to_json(d.frequency());
  j["space"] = {{"dim", d.dimension()}, {"r", exponent_to_json(d.space().norm_exponent())}};
  Json coeffs = Json::array();
  for (std::size_t n = 1; n <= d.length(); ++n) {
    Json row = Json::array();
    for (const auto& c : d.coefficient(n)) row.push_back(Json::array({c.real(), c.imag()}));
    coeffs.push_back(std::move(row));
  }
  j["coefficients"] = std::move(coeffs);
  return j;
}

DirichletSeries series_from_json(const Json& doc) {
  check_schema_version(doc);
  Frequency f = frequency_from_json(require(doc, "frequency", ""), "frequency");

  std::size_t dim = 1;
  double r = 2.0;
  if (doc.contains("space")) {
    const auto& space = doc["space"];
    if (!space.is_object()) throw SchemaError("space", "expected an object");
    if (space.contains("dim")) {
      const auto& v = space["dim"];
      if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
        throw SchemaError("space.dim", "expected a positive integer");
      }
      dim = v.get<std::size_t>();
    }
    if (space.contains("r")) r = exponent_from_json(space["r"], "space.r");
  }
  const CoefficientSpace cs = [&] {
    try {
      return CoefficientSpace(dim, r);
    } catch (const ParameterError& e) {
      throw SchemaError("space.r", e.what());
    }
  }();

  const auto& rows = require_array(require(doc, "coefficients", ""), "coefficients");
  if (rows.empty()) throw SchemaError("coefficients", "expected at least one coefficient");
  std::vector<Complex> coeffs;
  coeffs.reserve(rows.size() * dim);
  for (std::size_t n = 0; n < rows.size(); ++n) {
    const auto row_path = index_path("coefficients", n);
    const auto& row = require_array(rows[n], row_path);
    if (row.size() != dim) {
      throw SchemaError(row_path, "expected " + std::to_string(dim) + " entries, found " +
                                      std::to_string(row.size()));
    }
    for (std::size_t j = 0; j < dim; ++j) coeffs.push_back(entry_from_json(row[j], index_path(row_path, j)));
  }
  try {
    return DirichletSeries(std::move(f), cs, std::move(coeffs));
  } catch (const ValidationError& e) {
    throw SchemaError(index_path("frequency.values", e.index() - 1), e.what());
  } catch (const ParameterError& e) {
    throw SchemaError("coefficients", e.what());
  }
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", "malformed JSON in '" + path.string() + "': " + e.what());
  }
}

void write_json(const Json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

Frequency load_frequency(const std::filesystem::path& path) {
  const auto doc = read_json(path);
  check_schema_version(doc);
  return frequency_from_json(doc);
}

void save_frequency(const Frequency& f, const std::filesystem::path& path) {
  Json doc;
  doc["schema_version"] = schema_version();
  doc.update(frequency_to_json(f));
  write_json(doc, path);
}

DirichletSeries load_series(const std::filesystem::path& path) {
  return series_from_json(read_json(path));
}

void save_series(const DirichletSeries& d, const std::filesystem::path& path) {
  write_json(series_to_json(d), path);
}

Frequency builtin_frequency(std::string_view name) {
  const auto parts = split(name, ':');
  const auto& head = parts[0];
  if (parts.size() == 1) {
    if (head == "log_n") return make_log_frequency();
    if (head == "linear") return make_linear_frequency();
    if (head == "sqrt_log_n") return make_sqrt_log_frequency();
    if (head == "loglog") return make_log_log_frequency();
    if (head == "lacunary") return make_lacunary_frequency(2.0);
    if (head == "q_independent" || head == "q_independent_sample") {
      return make_q_independent_sample(0);
    }
  } else if (parts.size() == 2) {
    if (head == "lacunary") return make_lacunary_frequency(parse_param<double>(parts[1], name));
    if (head == "log_primes") {
      return make_log_prime_frequency(parse_param<std::size_t>(parts[1], name));
    }
    if (head == "q_independent" || head == "q_independent_sample") {
      return make_q_independent_sample(parse_param<std::uint64_t>(parts[1], name));
    }
  }
  throw ParameterError("unknown builtin frequency '" + std::string(name) + "'");
}

DirichletSeries builtin_series(std::string_view name) {
  const auto parts = split(name, ':');
  const auto& head = parts[0];
  const bool known = head == "zeta_truncation" || head == "alternating" || head == "unit_coefficients";
  if (!known || parts.size() < 2 || (parts.size() > 2 && head != "unit_coefficients")) {
    throw ParameterError("unknown builtin series '" + std::string(name) + "'");
  }
  const auto N = parse_param<std::size_t>(parts[1], name);
  if (N == 0) throw ParameterError("builtin series '" + std::string(name) + "' needs N >= 1");
  Frequency f = make_log_frequency();
  if (parts.size() > 2) {
    std::string freq_name = parts[2];
    for (std::size_t i = 3; i < parts.size(); ++i) freq_name += ":" + parts[i];
    f = builtin_frequency(freq_name);
  }
  std::vector<Complex> c(N, 1.0);
  if (head == "alternating") {
    for (std::size_t n = 1; n <= N; ++n) c[n - 1] = n % 2 == 0 ? 1.0 : -1.0;
  }
  return DirichletSeries(std::move(f), std::move(c));
}

std::variant<Frequency, DirichletSeries> builtin(std::string_view name) {
  try {
    return builtin_frequency(name);
  } catch (const ParameterError&) {
  }
  try {
    return builtin_series(name);
  } catch (const ParameterError&) {
  }
  throw ParameterError("unknown builtin '" + std::string(name) + "'");
}

Json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json to_json(const AbscissaEstimate& e) {
  Json q = Json::array();
  for (const auto& p : e.quotients) q.push_back(Json::array({p.x, real_to_json(p.quotient)}));
  Json j;
  j["kind"] = to_string(e.kind);
  j["value"] = real_to_json(e.value);
  j["riesz_order"] = e.riesz_order;
  j["prefix_length"] = e.prefix_length;
  j["upper_bound_only"] = e.upper_bound_only;
  if (e.upper_bound_only) j["flag"] = "nonnegativity condition unmet";
  j["converged"] = e.converged;
  j["quotients"] = std::move(q);
  return j;
}

Json to_json(const ConditionWitness& w) {
  return {{"holds_on_prefix", w.holds_on_prefix},
          {"prefix_length", w.prefix_length},
          {"infimum_statistic", real_to_json(w.infimum_statistic)},
          {"log_infimum", real_to_json(w.log_infimum)},
          {"argmin_index", w.argmin_index},
          {"trend", real_to_json(w.trend)}};
}

Json to_json(const NormEstimate& e) {
  Json j;
  j["value"] = real_to_json(e.value);
  j["delta"] = real_to_json(e.delta);
  j["method"] = to_string(e.method);
  j["flagged"] = e.flagged;
  if (e.method == NormMethod::time_average) {
    j["horizon_values"] = Json::array({real_to_json(e.horizon_values[0]),
                                       real_to_json(e.horizon_values[1]),
                                       real_to_json(e.horizon_values[2])});
  }
  return j;
}

Json to_json(const SupEstimate& e) {
  return {{"value", real_to_json(e.value)},
          {"lower_bound", real_to_json(e.lower_bound)},
          {"t_at_max", real_to_json(e.t_at_max)},
          {"torus_value", real_to_json(e.torus_value)},
          {"used_torus", e.used_torus},
          {"ceiling", real_to_json(e.ceiling)}};
}

Json to_json(const PlusNormResult& r) {
  return {{"value", real_to_json(r.value)},
          {"grid_delta", real_to_json(r.grid_delta)},
          {"argmax_x", real_to_json(r.argmax_x)},
          {"grid_size", r.grid_size}};
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["schema_version"] = schema_version();
  j["inequality_name"] = r.inequality_name;
  j["status"] = r.status;
  j["pass"] = r.pass;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["max_ratio"] = real_to_json(r.max_ratio);
  j["min_ratio"] = real_to_json(r.min_ratio);
  j["mean_ratio"] = real_to_json(r.mean_ratio);
  j["empirical_constant"] = real_to_json(r.empirical_constant);
  j["ceiling"] = real_to_json(r.ceiling);
  j["standard_error"] = real_to_json(r.standard_error);
  Json q = Json::array();
  for (const auto& [level, value] : r.quantiles) q.push_back(Json::array({level, real_to_json(value)}));
  j["quantiles"] = std::move(q);
  Json lengths = Json::array();
  for (const auto& s : r.per_length) {
    lengths.push_back({{"length", s.length},
                       {"samples", s.samples},
                       {"max_ratio", real_to_json(s.max_ratio)},
                       {"mean_ratio", real_to_json(s.mean_ratio)}});
  }
  j["per_length"] = std::move(lengths);
  j["notes"] = r.notes;
  return j;
}

void save_report(const VerificationReport& report, const std::filesystem::path& path) {
  write_json(to_json(report), path);
}

std::string quantile_csv(const VerificationReport& report) {
  std::ostringstream out;
  out << "level,value\n";
  char buf[64];
  for (const auto& [level, value] : report.quantiles) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", level, value);
    out << buf;
  }
  return out.str();
}

}  // namespace gendir
