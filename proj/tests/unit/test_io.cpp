#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include <gendir/error.hpp>
#include <gendir/io.hpp>

#include "support/generators.hpp"

using namespace gendir;

namespace {

std::filesystem::path data(const std::string& name) {
  return std::filesystem::path(GENDIR_TEST_DATA_DIR) / name;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gendir_io_" + name);
}

std::string schema_field(const auto& fn) {
  try {
    fn();
  } catch (const SchemaError& e) {
    return e.field();
  }
  return "<no SchemaError>";
}

}  // namespace

TEST(Builtins, LogNDecomposition) {
  const auto f = builtin_frequency("log_n");
  EXPECT_NEAR(f.value(12), std::log(12.0), 1e-15);
  ASSERT_NE(f.decomposition(), nullptr);
  const auto row = f.decomposition()->row(12);
  ASSERT_EQ(row.size(), 2u);
  EXPECT_EQ(row[0], Rational(2));
  EXPECT_EQ(row[1], Rational(1));
}

TEST(Builtins, Names) {
  EXPECT_EQ(builtin_frequency("lacunary:3").value(3), 27.0);
  EXPECT_EQ(builtin_frequency("log_primes:4").known_length(), 4u);
  EXPECT_TRUE(builtin_frequency("q_independent:5").q_independent());
  EXPECT_THROW(builtin_frequency("zeta"), ParameterError);
  EXPECT_THROW(builtin_frequency("lacunary:1"), ParameterError);

  const auto z = builtin_series("zeta_truncation:10");
  EXPECT_EQ(z.length(), 10u);
  EXPECT_EQ(z.coefficient(7)[0], Complex(1.0));
  const auto alt = builtin_series("alternating:4");
  EXPECT_EQ(alt.coefficient(1)[0], Complex(-1.0));
  EXPECT_EQ(alt.coefficient(2)[0], Complex(1.0));
  EXPECT_EQ(builtin_series("unit_coefficients:5:linear").lambda(5), 5.0);
  EXPECT_TRUE(std::holds_alternative<DirichletSeries>(builtin("alternating:3")));
  EXPECT_TRUE(std::holds_alternative<Frequency>(builtin("loglog")));
  EXPECT_THROW(builtin("nothing:3"), ParameterError);
}

TEST(SeriesJson, RandomRoundTripIsBitExact) {
  for (int i = 0; i < 20; ++i) {
    gen::Gen g(900, i);
    const auto d = g.series(12);
    const auto path = scratch("series_" + std::to_string(i) + ".json");
    save_series(d, path);
    const auto back = load_series(path);
    std::filesystem::remove(path);
    EXPECT_EQ(back.coefficients(), d.coefficients()) << i;
    EXPECT_EQ(back.lambdas(), d.lambdas()) << i;
    EXPECT_EQ(back.space(), d.space()) << i;
  }
}

TEST(FrequencyJson, ExplicitWithBohrMatrix) {
  const auto f = load_frequency(data("explicit_frequency.json"));
  EXPECT_EQ(f.label(), "half_integers");
  EXPECT_EQ(f.prefix(6).back(), 2.5);
  ASSERT_NE(f.decomposition(), nullptr);
  EXPECT_EQ(f.decomposition()->row(4), BohrRow{Rational(3)});

  const auto path = scratch("freq.json");
  save_frequency(f, path);
  const auto back = load_frequency(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.explicit_values(), f.explicit_values());
  ASSERT_NE(back.decomposition(), nullptr);
  EXPECT_EQ(back.decomposition()->rows(6), f.decomposition()->rows(6));
}

TEST(SeriesJson, SmallFile) {
  const auto d = load_series(data("small_series.json"));
  EXPECT_EQ(d.length(), 2u);
  EXPECT_EQ(d.coefficient(2)[0], Complex(0.0, 4.0));
}

TEST(SchemaErrors, NameTheField) {
  Json doc = {{"schema_version", "1.0"},
              {"frequency", "log_n"},
              {"coefficients", Json::array({Json::array({1.0}), Json::array({"x"})})}};
  EXPECT_EQ(schema_field([&] { series_from_json(doc); }), "coefficients[1][0]");

  doc["coefficients"] = Json::array({Json::array({1.0, 2.0})});
  EXPECT_EQ(schema_field([&] { series_from_json(doc); }), "coefficients[0]");

  doc.erase("coefficients");
  EXPECT_EQ(schema_field([&] { series_from_json(doc); }), "coefficients");

  Json freq = {{"schema_version", "1.0"}, {"kind", "explicit"}, {"values", {0.0, 2.0, 1.0}}};
  EXPECT_EQ(schema_field([&] { frequency_from_json(freq); }), "values[2]");
  freq["values"] = {0.0, 1.0};
  freq["bohr_basis"] = {1.0};
  freq["bohr_matrix"] = {Json::array(), {"1/0"}};
  EXPECT_EQ(schema_field([&] { frequency_from_json(freq); }).rfind("bohr_matrix", 0), 0u);
  freq["kind"] = "other";
  EXPECT_EQ(schema_field([&] { frequency_from_json(freq); }), "kind");
}

TEST(SchemaErrors, Versions) {
  Json doc = {{"schema_version", "2.0"}, {"frequency", "log_n"}, {"coefficients", {{1.0}}}};
  EXPECT_THROW(series_from_json(doc), SchemaError);
  doc["schema_version"] = "1.7";
  EXPECT_NO_THROW(series_from_json(doc));
  doc["schema_version"] = "one";
  EXPECT_THROW(series_from_json(doc), SchemaError);
  doc.erase("schema_version");
  EXPECT_THROW(series_from_json(doc), SchemaError);
}

TEST(Files, MalformedAndMissing) {
  EXPECT_THROW(read_json(data("malformed.json")), SchemaError);
  EXPECT_THROW(read_json(data("does_not_exist.json")), Error);
}

TEST(Reports, JsonAndCsv) {
  VerificationReport r;
  r.inequality_name = "demo";
  r.samples = 3;
  r.max_ratio = 1.5;
  r.quantiles = quantile_table({1.0, 1.25, 1.5});
  r.per_length.push_back({4, 3, 1.5, 1.25});
  const Json j = to_json(r);
  EXPECT_EQ(j["inequality_name"], "demo");
  EXPECT_EQ(j["ceiling"], "inf");
  EXPECT_EQ(j["quantiles"].size(), 7u);

  const auto csv = quantile_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "level,value");
  EXPECT_NE(csv.find("0.5,1.25"), std::string::npos);

  const auto path = scratch("report.json");
  save_report(r, path);
  const auto back = read_json(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back["schema_version"], schema_version());
  EXPECT_EQ(back["max_ratio"], 1.5);

  EXPECT_EQ(real_to_json(-INFINITY), "-inf");
  EXPECT_TRUE(real_to_json(NAN) == "nan");
}
