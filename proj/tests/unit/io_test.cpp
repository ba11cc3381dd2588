#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "gsteer/error.hpp"
#include "gsteer/fixtures.hpp"
#include "gsteer/io/cm_file.hpp"
#include "gsteer/io/model_file.hpp"
#include "gsteer/io/report.hpp"
#include "gsteer/io/tolerance_file.hpp"
#include "random_states.hpp"

namespace gsteer::io {
namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gsteer_io_test_" + name);
}

TEST(CmFile, RoundTripIsExact) {
  testing::Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 1, 6);
    const CovarianceMatrix cm(testing::random_physical_cm(n, rng));
    const auto doc = parse_cm(format_cm(cm, "random state"));
    EXPECT_EQ(doc.cm.entries(), cm.entries());
    EXPECT_EQ(doc.provenance, "random state");
  }
}

TEST(CmFile, LabelsAndFileRoundTrip) {
  const auto cm = simulate_cm(fixtures::default_comb().at_resolution(8));
  const auto path = temp_path("labels.cm");
  write_cm_file(path, cm, "default at 8 pixels");
  const auto doc = load_cm_file(path);
  EXPECT_EQ(doc.cm.labels(), cm.labels());
  EXPECT_EQ(doc.cm.entries(), cm.entries());
  std::filesystem::remove(path);
}

TEST(CmFile, XxppBodyIsPermuted) {
  const auto cm = fixtures::two_mode_squeezed_vacuum(0.3);
  const std::string text = format_cm(cm, {}, QuadratureOrdering::kXxpp);
  EXPECT_NE(text.find("ordering xxpp"), std::string::npos);
  const auto doc = parse_cm(text);
  EXPECT_EQ(doc.ordering, QuadratureOrdering::kXxpp);
  EXPECT_EQ(doc.cm.entries(), cm.entries());

  const std::string manual =
      "gsteer-cm 1\nn_modes 2\nordering xxpp\nmatrix\n"
      "1 0 0 0\n0 2 0 0\n0 0 3 0\n0 0 0 4\n";
  const auto permuted = parse_cm(manual).cm.entries();
  EXPECT_EQ(permuted(0, 0), 1.0);
  EXPECT_EQ(permuted(1, 1), 3.0);
  EXPECT_EQ(permuted(2, 2), 2.0);
  EXPECT_EQ(permuted(3, 3), 4.0);
}

TEST(CmFile, HalfVacuumNormalizationIsScaled) {
  const std::string text =
      "# comment\n\ngsteer-cm 1\nn_modes 1\nnormalization vacuum=0.5\nmatrix\n0.5 0\n0 0.5\n";
  EXPECT_EQ(parse_cm(text).cm.entries(), Matrix::Identity(2, 2));
}

TEST(CmFile, ParseErrorsCarryPosition) {
  const auto expect_at = [](const std::string& text, std::size_t line, std::size_t column) {
    try {
      parse_cm(text);
      ADD_FAILURE() << "no error for:\n" << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << e.what();
      EXPECT_EQ(e.column(), column) << e.what();
    }
  };
  expect_at("gsteer-cm 1\nn_modes 1\nmatrix\n1 0\n0 x1\n", 5, 3);
  expect_at("gsteer-cm 1\nn_modes 1\nmatrix\n1 0\n", 5, 1);
  expect_at("gsteer-cm 1\nn_modes 1\nmatrix\n1 0 0\n0 1\n", 4, 1);
  expect_at("gsteer-cm 2\n", 1, 11);
  expect_at("gsteer-cm 1\nn_modes 1\ncolour red\nmatrix\n1 0\n0 1\n", 3, 1);
  expect_at("gsteer-cm 1\nn_modes 1\nordering qqpp\nmatrix\n1 0\n0 1\n", 3, 10);
  expect_at("gsteer-cm 1\nn_modes 2\nlabels A B C\nmatrix\n", 3, 1);
  expect_at("gsteer-cm 1\nn_modes 1\nmatrix\n1 0\n0 1\n1 1\n", 6, 1);
  expect_at("", 1, 1);
}

TEST(CmFile, LoadRejectsUnphysicalAndMissingFiles) {
  const auto path = temp_path("half.cm");
  write_text_file(path, "gsteer-cm 1\nn_modes 1\nmatrix\n0.5 0\n0 0.5\n");
  EXPECT_NO_THROW(read_cm_file(path));
  EXPECT_THROW(load_cm_file(path), StateError);
  std::filesystem::remove(path);
  EXPECT_THROW(read_cm_file(temp_path("does_not_exist.cm")), IoError);
}

TEST(ModelFile, RoundTripsEveryFixture) {
  for (const auto& model : {fixtures::default_comb(), fixtures::single_eigenmode(),
                            fixtures::one_way(), fixtures::mirror_pairs(), fixtures::tmsv_like(0.7)}) {
    EXPECT_EQ(model_from_json(model_to_json(model)), model);
  }
}

TEST(ModelFile, SchemaErrors) {
  const nlohmann::json good = model_to_json(fixtures::default_comb());
  auto doc = good;
  doc["colour"] = "red";
  EXPECT_THROW(model_from_json(doc), SchemaError);
  doc = good;
  doc["schema"] = "gsteer-model/2";
  EXPECT_THROW(model_from_json(doc), SchemaError);
  doc = good;
  doc.erase("eigenmodes");
  EXPECT_THROW(model_from_json(doc), SchemaError);
  doc = good;
  doc["eigenmodes"][0]["squeezed_quadrature"] = "y";
  EXPECT_THROW(model_from_json(doc), SchemaError);
  doc = good;
  doc["eigenmodes"][0]["bogus"] = 1;
  EXPECT_THROW(model_from_json(doc), SchemaError);
  doc = good;
  doc["n_pixels"] = "16";
  EXPECT_THROW(model_from_json(doc), SchemaError);
  doc = good;
  doc["efficiency"] = 1.5;
  EXPECT_THROW(model_from_json(doc), ModelError);
}

TEST(ModelFile, JsonSyntaxErrorHasPosition) {
  try {
    parse_json_text("{\n  \"a\": 1,\n  \"b\": ]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Report, DeterministicEnvelope) {
  const auto cm = simulate_cm(fixtures::default_comb().at_resolution(4));
  const auto spectrum = steering_spectrum(cm, EnumerationMode::kDisjointPairs);
  const auto make = [&] {
    return dump_report(make_report("spectrum", {{"cm", "x.cm", "00"}}, {{"mode", "pairs"}},
                                   to_json(spectrum, cm)));
  };
  const std::string a = make();
  EXPECT_EQ(a, make());
  EXPECT_EQ(a.back(), '\n');
  const auto parsed = nlohmann::json::parse(a);
  EXPECT_EQ(parsed["schema"], kReportSchema);
  EXPECT_EQ(parsed["kind"], "spectrum");
  EXPECT_TRUE(parsed.contains("toolkit_version"));
  EXPECT_EQ(parsed["inputs"][0]["name"], "x.cm");
}

TEST(Report, SpectrumCsvHasOneRowPerPartition) {
  const auto cm = simulate_cm(fixtures::default_comb().at_resolution(4));
  const auto spectrum = steering_spectrum(cm, EnumerationMode::kDisjointPairs);
  const std::string csv = spectrum_csv(spectrum, cm);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 51);
}

TEST(ToleranceFile, OverridesSubset) {
  const auto tol = tolerances_from_json(nlohmann::json{{"steer_epsilon", 1e-6}});
  EXPECT_EQ(tol.steer_epsilon, 1e-6);
  EXPECT_EQ(tol.max_condition, Tolerances{}.max_condition);
  EXPECT_THROW(tolerances_from_json(nlohmann::json{{"typo", 1.0}}), SchemaError);
  EXPECT_THROW(tolerances_from_json(nlohmann::json{{"pairing", -1.0}}), SchemaError);
  EXPECT_THROW(tolerances_from_json(nlohmann::json::array()), SchemaError);
}

}  // namespace
}  // namespace gsteer::io
