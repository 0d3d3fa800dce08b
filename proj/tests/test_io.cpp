#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <nlohmann/json.hpp>

#include "aerecov/io.hpp"

using namespace aerecov;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("aerecov_io_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(1.0), "1");
  EXPECT_EQ(io::format_double(-2.5e-10), "-2.5e-10");
  const double awkward = 0.1 + 0.2;
  EXPECT_EQ(std::stod(io::format_double(awkward)), awkward);
}

TEST(CsvRow, JoinsWithCommas) {
  EXPECT_EQ(io::csv_row({"a", "1", ""}), "a,1,\n");
}

TEST(MatrixCsv, RoundTripIsExact) {
  const fs::path dir = scratch("matrix");
  const Matrix M = Matrix::Random(7, 5) * 1e3;
  io::write_matrix_csv(dir / "m.csv", M);
  EXPECT_EQ(io::read_matrix_csv(dir / "m.csv"), M);
  fs::remove_all(dir);
}

TEST(MatrixCsv, RejectsRaggedAndGarbage) {
  const fs::path dir = scratch("ragged");
  io::write_text(dir / "r.csv", "1,2\n3\n");
  EXPECT_THROW(io::read_matrix_csv(dir / "r.csv"), std::runtime_error);
  io::write_text(dir / "g.csv", "1,x\n");
  EXPECT_THROW(io::read_matrix_csv(dir / "g.csv"), std::runtime_error);
  EXPECT_THROW(io::read_matrix_csv(dir / "missing.csv"), std::exception);
  fs::remove_all(dir);
}

TEST(Dictionary, RoundTripKeepsMetadata) {
  const fs::path dir = scratch("dict");
  const auto dict = gen_plain_gaussian(6, 4, 42);
  io::save_dictionary(dir / "d", dict);
  EXPECT_TRUE(fs::exists(dir / "d.csv"));
  EXPECT_TRUE(fs::exists(dir / "d.json"));
  const auto back = io::load_dictionary(dir / "d");
  EXPECT_EQ(back.W, dict.W);
  EXPECT_EQ(back.generator, Generator::PlainGaussian);
  EXPECT_EQ(back.seed, 42u);
  fs::remove_all(dir);
}

TEST(DataBatch, RoundTripKeepsSidecar) {
  const fs::path dir = scratch("data");
  const auto dict = gen_orthogonalized_gaussian(6, 4, 1);
  const auto params = BinsParams::broadcast(6, 0.3, FcKind::UniformOnZeroToLmax, 1.0);
  const auto data = generate_data(dict, sample_signals(params, 6, 20, 2), Vector::LinSpaced(4, 0.0, 1.0), 2.0,
                                  NoiseSpec{1.0, 0.5}, 3);
  io::save_data_batch(dir / "x", data);
  const auto back = io::load_data_batch(dir / "x");
  EXPECT_EQ(back.X, data.X);
  EXPECT_EQ(back.scale_c, 2.0);
  EXPECT_EQ(back.b_d, data.b_d);
  ASSERT_TRUE(back.noise.has_value());
  EXPECT_EQ(back.noise->mean, 1.0);
  EXPECT_EQ(back.noise->std, 0.5);
  EXPECT_EQ(back.source_seed, data.source_seed);
  fs::remove_all(dir);
}

TEST(Json, RoundTrip) {
  const fs::path dir = scratch("json");
  const nlohmann::json j{{"a", 1}, {"b", {1.5, 2.5}}};
  io::write_json(dir / "nested" / "j.json", j);
  EXPECT_EQ(io::read_json(dir / "nested" / "j.json"), j);
  fs::remove_all(dir);
}
