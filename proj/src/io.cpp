#include "aerecov/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace aerecov::io {

namespace fs = std::filesystem;

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) line += ',';
    line += fields[k];
  }
  line += '\n';
  return line;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_matrix_csv(const fs::path& path, const Matrix& M) {
  std::string text;
  for (Index i = 0; i < M.rows(); ++i) {
    std::vector<std::string> fields;
    fields.reserve(static_cast<std::size_t>(M.cols()));
    for (Index j = 0; j < M.cols(); ++j) fields.push_back(format_double(M(i, j)));
    text += csv_row(fields);
  }
  write_text(path, text);
}

Matrix read_matrix_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t end = std::min(line.find(',', start), line.size());
      double value = 0.0;
      const auto result = std::from_chars(line.data() + start, line.data() + end, value);
      if (result.ec != std::errc())
        throw std::runtime_error("malformed number in '" + path.string() + "'");
      row.push_back(value);
      start = end + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("ragged matrix rows in '" + path.string() + "'");
    rows.push_back(std::move(row));
  }
  Matrix M(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows[0].size()));
  for (Index i = 0; i < M.rows(); ++i)
    for (Index j = 0; j < M.cols(); ++j)
      M(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return M;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const fs::path& path) {
  return nlohmann::json::parse(read_text(path));
}

namespace {

fs::path with_suffix(const fs::path& stem, const char* suffix) {
  return fs::path(stem.string() + suffix);
}

}  // namespace

void save_dictionary(const fs::path& stem, const Dictionary& dict) {
  write_matrix_csv(with_suffix(stem, ".csv"), dict.W);
  write_json(with_suffix(stem, ".json"), {{"m", dict.units()},
                                          {"n", dict.data_dim()},
                                          {"generator", to_string(dict.generator)},
                                          {"seed", dict.seed}});
}

Dictionary load_dictionary(const fs::path& stem) {
  const auto meta = read_json(with_suffix(stem, ".json"));
  Matrix W = read_matrix_csv(with_suffix(stem, ".csv"));
  if (W.rows() != meta.at("m").get<Index>() || W.cols() != meta.at("n").get<Index>())
    throw std::runtime_error("dictionary '" + stem.string() + "': shape differs from sidecar");
  return Dictionary{std::move(W), generator_from_string(meta.at("generator")),
                    meta.at("seed").get<Seed>()};
}

void save_data_batch(const fs::path& stem, const DataBatch& data) {
  write_matrix_csv(with_suffix(stem, ".csv"), data.X);
  nlohmann::json meta{{"scale_c", data.scale_c},
                      {"b_d", std::vector<double>(data.b_d.data(), data.b_d.data() + data.b_d.size())},
                      {"noise", nullptr},
                      {"seeds", {{"source", data.source_seed}}}};
  if (data.noise) meta["noise"] = *data.noise;
  write_json(with_suffix(stem, ".json"), meta);
}

DataBatch load_data_batch(const fs::path& stem) {
  const auto meta = read_json(with_suffix(stem, ".json"));
  DataBatch data;
  data.X = read_matrix_csv(with_suffix(stem, ".csv"));
  data.scale_c = meta.at("scale_c").get<double>();
  const auto b_d = meta.at("b_d").get<std::vector<double>>();
  data.b_d = Eigen::Map<const Vector>(b_d.data(), static_cast<Index>(b_d.size()));
  if (!meta.at("noise").is_null()) data.noise = noise_spec_from_json(meta.at("noise"));
  data.source_seed = meta.at("seeds").at("source").get<Seed>();
  return data;
}

}  // namespace aerecov::io
