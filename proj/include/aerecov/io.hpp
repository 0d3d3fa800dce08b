#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "aerecov/datagen.hpp"
#include "aerecov/dictionary.hpp"

namespace aerecov::io {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Writes one CSV row, newline-terminated.
std::string csv_row(const std::vector<std::string>& fields);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// Matrix as headerless CSV, one row per line.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& M);
Matrix read_matrix_csv(const std::filesystem::path& path);

/// Writes `<stem>.csv` and the sidecar `<stem>.json` {m, n, generator, seed}.
void save_dictionary(const std::filesystem::path& stem, const Dictionary& dict);
Dictionary load_dictionary(const std::filesystem::path& stem);

/// Writes `<stem>.csv` and the sidecar `<stem>.json` {scale_c, b_d, noise, seeds}.
void save_data_batch(const std::filesystem::path& stem, const DataBatch& data);
DataBatch load_data_batch(const std::filesystem::path& stem);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace aerecov::io
