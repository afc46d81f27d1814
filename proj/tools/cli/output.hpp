// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace pulsetls::cli {

enum class Format { kCsv, kJson };

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless
};

// Numeric table; every cell is a double.
struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

// Header "name [unit],..." then one line per row, each value printed with
// nine significant digits.
std::string to_csv(const Table& table);
// {"columns": [...], "units": [...], "rows": [[...], ...]}; NaN becomes null.
std::string to_json(const Table& table);

std::string format_value(double v);

// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& bytes);

// Records the files of one run and writes manifest.json next to them.
class RunManifest {
 public:
  RunManifest(std::filesystem::path out_dir, std::string command,
              nlohmann::json config);

  const std::filesystem::path& out_dir() const { return out_dir_; }

  // Writes <out_dir>/<relative stem>.<csv|json> and records its digest.
  void write_table(const std::string& stem, const Table& table, Format format);
  void write_text(const std::string& relative, const std::string& content);

  void add_warning(const std::string& w) { warnings_.push_back(w); }
  nlohmann::json& summary() { return summary_; }
  const std::vector<std::string>& files() const { return files_; }

  // Writes manifest.json and returns its path.
  std::filesystem::path finish(int exit_code);

 private:
  std::filesystem::path out_dir_;
  std::string command_;
  nlohmann::json config_;
  nlohmann::json file_entries_ = nlohmann::json::array();
  std::vector<std::string> files_;
  std::vector<std::string> warnings_;
  nlohmann::json summary_ = nlohmann::json::object();
  std::chrono::steady_clock::time_point started_;
  std::chrono::system_clock::time_point started_wall_;
};

}  // namespace pulsetls::cli
