// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli/output.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <utility>

#include "pulsetls/pulsetls.h"

namespace pulsetls::cli {

using nlohmann::json;

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("row width does not match the table header");
  }
  rows.push_back(std::move(row));
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c].name + " [" + table.columns[c].unit + "]";
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_value(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table) {
  json j;
  j["columns"] = json::array();
  j["units"] = json::array();
  for (const auto& c : table.columns) {
    j["columns"].push_back(c.name);
    j["units"].push_back(c.unit);
  }
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (double v : row) {
      if (std::isfinite(v)) {
        r.push_back(v);
      } else {
        r.push_back(nullptr);
      }
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump() + "\n";
}

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(
      EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

RunManifest::RunManifest(std::filesystem::path out_dir, std::string command,
                         json config)
    : out_dir_(std::move(out_dir)),
      command_(std::move(command)),
      config_(std::move(config)),
      started_(std::chrono::steady_clock::now()),
      started_wall_(std::chrono::system_clock::now()) {
  std::filesystem::create_directories(out_dir_);
}

void RunManifest::write_text(const std::string& relative,
                             const std::string& content) {
  const auto path = out_dir_ / relative;
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
  files_.push_back(relative);
  file_entries_.push_back({{"path", relative},
                           {"bytes", content.size()},
                           {"sha256", sha256_hex(content)}});
}

void RunManifest::write_table(const std::string& stem, const Table& table,
                              Format format) {
  if (format == Format::kCsv) {
    write_text(stem + ".csv", to_csv(table));
  } else {
    write_text(stem + ".json", to_json(table));
  }
}

std::filesystem::path RunManifest::finish(int exit_code) {
  const double seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - started_)
                              .count();
  const std::time_t t = std::chrono::system_clock::to_time_t(started_wall_);
  std::tm utc{};
  gmtime_r(&t, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);

  json m;
  m["artifact"] = "pulsetls";
  m["version"] = ptls_version();
  m["command"] = command_;
  m["config"] = config_;
  m["started_utc"] = stamp;
  m["wall_clock_seconds"] = seconds;
  m["exit_code"] = exit_code;
  m["files"] = file_entries_;
  m["warnings"] = warnings_;
  m["summary"] = summary_;
  const auto path = out_dir_ / "manifest.json";
  std::ofstream out(path, std::ios::trunc);
  out << m.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return path;
}

}  // namespace pulsetls::cli
