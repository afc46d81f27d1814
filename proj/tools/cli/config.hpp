// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pulsetls/pulsetls.h"

namespace pulsetls::cli {

// Malformed or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridOverrides {
  std::optional<double> t_start;
  std::optional<double> t_end;
  std::optional<double> dt;
};

struct RunSettings {
  std::int64_t n_trajectories = 100000;
  std::uint64_t master_seed = 0;
  double tau_max = 0.0;  // 0 selects 10 tau_e
  double omega_range = 40.0;  // in units of gamma
  std::int64_t omega_points = 2001;
  double detector_linewidth = 0.0;
  // Decimation of stored correlation matrices; 0 picks a stride that keeps
  // the long-form CSV to a few hundred thousand rows.
  std::int64_t t1_stride = 0;
  std::int64_t tau_stride = 0;
};

struct Scan {
  std::string variable;  // "area" or "tau_fwhm"
  std::vector<double> values;
};

// Everything a run needs, in the time unit the user wrote. normalized()
// rescales to tau_e = 1 / gamma: times are multiplied by gamma, rates divided
// by it and the phonon coefficient multiplied by it.
struct ExperimentConfig {
  std::string time_unit = "tau_e";  // label only, echoed in manifests
  ptls_system system{1.0, 0.0, 0.0};
  ptls_pulse pulse{3.141592653589793, 0.1, 0.0, 0.0, 0.0};
  GridOverrides grid;
  RunSettings run;
  std::optional<Scan> scan;

  void validate() const;
  ExperimentConfig normalized() const;
  // Default grid from the library with any overrides applied. Call on a
  // normalized config.
  ptls_grid resolved_grid() const;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

// "2pi", "pi/2", "3pi/2", "1.5 pi", "6.283". Throws ConfigError.
double parse_area(const std::string& text);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

// Built-in parameter sets: "ideal" and "experimental".
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// Areas start, start + step, ..., stop (inclusive within step / 2).
std::vector<double> linear_range(double start, double stop, double step);

}  // namespace pulsetls::cli
