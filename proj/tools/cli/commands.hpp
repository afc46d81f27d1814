// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/output.hpp"

namespace pulsetls::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitRegime = 4;

// A library call failed; carries the exit code for its status.
class CommandError : public std::runtime_error {
 public:
  CommandError(int exit_code, const std::string& what)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

int exit_code_for(ptls_status status);

struct RunOptions {
  std::filesystem::path out_dir = "out";
  Format format = Format::kCsv;
  int threads = 1;
  // Keep exit code 0 when p1 dips below -1e-6; outputs are written either way.
  bool allow_regime_violation = false;
  // An explicit --area replaces the command's default area scan.
  bool area_override = false;
};

// Each command writes its tables through the manifest and returns the exit
// code. Library failures surface as CommandError before any partial table
// is written, except for regime violations, which are reported after the
// outputs exist.
int cmd_rabi(const ExperimentConfig& config, const RunOptions& options,
             RunManifest& manifest);
int cmd_photocounts(const ExperimentConfig& config, const RunOptions& options,
                    RunManifest& manifest);
int cmd_correlations(const ExperimentConfig& config, const RunOptions& options,
                     RunManifest& manifest);
int cmd_g2scan(const ExperimentConfig& config, const RunOptions& options,
               RunManifest& manifest);
int cmd_spectrum(const ExperimentConfig& config, const RunOptions& options,
                 RunManifest& manifest);
int cmd_trajectory(const ExperimentConfig& config, const RunOptions& options,
                   RunManifest& manifest);

std::vector<std::string> figure_ids();

// Runs the recipe for one figure. The base config supplies run settings
// (seed, trajectory count); the recipe fixes the physics.
int cmd_repro(const std::string& figure, const ExperimentConfig& base,
              const RunOptions& options, RunManifest& manifest);

}  // namespace pulsetls::cli
