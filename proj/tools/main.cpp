// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

// pulsetls: figure-data drivers for the pulsed two-level emitter simulator.

#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/output.hpp"

namespace cli = pulsetls::cli;

namespace {

struct CommonFlags {
  std::string config_path;
  std::string preset = "ideal";
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trajectories;
  int threads = 0;
  std::string format = "csv";
  std::string area;
  bool allow_regime_violation = false;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config_path, "JSON experiment config")
      ->check(CLI::ExistingFile);
  app->add_option("--preset", f.preset,
                  "Built-in parameter set when no config is given")
      ->check(CLI::IsMember(cli::preset_names()));
  app->add_option("--out", f.out_dir, "Output directory");
  app->add_option("--seed", f.seed, "Master seed for trajectory streams");
  app->add_option("--trajectories", f.trajectories,
                  "Number of Monte Carlo trajectories")
      ->check(CLI::PositiveNumber);
  app->add_option("--threads", f.threads,
                  "Worker threads (speed only; 0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--format", f.format, "Table format")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--area", f.area,
                  "Pulse area, e.g. 2pi, pi/2 or 3.1416 (radians)");
  app->add_flag("--allow-regime-violation", f.allow_regime_violation,
                "Exit 0 even when p1 dips below -1e-6");
}

cli::ExperimentConfig resolve_config(const CommonFlags& f) {
  cli::ExperimentConfig c =
      f.config_path.empty() ? cli::preset(f.preset) : cli::load_config(f.config_path);
  if (f.seed) c.run.master_seed = *f.seed;
  if (f.trajectories) c.run.n_trajectories = *f.trajectories;
  if (!f.area.empty()) {
    c.pulse.area = cli::parse_area(f.area);
    if (c.scan && c.scan->variable == "area") c.scan.reset();
  }
  c.validate();
  return c;
}

cli::RunOptions resolve_options(const CommonFlags& f,
                                const std::string& default_out) {
  cli::RunOptions o;
  o.out_dir = f.out_dir.empty() ? default_out : f.out_dir;
  o.format = f.format == "json" ? cli::Format::kJson : cli::Format::kCsv;
  o.threads = f.threads > 0
                  ? f.threads
                  : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  o.allow_regime_violation = f.allow_regime_violation;
  o.area_override = !f.area.empty();
  return o;
}

using Command = std::function<int(const cli::ExperimentConfig&,
                                  const cli::RunOptions&, cli::RunManifest&)>;

// Shared driver: resolve inputs, run, write the manifest, map failures to
// exit codes.
int execute(const std::string& name, const CommonFlags& flags,
            const Command& command) {
  std::optional<cli::RunManifest> manifest;
  try {
    const cli::ExperimentConfig config = resolve_config(flags);
    const cli::RunOptions options = resolve_options(flags, "out/" + name);
    manifest.emplace(options.out_dir, name, cli::config_to_json(config));
    const int code = command(config, options, *manifest);
    const auto path = manifest->finish(code);
    if (code == cli::kExitRegime) {
      std::cerr << "error: regime violation (negative single-photon density); "
                   "outputs were written, see "
                << path.string() << "\n";
    }
    std::cout << path.string() << "\n";
    return code;
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    if (manifest) manifest->finish(cli::kExitConfig);
    return cli::kExitConfig;
  } catch (const cli::CommandError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (manifest) manifest->finish(e.exit_code());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return cli::kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulsed two-level emitter: photon statistics and figure data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ptls_version()));

  CommonFlags flags;
  std::function<int()> action;

  struct Entry {
    const char* name;
    const char* help;
    Command command;
  };
  const Entry entries[] = {
      {"rabi", "Final-state population and emitted photon number vs area",
       cli::cmd_rabi},
      {"photocounts", "Photocount distribution P_n and purities pi_n",
       cli::cmd_photocounts},
      {"correlations", "Pair density p2(t1, tau) and marginals",
       cli::cmd_correlations},
      {"g2scan", "Integrated g2[0] over an area or pulse-length scan",
       cli::cmd_g2scan},
      {"spectrum", "Pulse-integrated emission spectra", cli::cmd_spectrum},
      {"trajectory", "One quantum trajectory with its jump record",
       cli::cmd_trajectory},
  };
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, flags);
    sub->callback([&action, &flags, e] {
      action = [&flags, e] { return execute(e.name, flags, e.command); };
    });
  }

  std::string figure;
  CLI::App* repro = app.add_subcommand("repro", "Regenerate the data of one recipe");
  repro->add_option("figure", figure, "Recipe id")
      ->required()
      ->check(CLI::IsMember(cli::figure_ids()));
  add_common(repro, flags);
  repro->callback([&] {
    action = [&] {
      return execute("repro_" + figure, flags,
                     [&](const cli::ExperimentConfig& c,
                         const cli::RunOptions& o, cli::RunManifest& m) {
                       return cli::cmd_repro(figure, c, o, m);
                     });
    };
  });

  CLI::App* show = app.add_subcommand(
      "show-config", "Print the resolved experiment config as JSON");
  add_common(show, flags);
  bool normalized = false;
  show->add_flag("--normalized", normalized,
                 "Print in units of tau_e instead of the config's own");
  show->callback([&] {
    action = [&] {
      try {
        cli::ExperimentConfig c = resolve_config(flags);
        if (normalized) c = c.normalized();
        std::cout << cli::config_to_json(c).dump(2) << "\n";
        return cli::kExitOk;
      } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return cli::kExitConfig;
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitConfig;
  }
  return action ? action() : cli::kExitConfig;
}
