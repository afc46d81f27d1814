// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>

namespace pulsetls::cli {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check(ptls_status status) {
  if (status != PTLS_OK) {
    throw CommandError(exit_code_for(status), ptls_last_error());
  }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Correlations =
    std::unique_ptr<ptls_correlations,
                    Deleter<ptls_correlations, ptls_correlations_free>>;
using Photocounts =
    std::unique_ptr<ptls_photocounts,
                    Deleter<ptls_photocounts, ptls_photocounts_free>>;
using Spectrum =
    std::unique_ptr<ptls_spectrum, Deleter<ptls_spectrum, ptls_spectrum_free>>;
using TrajectoryHandle =
    std::unique_ptr<ptls_trajectory,
                    Deleter<ptls_trajectory, ptls_trajectory_free>>;

// Default grid for this pulse with the config's overrides applied.
ptls_grid grid_for(const ExperimentConfig& c, const ptls_pulse& pulse) {
  ExperimentConfig copy = c;
  copy.pulse = pulse;
  return copy.resolved_grid();
}

bool has_grid_override(const ExperimentConfig& c) {
  return c.grid.t_start || c.grid.t_end || c.grid.dt;
}

std::string area_label(double area) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fpi", area / kPi);
  return buf;
}

std::vector<double> area_values(const ExperimentConfig& c,
                                const RunOptions& options,
                                const std::vector<double>& fallback,
                                const char* command) {
  if (!c.scan) {
    return options.area_override ? std::vector<double>{c.pulse.area}
                                 : fallback;
  }
  if (c.scan->variable != "area") {
    throw ConfigError(std::string(command) + " scans pulse area only");
  }
  return c.scan->values;
}

// Runs body(i) for i in [0, n) on up to `threads` workers. The first
// failure by index is rethrown, so errors are reported deterministically.
template <typename F>
void for_each_point(std::size_t n, int threads, F&& body) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  }
  return s;
}

// Rounding noise in densities is removed only when writing; integrals use
// the raw values. p1 is never clipped because its sign is the diagnostic.
double clip(double v) { return v < 0.0 ? 0.0 : v; }

json finite_or_null(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

struct G2Point {
  double g2_zero = kNaN;
  double e_n = kNaN;
  double e_n_n_minus_1 = kNaN;
};

// g2[0] over a list of areas or pulse lengths, one point per worker. A point
// without emission yields NaN rather than failing the scan.
std::vector<G2Point> g2_points(const ExperimentConfig& c,
                               const std::string& variable,
                               const std::vector<double>& values,
                               int threads) {
  std::vector<G2Point> out(values.size());
  for_each_point(values.size(), threads, [&](std::size_t i) {
    ptls_pulse p = c.pulse;
    if (variable == "area") {
      p.area = values[i];
    } else {
      p.tau_fwhm = values[i];
    }
    const ptls_grid g = grid_for(c, p);
    ptls_g2_summary s{};
    const ptls_status st = ptls_g2_zero(&c.system, &p, &g, c.run.tau_max, 1, &s);
    if (st == PTLS_ERR_DEGENERATE) return;
    check(st);
    out[i] = {s.g2_zero, s.e_n, s.e_n_n_minus_1};
  });
  return out;
}

// Leading scan columns; pulse lengths are also given in the config's own
// time unit when that differs from tau_e.
void add_scan_columns(Table& t, const std::string& variable,
                      const std::string& raw_unit) {
  if (variable == "area") {
    t.columns.push_back({"area", "rad"});
    t.columns.push_back({"area_over_pi", "1"});
  } else {
    t.columns.push_back({"tau_fwhm", "tau_e"});
    if (raw_unit != "tau_e") t.columns.push_back({"tau_fwhm", raw_unit});
  }
}

std::vector<double> scan_cells(const std::string& variable, double value,
                               const std::string& raw_unit, double gamma_raw) {
  if (variable == "area") return {value, value / kPi};
  if (raw_unit != "tau_e") return {value, value / gamma_raw};
  return {value};
}

Table g2_table(const ExperimentConfig& raw, const ExperimentConfig& c,
               const std::string& variable, const std::vector<double>& values,
               int threads) {
  const auto points = g2_points(c, variable, values, threads);
  Table t;
  add_scan_columns(t, variable, raw.time_unit);
  t.columns.insert(t.columns.end(), {{"g2_zero", "1"},
                                     {"expected_n", "photons"},
                                     {"e_n_n_minus_1", "photons^2"},
                                     {"laser_g2_zero", "1"}});
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto row = scan_cells(variable, values[i], raw.time_unit, raw.system.gamma);
    row.insert(row.end(), {points[i].g2_zero, points[i].e_n,
                           points[i].e_n_n_minus_1, 1.0});
    t.add_row(std::move(row));
  }
  return t;
}

std::vector<double> default_area_scan(double start) {
  return linear_range(start, 6.0 * kPi, 0.05 * kPi);
}

}  // namespace

int exit_code_for(ptls_status status) {
  switch (status) {
    case PTLS_OK: return kExitOk;
    case PTLS_ERR_INVALID_ARGUMENT: return kExitConfig;
    case PTLS_ERR_NUMERICAL_GUARD: return kExitNumerical;
    case PTLS_ERR_REGIME_VIOLATION: return kExitRegime;
    case PTLS_ERR_DEGENERATE: return kExitNumerical;
    case PTLS_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

int cmd_rabi(const ExperimentConfig& config, const RunOptions& options,
             RunManifest& manifest) {
  const ExperimentConfig c = config.normalized();
  const auto areas = area_values(c, options, default_area_scan(0.0), "rabi");
  std::optional<ptls_grid> grid;
  if (has_grid_override(c)) grid = c.resolved_grid();
  std::vector<ptls_rabi_point> points(areas.size());
  check(ptls_rabi_scan(&c.system, &c.pulse, areas.data(), areas.size(),
                       grid ? &*grid : nullptr, options.threads,
                       points.data()));
  Table t;
  t.columns = {{"area", "rad"},
               {"area_over_pi", "1"},
               {"pe_ideal", "1"},
               {"post_pulse_pe", "1"},
               {"expected_n", "photons"}};
  for (const auto& p : points) {
    t.add_row({p.area, p.area / kPi, p.pe_ideal, p.post_pulse_pe,
               p.expected_n});
  }
  manifest.write_table("rabi", t, options.format);
  manifest.summary()["points"] = points.size();
  return kExitOk;
}

int cmd_photocounts(const ExperimentConfig& config, const RunOptions& options,
                    RunManifest& manifest) {
  const ExperimentConfig c = config.normalized();
  const auto areas = area_values(c, options, {c.pulse.area}, "photocounts");
  Table t;
  t.columns.push_back({"area", "rad"});
  for (int n = 0; n <= 3; ++n) {
    t.columns.push_back({"P_" + std::to_string(n), "1"});
  }
  for (int n = 0; n <= 3; ++n) {
    t.columns.push_back({"stderr_P_" + std::to_string(n), "1"});
  }
  for (int n = 1; n <= 3; ++n) {
    t.columns.push_back({"pi_" + std::to_string(n), "1"});
  }
  t.columns.insert(t.columns.end(),
                   {{"expected_n", "photons"},
                    {"stderr_expected_n", "photons"},
                    {"g2_zero", "1"},
                    {"stderr_g2_zero", "1"}});
  for (int n = 0; n <= 3; ++n) {
    t.columns.push_back({"master_eq_P_" + std::to_string(n), "1"});
  }
  t.columns.push_back({"regression_P_1", "1"});
  t.columns.push_back({"regression_P_2", "1"});

  constexpr int kMaxPhotons = 8;
  for (double area : areas) {
    ptls_pulse p = c.pulse;
    p.area = area;
    const ptls_grid g = grid_for(c, p);

    ptls_photocounts* raw_pc = nullptr;
    check(ptls_photocounts_run(&c.system, &p, &g, c.run.n_trajectories,
                               c.run.master_seed, options.threads, &raw_pc));
    const Photocounts pc(raw_pc);

    double me[kMaxPhotons + 1];
    check(ptls_photon_number_distribution(&c.system, &p, &g, kMaxPhotons, me,
                                          nullptr));

    ptls_correlation_options o;
    ptls_correlation_options_init(&o);
    o.tau_max = c.run.tau_max;
    o.t1_output_end = -std::numeric_limits<double>::infinity();
    o.threads = options.threads;
    ptls_correlations* raw_corr = nullptr;
    const ptls_status st = ptls_correlations_run(&c.system, &p, &g, &o, &raw_corr);
    const Correlations corr(raw_corr);
    if (st != PTLS_ERR_REGIME_VIOLATION) check(st);
    ptls_correlation_summary s{};
    ptls_correlations_summary(corr.get(), &s);

    std::vector<double> row{area};
    for (int n = 0; n <= 3; ++n) {
      row.push_back(ptls_photocounts_probability(pc.get(), n));
    }
    for (int n = 0; n <= 3; ++n) {
      row.push_back(ptls_photocounts_std_err(pc.get(), n));
    }
    const bool emitted = ptls_photocounts_probability(pc.get(), 0) < 1.0;
    for (int n = 1; n <= 3; ++n) {
      row.push_back(emitted ? ptls_photocounts_purity(pc.get(), n) : kNaN);
    }
    row.push_back(ptls_photocounts_expected_n(pc.get()));
    row.push_back(ptls_photocounts_expected_n_std_err(pc.get()));
    row.push_back(ptls_photocounts_g2_zero(pc.get()));
    row.push_back(ptls_photocounts_g2_zero_std_err(pc.get()));
    for (int n = 0; n <= 3; ++n) row.push_back(me[n]);
    row.push_back(s.single_probability);
    row.push_back(s.pair_probability);
    t.add_row(std::move(row));
  }
  manifest.write_table("photocounts", t, options.format);
  manifest.summary()["points"] = areas.size();
  manifest.summary()["n_trajectories"] = c.run.n_trajectories;
  manifest.summary()["master_seed"] = c.run.master_seed;
  return kExitOk;
}

int cmd_correlations(const ExperimentConfig& config, const RunOptions& options,
                     RunManifest& manifest) {
  const ExperimentConfig c = config.normalized();
  const bool scanned = c.scan.has_value();
  const auto areas = area_values(c, options, {c.pulse.area}, "correlations");
  bool violated = false;
  json summaries = json::array();

  for (double area : areas) {
    ptls_pulse p = c.pulse;
    p.area = area;
    const ptls_grid g = grid_for(c, p);

    // Keep the stored matrix to roughly 400 x 500 unless told otherwise.
    const double tau_p = p.tau_fwhm / std::sqrt(2.0 * std::log(2.0));
    const double support_end = p.center_time + 8.0 * tau_p;
    const double rows = std::max(
        1.0, std::floor((std::min(support_end, g.t_end) - g.t_start) / g.dt) +
                 1.0);
    const double tau_max = c.run.tau_max > 0.0 ? c.run.tau_max : 10.0;
    const double cols = std::floor(tau_max / g.dt) + 1.0;
    ptls_correlation_options o;
    ptls_correlation_options_init(&o);
    o.tau_max = c.run.tau_max;
    o.t1_stride = c.run.t1_stride > 0
                      ? static_cast<size_t>(c.run.t1_stride)
                      : static_cast<size_t>(std::ceil(rows / 400.0));
    o.tau_stride = c.run.tau_stride > 0
                       ? static_cast<size_t>(c.run.tau_stride)
                       : static_cast<size_t>(std::ceil(cols / 500.0));
    o.threads = options.threads;

    ptls_correlations* raw = nullptr;
    const ptls_status st = ptls_correlations_run(&c.system, &p, &g, &o, &raw);
    const Correlations corr(raw);
    const bool regime = st == PTLS_ERR_REGIME_VIOLATION;
    if (!regime) check(st);
    violated = violated || regime;

    const std::string prefix = scanned ? "area_" + area_label(area) + "/" : "";
    const auto* h = corr.get();

    Table joint;
    joint.columns = {{"t1", "tau_e"}, {"tau", "tau_e"}, {"p2", "1/tau_e^2"}};
    const size_t nt1 = ptls_correlations_t1_size(h);
    const size_t ntau = ptls_correlations_tau_size(h);
    const double* t1 = ptls_correlations_t1_axis(h);
    const double* tau = ptls_correlations_tau_axis(h);
    const double* p2 = ptls_correlations_p2_joint(h);
    joint.rows.reserve(nt1 * ntau);
    for (size_t i = 0; i < nt1; ++i) {
      for (size_t j = 0; j < ntau; ++j) {
        joint.add_row({t1[i], tau[j], clip(p2[i * ntau + j])});
      }
    }
    manifest.write_table(prefix + "p2_joint", joint, options.format);

    Table by_t1;
    by_t1.columns = {{"t1", "tau_e"},
                     {"pe", "1"},
                     {"p1", "1/tau_e"},
                     {"p2", "1/tau_e"}};
    const size_t n = ptls_correlations_grid_size(h);
    const double t0 = ptls_correlations_t_start(h);
    const double dt = ptls_correlations_dt(h);
    const double* pe = ptls_correlations_pe(h);
    const double* p1 = ptls_correlations_p1_of_t1(h);
    const double* p2t = ptls_correlations_p2_of_t1(h);
    for (size_t k = 0; k < n; ++k) {
      by_t1.add_row(
          {t0 + static_cast<double>(k) * dt, pe[k], p1[k], clip(p2t[k])});
    }
    manifest.write_table(prefix + "marginals_t1", by_t1, options.format);

    Table by_tau;
    by_tau.columns = {{"tau", "tau_e"}, {"p2", "1/tau_e"}};
    const size_t nd = ptls_correlations_delay_size(h);
    const double* p2d = ptls_correlations_p2_of_tau(h);
    for (size_t j = 0; j < nd; ++j) {
      by_tau.add_row({static_cast<double>(j) * dt, clip(p2d[j])});
    }
    manifest.write_table(prefix + "marginals_tau", by_tau, options.format);

    ptls_correlation_summary s{};
    ptls_correlations_summary(h, &s);
    json entry = {{"area", area},
                  {"P_1", s.single_probability},
                  {"P_2", s.pair_probability},
                  {"expected_n", s.expected_n},
                  {"e_n_n_minus_1", s.e_n_n_minus_1},
                  {"g2_zero", finite_or_null(s.g2_zero)},
                  {"p1_min", s.p1_min},
                  {"tail_mass_fraction", s.tail_mass_fraction},
                  {"regime_violation", regime},
                  {"t1_stride", o.t1_stride},
                  {"tau_stride", o.tau_stride}};
    summaries.push_back(entry);
    for (size_t w = 0; w < ptls_correlations_warning_count(h); ++w) {
      manifest.add_warning(ptls_correlations_warning(h, w));
    }
    if (regime) {
      manifest.add_warning("area " + area_label(area) + ": " +
                           ptls_last_error());
    }
  }
  manifest.summary()["correlations"] = summaries;
  if (violated && !options.allow_regime_violation) return kExitRegime;
  return kExitOk;
}

int cmd_g2scan(const ExperimentConfig& config, const RunOptions& options,
               RunManifest& manifest) {
  const ExperimentConfig c = config.normalized();
  const std::string variable = c.scan ? c.scan->variable : "area";
  const auto values =
      c.scan ? c.scan->values
             : area_values(c, options, default_area_scan(0.05 * kPi), "g2scan");
  const Table t = g2_table(config, c, variable, values, options.threads);
  manifest.write_table("g2scan", t, options.format);
  manifest.summary()["variable"] = variable;
  manifest.summary()["points"] = values.size();
  return kExitOk;
}

int cmd_spectrum(const ExperimentConfig& config, const RunOptions& options,
                 RunManifest& manifest) {
  const ExperimentConfig c = config.normalized();
  const auto areas = area_values(c, options, {2 * kPi, 4 * kPi, 6 * kPi}, "spectrum");
  const auto points = static_cast<std::size_t>(c.run.omega_points);
  std::vector<double> omega(points);
  for (std::size_t i = 0; i < points; ++i) {
    omega[i] = -c.run.omega_range + 2.0 * c.run.omega_range *
                                        static_cast<double>(i) /
                                        static_cast<double>(points - 1);
  }

  Table t;
  t.columns.push_back({"omega", "gamma"});
  std::vector<std::vector<double>> columns;
  json summary = json::array();
  // Natural-linewidth reference: free decay from |e>, no drive.
  auto run = [&](double area, int excited, const std::string& name) {
    ptls_pulse p = c.pulse;
    p.area = area;
    const ptls_grid g = grid_for(c, p);
    ptls_spectrum* raw = nullptr;
    check(ptls_spectrum_run(&c.system, &p, &g, c.run.tau_max, omega.data(),
                            omega.size(), c.run.detector_linewidth, excited,
                            options.threads, &raw));
    const Spectrum s(raw);
    const double* v = ptls_spectrum_values(s.get());
    columns.emplace_back(v, v + points);
    t.columns.push_back({name, "1/gamma"});
    summary.push_back({{"column", name},
                       {"area", area},
                       {"expected_n", ptls_spectrum_expected_n(s.get())},
                       {"integral", trapezoid(omega, columns.back())},
                       {"interquartile_width",
                        ptls_spectrum_interquartile_width(s.get())}});
  };
  run(0.0, 1, "S_natural");
  for (double area : areas) run(area, 0, "S_area_" + area_label(area));

  for (std::size_t i = 0; i < points; ++i) {
    std::vector<double> row{omega[i]};
    for (const auto& col : columns) row.push_back(clip(col[i]));
    t.add_row(std::move(row));
  }
  manifest.write_table("spectrum", t, options.format);
  manifest.summary()["spectra"] = summary;
  manifest.summary()["detector_linewidth"] = c.run.detector_linewidth;
  return kExitOk;
}

int cmd_trajectory(const ExperimentConfig& config, const RunOptions& options,
                   RunManifest& manifest) {
  const ExperimentConfig c = config.normalized();
  if (c.scan) throw ConfigError("trajectory does not take a scan");
  const ptls_grid g = c.resolved_grid();
  ptls_trajectory* raw = nullptr;
  check(ptls_trajectory_sample(&c.system, &c.pulse, &g, c.run.master_seed, 0,
                               &raw));
  const TrajectoryHandle h(raw);

  Table path;
  path.columns = {{"t", "tau_e"}, {"conditional_pe", "1"}};
  const size_t n = ptls_trajectory_size(h.get());
  const double* t = ptls_trajectory_times(h.get());
  const double* pe = ptls_trajectory_conditional_pe(h.get());
  for (size_t k = 0; k < n; ++k) path.add_row({t[k], pe[k]});
  manifest.write_table("trajectory", path, options.format);

  Table jumps;
  jumps.columns = {{"time", "tau_e"},
                   {"channel", "0 radiative|1 phonon|2 noise"}};
  const size_t nj = ptls_trajectory_jump_count(h.get());
  const double* jt = ptls_trajectory_jump_times(h.get());
  const int* jc = ptls_trajectory_jump_channels(h.get());
  for (size_t k = 0; k < nj; ++k) {
    jumps.add_row({jt[k], static_cast<double>(jc[k])});
  }
  manifest.write_table("jumps", jumps, options.format);
  manifest.summary()["photon_count"] = ptls_trajectory_photon_count(h.get());
  manifest.summary()["jumps"] = nj;
  manifest.summary()["master_seed"] = c.run.master_seed;
  return kExitOk;
}

std::vector<std::string> figure_ids() {
  return {"fig1a", "fig1d", "fig2", "fig3", "fig4", "fig5b", "fig5e", "fig5f"};
}

int cmd_repro(const std::string& figure, const ExperimentConfig& base,
              const RunOptions& options, RunManifest& manifest) {
  auto recipe = [&](const std::string& preset_name) {
    ExperimentConfig c = preset(preset_name);
    c.run = base.run;
    return c;
  };
  auto area_scan = [](ExperimentConfig& c, std::vector<double> values) {
    c.scan = Scan{"area", std::move(values)};
  };
  manifest.summary()["figure"] = figure;

  if (figure == "fig1a") {
    ExperimentConfig c = recipe("ideal");
    area_scan(c, default_area_scan(0.0));
    return cmd_rabi(c, options, manifest);
  }
  if (figure == "fig1d") {
    ExperimentConfig c = recipe("ideal");
    area_scan(c, default_area_scan(0.0));
    return cmd_photocounts(c, options, manifest);
  }
  if (figure == "fig2") {
    ExperimentConfig c = recipe("ideal");
    area_scan(c, {2 * kPi, 4 * kPi});
    return cmd_correlations(c, options, manifest);
  }
  if (figure == "fig3") {
    ExperimentConfig c = recipe("ideal");
    area_scan(c, {2 * kPi, 4 * kPi, 6 * kPi});
    return cmd_spectrum(c, options, manifest);
  }
  if (figure == "fig4") {
    ExperimentConfig c = recipe("ideal");
    area_scan(c, default_area_scan(0.05 * kPi));
    return cmd_g2scan(c, options, manifest);
  }
  if (figure == "fig5b") {
    ExperimentConfig c = recipe("experimental");
    area_scan(c, default_area_scan(0.0));
    return cmd_rabi(c, options, manifest);
  }
  if (figure == "fig5e") {
    // One g2[0] column per chirp tier on a shared area axis.
    const auto areas = default_area_scan(0.05 * kPi);
    Table t;
    add_scan_columns(t, "area", "tau_e");
    std::vector<std::vector<G2Point>> tiers;
    for (double chirp : {0.0, 0.027, 0.054}) {
      ExperimentConfig c = recipe("experimental");
      c.pulse.chirp_bw_fraction = chirp;
      tiers.push_back(
          g2_points(c.normalized(), "area", areas, options.threads));
      char name[48];
      std::snprintf(name, sizeof name, "g2_zero_chirp_%.1fpct", 100 * chirp);
      t.columns.push_back({name, "1"});
    }
    t.columns.push_back({"laser_g2_zero", "1"});
    for (std::size_t i = 0; i < areas.size(); ++i) {
      std::vector<double> row{areas[i], areas[i] / kPi};
      for (const auto& tier : tiers) row.push_back(tier[i].g2_zero);
      row.push_back(1.0);
      t.add_row(std::move(row));
    }
    manifest.write_table("g2scan", t, options.format);
    return kExitOk;
  }
  if (figure == "fig5f") {
    // 2pi pulses of 10-200 ps with the non-idealities added one at a time.
    struct Variant {
      const char* name;
      bool dephasing;
      double chirp;
    };
    const Variant variants[] = {{"ideal", false, 0.0},
                                {"dephasing", true, 0.0},
                                {"chirp_2.7pct", true, 0.027},
                                {"chirp_5.4pct", true, 0.054}};
    const auto lengths_ps = linear_range(10.0, 200.0, 10.0);
    for (const auto& v : variants) {
      ExperimentConfig raw = recipe("experimental");
      raw.pulse.area = 2 * kPi;
      raw.pulse.chirp_bw_fraction = v.chirp;
      if (!v.dephasing) {
        raw.system.gamma_d = 0.0;
        raw.system.phonon_b = 0.0;
      }
      raw.scan = Scan{"tau_fwhm", lengths_ps};
      const ExperimentConfig c = raw.normalized();
      manifest.write_table(
          std::string("g2scan_") + v.name,
          g2_table(raw, c, "tau_fwhm", c.scan->values, options.threads),
          options.format);
    }
    return kExitOk;
  }
  throw ConfigError("unknown figure '" + figure + "'");
}

}  // namespace pulsetls::cli
