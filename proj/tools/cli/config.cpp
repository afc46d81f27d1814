// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

namespace pulsetls::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key + " must be a number");
  return j.get<double>();
}

// Areas may be written as numbers or as multiples of pi.
double area_value(const json& j, const std::string& key) {
  if (j.is_string()) return parse_area(j.get<std::string>());
  return number(j, key);
}

template <typename Int>
Int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw ConfigError(key + " must be an integer");
  }
  return j.get<Int>();
}

void read(const json& j, const char* key, double& out) {
  if (j.contains(key)) out = number(j.at(key), key);
}

void read(const json& j, const char* key, std::optional<double>& out) {
  if (j.contains(key)) out = number(j.at(key), key);
}

void put(json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

bool same(const std::optional<double>& a, const std::optional<double>& b) {
  return a.has_value() == b.has_value() && (!a || *a == *b);
}

}  // namespace

double parse_area(const std::string& text) {
  std::string s;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isspace(u) && c != '*') s += static_cast<char>(std::tolower(u));
  }
  const auto fail = [&] {
    return ConfigError("cannot parse area '" + text + "'");
  };
  if (s.empty()) throw fail();

  auto parse_number = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (used != part.size() || !std::isfinite(v)) throw fail();
    return v;
  };

  std::string numerator = s;
  double divisor = 1.0;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    numerator = s.substr(0, slash);
    divisor = parse_number(s.substr(slash + 1));
    if (divisor == 0.0) throw fail();
  }
  double value = 0.0;
  if (const auto pi = numerator.find("pi");
      pi != std::string::npos && pi + 2 == numerator.size()) {
    const std::string coeff = numerator.substr(0, pi);
    double c = 1.0;
    if (coeff == "-") {
      c = -1.0;
    } else if (!coeff.empty() && coeff != "+") {
      c = parse_number(coeff);
    }
    value = c * std::numbers::pi;
  } else {
    value = parse_number(numerator);
  }
  return value / divisor;
}

std::vector<double> linear_range(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) {
    throw ConfigError("range needs step > 0 and stop >= start");
  }
  const auto n = static_cast<std::size_t>(
      std::floor((stop - start) / step + 0.5));
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    v[i] = start + static_cast<double>(i) * step;
  }
  return v;
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(std::isfinite(system.gamma) && system.gamma > 0.0,
          "system.gamma must be > 0");
  require(system.gamma_d >= 0.0, "system.gamma_d must be >= 0");
  require(system.phonon_b >= 0.0, "system.phonon_b must be >= 0");
  require(pulse.area >= 0.0, "pulse.area must be >= 0");
  require(pulse.tau_fwhm > 0.0, "pulse.tau_fwhm must be > 0");
  require(pulse.chirp_bw_fraction >= 0.0,
          "pulse.chirp_bw_fraction must be >= 0");
  require(std::isfinite(pulse.carrier_phase) &&
              std::isfinite(pulse.center_time),
          "pulse phase and centre must be finite");
  require(!grid.dt || *grid.dt > 0.0, "grid.dt must be > 0");
  require(!(grid.t_start && grid.t_end) || *grid.t_end > *grid.t_start,
          "grid.t_end must exceed grid.t_start");
  require(run.n_trajectories > 0, "run.n_trajectories must be > 0");
  require(run.tau_max >= 0.0, "run.tau_max must be >= 0");
  require(run.omega_range > 0.0, "run.omega_range must be > 0");
  require(run.omega_points >= 2, "run.omega_points must be >= 2");
  require(run.detector_linewidth >= 0.0,
          "run.detector_linewidth must be >= 0");
  require(run.t1_stride >= 0 && run.tau_stride >= 0,
          "run strides must be >= 0");
  if (scan) {
    require(scan->variable == "area" || scan->variable == "tau_fwhm",
            "scan.variable must be 'area' or 'tau_fwhm'");
    require(!scan->values.empty(), "scan.values must not be empty");
    for (double v : scan->values) {
      if (scan->variable == "area") {
        require(v >= 0.0, "scan areas must be >= 0");
      } else {
        require(v > 0.0, "scan pulse lengths must be > 0");
      }
    }
  }
}

ExperimentConfig ExperimentConfig::normalized() const {
  validate();
  const double g = system.gamma;
  ExperimentConfig c = *this;
  c.system = {1.0, system.gamma_d / g, system.phonon_b * g};
  c.pulse.tau_fwhm *= g;
  c.pulse.center_time *= g;
  auto scale = [g](std::optional<double>& v) {
    if (v) *v *= g;
  };
  scale(c.grid.t_start);
  scale(c.grid.t_end);
  scale(c.grid.dt);
  c.run.tau_max *= g;
  c.run.detector_linewidth /= g;
  if (c.scan && c.scan->variable == "tau_fwhm") {
    for (double& v : c.scan->values) v *= g;
  }
  c.time_unit = "tau_e";
  return c;
}

ptls_grid ExperimentConfig::resolved_grid() const {
  ptls_grid g{};
  if (ptls_default_grid(&system, &pulse, &g) != PTLS_OK) {
    throw ConfigError(ptls_last_error());
  }
  if (grid.t_start) g.t_start = *grid.t_start;
  if (grid.t_end) g.t_end = *grid.t_end;
  if (grid.dt) g.dt = *grid.dt;
  return g;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  const auto& s = a.system;
  const auto& t = b.system;
  const auto& p = a.pulse;
  const auto& q = b.pulse;
  const bool scans_equal =
      a.scan.has_value() == b.scan.has_value() &&
      (!a.scan || (a.scan->variable == b.scan->variable &&
                   a.scan->values == b.scan->values));
  return a.time_unit == b.time_unit && s.gamma == t.gamma &&
         s.gamma_d == t.gamma_d && s.phonon_b == t.phonon_b &&
         p.area == q.area && p.tau_fwhm == q.tau_fwhm &&
         p.chirp_bw_fraction == q.chirp_bw_fraction &&
         p.carrier_phase == q.carrier_phase &&
         p.center_time == q.center_time &&
         same(a.grid.t_start, b.grid.t_start) &&
         same(a.grid.t_end, b.grid.t_end) && same(a.grid.dt, b.grid.dt) &&
         a.run.n_trajectories == b.run.n_trajectories &&
         a.run.master_seed == b.run.master_seed &&
         a.run.tau_max == b.run.tau_max &&
         a.run.omega_range == b.run.omega_range &&
         a.run.omega_points == b.run.omega_points &&
         a.run.detector_linewidth == b.run.detector_linewidth &&
         a.run.t1_stride == b.run.t1_stride &&
         a.run.tau_stride == b.run.tau_stride && scans_equal;
}

ExperimentConfig config_from_json(const json& j) {
  reject_unknown(j, {"time_unit", "system", "pulse", "grid", "run", "scan"},
                 "config");
  ExperimentConfig c;
  if (j.contains("time_unit")) {
    if (!j["time_unit"].is_string()) {
      throw ConfigError("time_unit must be a string");
    }
    c.time_unit = j["time_unit"].get<std::string>();
  }
  if (j.contains("system")) {
    const json& s = j["system"];
    reject_unknown(s, {"gamma", "gamma_d", "phonon_b"}, "system");
    read(s, "gamma", c.system.gamma);
    read(s, "gamma_d", c.system.gamma_d);
    read(s, "phonon_b", c.system.phonon_b);
  }
  if (j.contains("pulse")) {
    const json& p = j["pulse"];
    reject_unknown(p,
                   {"area", "tau_fwhm", "chirp_bw_fraction", "carrier_phase",
                    "center_time"},
                   "pulse");
    if (p.contains("area")) c.pulse.area = area_value(p["area"], "area");
    read(p, "tau_fwhm", c.pulse.tau_fwhm);
    read(p, "chirp_bw_fraction", c.pulse.chirp_bw_fraction);
    read(p, "carrier_phase", c.pulse.carrier_phase);
    read(p, "center_time", c.pulse.center_time);
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    reject_unknown(g, {"t_start", "t_end", "dt"}, "grid");
    read(g, "t_start", c.grid.t_start);
    read(g, "t_end", c.grid.t_end);
    read(g, "dt", c.grid.dt);
  }
  if (j.contains("run")) {
    const json& r = j["run"];
    reject_unknown(r,
                   {"n_trajectories", "master_seed", "tau_max", "omega_range",
                    "omega_points", "detector_linewidth", "t1_stride",
                    "tau_stride"},
                   "run");
    if (r.contains("n_trajectories")) {
      c.run.n_trajectories =
          integer<std::int64_t>(r["n_trajectories"], "n_trajectories");
    }
    if (r.contains("master_seed")) {
      c.run.master_seed =
          integer<std::uint64_t>(r["master_seed"], "master_seed");
    }
    read(r, "tau_max", c.run.tau_max);
    read(r, "omega_range", c.run.omega_range);
    if (r.contains("omega_points")) {
      c.run.omega_points =
          integer<std::int64_t>(r["omega_points"], "omega_points");
    }
    read(r, "detector_linewidth", c.run.detector_linewidth);
    if (r.contains("t1_stride")) {
      c.run.t1_stride = integer<std::int64_t>(r["t1_stride"], "t1_stride");
    }
    if (r.contains("tau_stride")) {
      c.run.tau_stride = integer<std::int64_t>(r["tau_stride"], "tau_stride");
    }
  }
  if (j.contains("scan") && !j["scan"].is_null()) {
    const json& s = j["scan"];
    reject_unknown(s, {"variable", "values", "range"}, "scan");
    Scan scan;
    if (!s.contains("variable") || !s["variable"].is_string()) {
      throw ConfigError("scan.variable is required");
    }
    scan.variable = s["variable"].get<std::string>();
    const bool is_area = scan.variable == "area";
    auto value = [&](const json& v, const char* key) {
      return is_area ? area_value(v, key) : number(v, key);
    };
    if (s.contains("values") == s.contains("range")) {
      throw ConfigError("scan needs exactly one of 'values' and 'range'");
    }
    if (s.contains("values")) {
      if (!s["values"].is_array()) {
        throw ConfigError("scan.values must be an array");
      }
      for (const json& v : s["values"]) scan.values.push_back(value(v, "value"));
    } else {
      const json& r = s["range"];
      reject_unknown(r, {"start", "stop", "step"}, "scan.range");
      if (!r.contains("start") || !r.contains("stop") || !r.contains("step")) {
        throw ConfigError("scan.range needs start, stop and step");
      }
      scan.values = linear_range(value(r["start"], "start"),
                                 value(r["stop"], "stop"),
                                 value(r["step"], "step"));
    }
    c.scan = std::move(scan);
  }
  c.validate();
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["time_unit"] = c.time_unit;
  j["system"] = {{"gamma", c.system.gamma},
                 {"gamma_d", c.system.gamma_d},
                 {"phonon_b", c.system.phonon_b}};
  j["pulse"] = {{"area", c.pulse.area},
                {"tau_fwhm", c.pulse.tau_fwhm},
                {"chirp_bw_fraction", c.pulse.chirp_bw_fraction},
                {"carrier_phase", c.pulse.carrier_phase},
                {"center_time", c.pulse.center_time}};
  json g = json::object();
  put(g, "t_start", c.grid.t_start);
  put(g, "t_end", c.grid.t_end);
  put(g, "dt", c.grid.dt);
  j["grid"] = g;
  j["run"] = {{"n_trajectories", c.run.n_trajectories},
              {"master_seed", c.run.master_seed},
              {"tau_max", c.run.tau_max},
              {"omega_range", c.run.omega_range},
              {"omega_points", c.run.omega_points},
              {"detector_linewidth", c.run.detector_linewidth},
              {"t1_stride", c.run.t1_stride},
              {"tau_stride", c.run.tau_stride}};
  if (c.scan) {
    j["scan"] = {{"variable", c.scan->variable}, {"values", c.scan->values}};
  }
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

std::vector<std::string> preset_names() { return {"ideal", "experimental"}; }

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig c;
  if (name == "ideal") {
    // tau_FWHM = tau_e / 10, no dephasing.
    return c;
  }
  if (name == "experimental") {
    // Quantum-dot fit in picoseconds: 602 ps lifetime, 80 ps pulses,
    // gamma_d = 1.3 / ns, B = 2e-3 ns and a 2.7% chirp in bandwidth.
    c.time_unit = "ps";
    c.system = {1.0 / 602.0, 1.3e-3, 2.0};
    c.pulse.tau_fwhm = 80.0;
    c.pulse.chirp_bw_fraction = 0.027;
    return c;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace pulsetls::cli
