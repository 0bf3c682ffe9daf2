// Copyright 2026 The freqbin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Run configuration: one JSON document with "resonator", "gate", "detector" and
// "qkd" sections plus "seed" and "output_dir". Unknown keys are rejected.

#ifndef FREQBIN_CONFIG_HPP
#define FREQBIN_CONFIG_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "freqbin/core_model.hpp"
#include "freqbin/eo_gates.hpp"
#include "freqbin/errors.hpp"
#include "freqbin/measurement.hpp"
#include "freqbin/qkd.hpp"

namespace freqbin {

struct ResonatorSection {
  double pump_thz = 194.0;
  double fsr_ghz = 21.18;
  int n_min = 3;
  int n_max = 83;
  double linewidth_mhz = 600.0;
  double q_factor = 3.0e5;
  double brightness_pairs_per_s = 15.87e6;
  double pump_mw = 0.75;
  /// Explicit (n, t) entries; modes not listed take t = 1. Absent: default envelope.
  std::optional<std::vector<std::pair<int, double>>> transmission;
  std::string phase_model = "zero";
  double phase_coeff = 0.0;

  FrequencyGrid grid() const {
    FrequencyGrid g;
    g.pump = Frequency::from_thz(pump_thz);
    g.fsr = Frequency::from_ghz(fsr_ghz);
    g.n_min = n_min;
    g.n_max = n_max;
    g.validate();
    return g;
  }

  ResonatorModel model() const {
    const FrequencyGrid g = grid();
    std::vector<double> t;
    if (transmission) {
      t.assign(static_cast<std::size_t>(g.size()), 1.0);
      for (const auto& [n, v] : *transmission) {
        if (!g.contains(n)) throw ConfigError("resonator.transmission: mode " + std::to_string(n) + " outside grid");
        t[static_cast<std::size_t>(n - g.n_min)] = v;
      }
    } else {
      t = envelope_table(g, default_envelope_shape());
    }
    ResonatorModel m;
    m.grid = g;
    m.linewidth_fwhm_ghz = linewidth_mhz * 1e-3;
    m.quality_factor = q_factor;
    m.transmission = std::move(t);
    m.internal_pair_rate = brightness_pairs_per_s;
    m.validate();
    return m;
  }

  PhaseProfile phase() const {
    if (phase_model == "zero") return zero_phase();
    if (phase_model == "quadratic") return quadratic_phase(phase_coeff);
    throw ConfigError("resonator.phase.model must be \"zero\" or \"quadratic\"");
  }
};

struct QkdSection {
  KeyRateParameters key;
  int first_pair = 10;
  int n_pairs = 17;
  double tau_s = 3600.0;
};

struct RunConfig {
  ResonatorSection resonator;
  GateParameters gate;
  DetectorModel detector;
  double tomography_tau_s = 125.0;
  QkdSection qkd;
  std::uint64_t seed = 1;
  std::string output_dir;
};

namespace detail {

using nlohmann::json;

inline void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
}

inline void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) throw ConfigError(where + ": unknown key \"" + k + "\"");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

}  // namespace detail

inline RunConfig parse_config(const nlohmann::json& root) {
  using detail::read;
  using detail::reject_unknown;
  using detail::require_object;
  RunConfig c;
  require_object(root, "config");
  reject_unknown(root, {"resonator", "gate", "detector", "qkd", "seed", "output_dir"}, "config");

  if (root.contains("resonator")) {
    const auto& r = root.at("resonator");
    require_object(r, "resonator");
    reject_unknown(r,
                   {"pump_thz", "fsr_ghz", "n_min", "n_max", "linewidth_mhz", "q_factor", "brightness_pairs_per_s",
                    "pump_mw", "transmission", "phase"},
                   "resonator");
    auto& s = c.resonator;
    read(r, "pump_thz", s.pump_thz, "resonator");
    read(r, "fsr_ghz", s.fsr_ghz, "resonator");
    read(r, "n_min", s.n_min, "resonator");
    read(r, "n_max", s.n_max, "resonator");
    read(r, "linewidth_mhz", s.linewidth_mhz, "resonator");
    read(r, "q_factor", s.q_factor, "resonator");
    read(r, "brightness_pairs_per_s", s.brightness_pairs_per_s, "resonator");
    read(r, "pump_mw", s.pump_mw, "resonator");
    if (r.contains("transmission")) {
      const auto& t = r.at("transmission");
      if (!t.is_array()) throw ConfigError("resonator.transmission: expected an array");
      std::vector<std::pair<int, double>> entries;
      for (const auto& e : t) {
        require_object(e, "resonator.transmission[]");
        reject_unknown(e, {"n", "t"}, "resonator.transmission[]");
        if (!e.contains("n") || !e.contains("t")) throw ConfigError("resonator.transmission[]: needs n and t");
        int n = 0;
        double v = 0.0;
        read(e, "n", n, "resonator.transmission[]");
        read(e, "t", v, "resonator.transmission[]");
        entries.emplace_back(n, v);
      }
      s.transmission = std::move(entries);
    }
    if (r.contains("phase")) {
      const auto& p = r.at("phase");
      require_object(p, "resonator.phase");
      reject_unknown(p, {"model", "coeff"}, "resonator.phase");
      read(p, "model", s.phase_model, "resonator.phase");
      read(p, "coeff", s.phase_coeff, "resonator.phase");
      if (s.phase_model != "zero" && s.phase_model != "quadratic") {
        throw ConfigError("resonator.phase.model must be \"zero\" or \"quadratic\"");
      }
    }
  }

  if (root.contains("gate")) {
    const auto& g = root.at("gate");
    require_object(g, "gate");
    reject_unknown(g,
                   {"mu1", "theta1", "mu2", "theta2", "rf_ghz", "alpha", "guard_modes", "truncation_margin",
                    "dispersion_ps_nm"},
                   "gate");
    auto& s = c.gate;
    read(g, "mu1", s.mu1, "gate");
    read(g, "theta1", s.theta1, "gate");
    read(g, "mu2", s.mu2, "gate");
    read(g, "theta2", s.theta2, "gate");
    read(g, "rf_ghz", s.rf_ghz, "gate");
    read(g, "alpha", s.alpha, "gate");
    read(g, "guard_modes", s.guard_modes, "gate");
    read(g, "truncation_margin", s.truncation_margin, "gate");
    read(g, "dispersion_ps_nm", s.dispersion_ps_nm, "gate");
    if (s.truncation_margin < 8) throw ConfigError("gate.truncation_margin must be >= 8");
    if (s.mu1 < 0.0 || s.mu2 < 0.0) throw ConfigError("gate: modulation indices must be >= 0");
    if (!(s.rf_ghz > 0.0)) throw ConfigError("gate.rf_ghz must be positive");
    if (s.guard_modes < 0) throw ConfigError("gate.guard_modes must be >= 0");
  }

  if (root.contains("detector")) {
    const auto& d = root.at("detector");
    require_object(d, "detector");
    reject_unknown(d,
                   {"efficiency_i", "efficiency_s", "window_ns", "dead_time_ns", "dark_count_rate", "transmission_i",
                    "transmission_s", "accidentals", "tau_s"},
                   "detector");
    auto& s = c.detector;
    read(d, "efficiency_i", s.efficiency_idler, "detector");
    read(d, "efficiency_s", s.efficiency_signal, "detector");
    read(d, "window_ns", s.window_ns, "detector");
    read(d, "dead_time_ns", s.dead_time_ns, "detector");
    read(d, "dark_count_rate", s.dark_count_rate, "detector");
    read(d, "transmission_i", s.transmission_idler, "detector");
    read(d, "transmission_s", s.transmission_signal, "detector");
    read(d, "accidentals", s.accidentals, "detector");
    read(d, "tau_s", c.tomography_tau_s, "detector");
    try {
      s.validate();
    } catch (const ValidationError& e) {
      throw ConfigError(e.what());
    }
    if (!(c.tomography_tau_s > 0.0)) throw ConfigError("detector.tau_s must be positive");
  }

  if (root.contains("qkd")) {
    const auto& q = root.at("qkd");
    require_object(q, "qkd");
    reject_unknown(q, {"threshold", "sifting_factor", "ec_efficiency", "first_pair", "n_pairs", "tau_s"}, "qkd");
    auto& s = c.qkd;
    read(q, "threshold", s.key.threshold, "qkd");
    read(q, "sifting_factor", s.key.sifting_factor, "qkd");
    read(q, "ec_efficiency", s.key.ec_efficiency, "qkd");
    read(q, "first_pair", s.first_pair, "qkd");
    read(q, "n_pairs", s.n_pairs, "qkd");
    read(q, "tau_s", s.tau_s, "qkd");
    if (!(s.tau_s > 0.0)) throw ConfigError("qkd.tau_s must be positive");
    if (s.n_pairs < 0) throw ConfigError("qkd.n_pairs must be >= 0");
  }

  detail::read(root, "seed", c.seed, "config");
  detail::read(root, "output_dir", c.output_dir, "config");
  return c;
}

inline RunConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  const auto& r = c.resonator;
  j["resonator"] = {{"pump_thz", r.pump_thz},
                    {"fsr_ghz", r.fsr_ghz},
                    {"n_min", r.n_min},
                    {"n_max", r.n_max},
                    {"linewidth_mhz", r.linewidth_mhz},
                    {"q_factor", r.q_factor},
                    {"brightness_pairs_per_s", r.brightness_pairs_per_s},
                    {"pump_mw", r.pump_mw},
                    {"phase", {{"model", r.phase_model}, {"coeff", r.phase_coeff}}}};
  if (r.transmission) {
    auto arr = nlohmann::json::array();
    for (const auto& [n, t] : *r.transmission) arr.push_back({{"n", n}, {"t", t}});
    j["resonator"]["transmission"] = arr;
  }
  const auto& g = c.gate;
  j["gate"] = {{"mu1", g.mu1},
               {"theta1", g.theta1},
               {"mu2", g.mu2},
               {"theta2", g.theta2},
               {"rf_ghz", g.rf_ghz},
               {"alpha", g.alpha},
               {"guard_modes", g.guard_modes},
               {"truncation_margin", g.truncation_margin},
               {"dispersion_ps_nm", g.dispersion_ps_nm}};
  const auto& d = c.detector;
  j["detector"] = {{"efficiency_i", d.efficiency_idler},
                   {"efficiency_s", d.efficiency_signal},
                   {"window_ns", d.window_ns},
                   {"dead_time_ns", d.dead_time_ns},
                   {"dark_count_rate", d.dark_count_rate},
                   {"transmission_i", d.transmission_idler},
                   {"transmission_s", d.transmission_signal},
                   {"accidentals", d.accidentals},
                   {"tau_s", c.tomography_tau_s}};
  const auto& q = c.qkd;
  j["qkd"] = {{"threshold", q.key.threshold},     {"sifting_factor", q.key.sifting_factor},
              {"ec_efficiency", q.key.ec_efficiency}, {"first_pair", q.first_pair},
              {"n_pairs", q.n_pairs},              {"tau_s", q.tau_s}};
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  return j;
}

/// FNV-1a over the canonical JSON dump (keys sorted), ignoring output_dir.
inline std::uint64_t config_hash(const RunConfig& c) {
  nlohmann::json j = to_json(c);
  j.erase("output_dir");
  const std::string s = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// "# config_hash=<16 hex digits> seed=<seed>"
inline std::string provenance_line(const RunConfig& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(c)));
  return "# config_hash=" + std::string(buf) + " seed=" + std::to_string(c.seed);
}

}  // namespace freqbin

#endif  // FREQBIN_CONFIG_HPP
