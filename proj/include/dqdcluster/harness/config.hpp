// Copyright 2026 The dqdcluster Authors
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

/**
 * @file
 * Experiment configuration: a flat `key = value` text format with `#`
 * comments. Physical quantities carry their unit in the key name. Unknown
 * keys are rejected. A fully resolved configuration serializes back into the
 * same format (every key, 17 significant digits), which is what run
 * manifests embed.
 */

#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dqdcluster/errors.hpp"
#include "dqdcluster/measurement.hpp"
#include "dqdcluster/physics.hpp"
#include "dqdcluster/pulse.hpp"

namespace dqdcluster::harness {

enum class Command { figure2, figure3, prepare, measure_demo };

inline std::string_view command_name(Command c) {
    switch (c) {
    case Command::figure2:
        return "figure2";
    case Command::figure3:
        return "figure3";
    case Command::prepare:
        return "prepare";
    case Command::measure_demo:
        return "measure-demo";
    }
    return "?";
}

/// Shortest round-trip is not required; 17 significant digits always are.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct ExperimentConfig {
    DeviceParams device;

    double tau1_ns = 1.0;
    std::optional<double> tau1_down_ns;  // defaults to tau1_ns
    std::optional<double> eps_low_mev;   // defaults to -ec_mev / 2
    std::optional<double> eps_high_mev;  // defaults to +ec_mev / 2
    double hold_scale = 1.0;             // multiplies the calibrated hold time
    double target_phase_over_pi = 1.0;
    double coherence_budget_ns = 10.0;

    std::size_t n_qubits = 10;
    double sigma_over_pi = 0.03;
    std::vector<double> sigma_grid_over_pi = {0.0,  0.01, 0.02, 0.03, 0.04, 0.05,
                                              0.06, 0.07, 0.08, 0.09, 0.1};
    std::size_t figure3_max_qubits = 20;
    std::size_t trials = 100000;
    std::uint64_t seed = 1;

    std::optional<std::vector<std::size_t>> measure_qubits;  // defaults to all qubits
    std::vector<std::string> measure_axes = {"z"};
    bool dump_state = false;

    std::string out_dir = ".";

    /// Pulse shape with the hold time left at zero.
    DetuningPulse pulse_shape() const {
        DetuningPulse p;
        p.ramp_up_ns = tau1_ns;
        p.ramp_down_ns = tau1_down_ns.value_or(tau1_ns);
        p.hold_ns = 0.0;
        p.eps_low_meV = eps_low_mev.value_or(-device.charging_energy_meV / 2.0);
        p.eps_high_meV = eps_high_mev.value_or(device.charging_energy_meV / 2.0);
        return p;
    }

    std::vector<std::size_t> resolved_measure_qubits() const {
        if (measure_qubits) {
            return *measure_qubits;
        }
        std::vector<std::size_t> all(n_qubits);
        for (std::size_t i = 0; i < n_qubits; ++i) {
            all[i] = i;
        }
        return all;
    }

    /// Axis for each qubit of the measurement pattern.
    std::map<std::size_t, BlochAxis> resolved_measure_bases() const;

    /// Throws ValidationError if running `cmd` could violate any module
    /// precondition.
    void validate(Command cmd) const;

    /// Adiabaticity and regime warnings (non-fatal).
    std::vector<std::string> warnings() const;

    /// Every key with its resolved value, in the input format.
    std::string to_text() const;
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    if (trim(s).empty()) {
        return out;
    }
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

inline double parse_double(const std::string &key, const std::string &v) {
    double x = 0.0;
    const auto *end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end || v.empty()) {
        throw ValidationError("config key '" + key + "': not a number: '" + v + "'");
    }
    return x;
}

inline std::uint64_t parse_uint(const std::string &key, const std::string &v) {
    std::uint64_t x = 0;
    const auto *end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end || v.empty()) {
        throw ValidationError("config key '" + key + "': not a non-negative integer: '" + v +
                              "'");
    }
    return x;
}

inline bool parse_bool(const std::string &key, const std::string &v) {
    if (v == "true" || v == "1") {
        return true;
    }
    if (v == "false" || v == "0") {
        return false;
    }
    throw ValidationError("config key '" + key + "': expected true/false, got '" + v + "'");
}

inline BlochAxis parse_axis(const std::string &text) {
    if (text == "x") {
        return BlochAxis::x_axis();
    }
    if (text == "y") {
        return BlochAxis::y_axis();
    }
    if (text == "z") {
        return BlochAxis::z_axis();
    }
    const auto parts = split(text, ',');
    if (parts.size() != 3) {
        throw ValidationError("measure axis '" + text + "': expected x, y, z or 'ax,ay,az'");
    }
    try {
        return BlochAxis(parse_double("measure_axes", parts[0]),
                         parse_double("measure_axes", parts[1]),
                         parse_double("measure_axes", parts[2]));
    } catch (const DomainError &e) {
        throw ValidationError("measure axis '" + text + "': " + e.what());
    }
}

using Setter = std::function<void(ExperimentConfig &, const std::string &, const std::string &)>;

inline const std::map<std::string, Setter, std::less<>> &setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"dot_radius_nm",
         [](auto &c, auto &k, auto &v) { c.device.dot_radius_nm = parse_double(k, v); }},
        {"intradot_spacing_nm",
         [](auto &c, auto &k, auto &v) { c.device.intradot_spacing_nm = parse_double(k, v); }},
        {"intermolecule_spacing_nm",
         [](auto &c, auto &k, auto &v) {
             c.device.intermolecule_spacing_nm = parse_double(k, v);
         }},
        {"relative_permittivity",
         [](auto &c, auto &k, auto &v) { c.device.relative_permittivity = parse_double(k, v); }},
        {"tc_mev",
         [](auto &c, auto &k, auto &v) { c.device.tunnel_coupling_meV = parse_double(k, v); }},
        {"ec_mev",
         [](auto &c, auto &k, auto &v) { c.device.charging_energy_meV = parse_double(k, v); }},
        {"tau1_ns", [](auto &c, auto &k, auto &v) { c.tau1_ns = parse_double(k, v); }},
        {"tau1_down_ns", [](auto &c, auto &k, auto &v) { c.tau1_down_ns = parse_double(k, v); }},
        {"eps_low_mev", [](auto &c, auto &k, auto &v) { c.eps_low_mev = parse_double(k, v); }},
        {"eps_high_mev", [](auto &c, auto &k, auto &v) { c.eps_high_mev = parse_double(k, v); }},
        {"hold_scale", [](auto &c, auto &k, auto &v) { c.hold_scale = parse_double(k, v); }},
        {"target_phase_over_pi",
         [](auto &c, auto &k, auto &v) { c.target_phase_over_pi = parse_double(k, v); }},
        {"coherence_budget_ns",
         [](auto &c, auto &k, auto &v) { c.coherence_budget_ns = parse_double(k, v); }},
        {"n_qubits", [](auto &c, auto &k, auto &v) { c.n_qubits = parse_uint(k, v); }},
        {"sigma_over_pi", [](auto &c, auto &k, auto &v) { c.sigma_over_pi = parse_double(k, v); }},
        {"sigma_grid_over_pi",
         [](auto &c, auto &k, auto &v) {
             c.sigma_grid_over_pi.clear();
             for (const auto &item : split(v, ',')) {
                 c.sigma_grid_over_pi.push_back(parse_double(k, item));
             }
         }},
        {"figure3_max_qubits",
         [](auto &c, auto &k, auto &v) { c.figure3_max_qubits = parse_uint(k, v); }},
        {"trials", [](auto &c, auto &k, auto &v) { c.trials = parse_uint(k, v); }},
        {"seed", [](auto &c, auto &k, auto &v) { c.seed = parse_uint(k, v); }},
        {"measure_qubits",
         [](auto &c, auto &k, auto &v) {
             std::vector<std::size_t> qs;
             for (const auto &item : split(v, ',')) {
                 qs.push_back(parse_uint(k, item));
             }
             c.measure_qubits = std::move(qs);
         }},
        {"measure_axes",
         [](auto &c, auto &, auto &v) {
             c.measure_axes = split(v, ';');
             for (const auto &a : c.measure_axes) {
                 parse_axis(a);
             }
         }},
        {"dump_state", [](auto &c, auto &k, auto &v) { c.dump_state = parse_bool(k, v); }},
        {"out_dir", [](auto &c, auto &, auto &v) { c.out_dir = v; }},
    };
    return table;
}

}  // namespace detail

/// Sets one key; unknown keys and malformed values throw ValidationError.
inline void apply_setting(ExperimentConfig &cfg, const std::string &key, const std::string &value) {
    const auto &table = detail::setters();
    const auto it = table.find(key);
    if (it == table.end()) {
        throw ValidationError("unknown config key '" + key + "'");
    }
    it->second(cfg, key, detail::trim(value));
}

/// Applies `key = value` lines from `text` on top of `cfg`.
inline void apply_config_text(ExperimentConfig &cfg, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
        }
        apply_setting(cfg, detail::trim(std::string_view(t).substr(0, eq)),
                      detail::trim(std::string_view(t).substr(eq + 1)));
    }
}

inline ExperimentConfig load_config_file(const std::filesystem::path &path,
                                         ExperimentConfig base = {}) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read config file " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_config_text(base, ss.str());
    return base;
}

inline std::map<std::size_t, BlochAxis> ExperimentConfig::resolved_measure_bases() const {
    const auto qubits = resolved_measure_qubits();
    std::map<std::size_t, BlochAxis> out;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const std::string &text = measure_axes.size() == 1 ? measure_axes[0] : measure_axes[i];
        out.emplace(qubits[i], detail::parse_axis(text));
    }
    return out;
}

inline void ExperimentConfig::validate(Command cmd) const {
    auto require = [](bool ok, const std::string &msg) {
        if (!ok) {
            throw ValidationError(msg);
        }
    };
    device.validate();
    const DetuningPulse shape = pulse_shape();
    shape.validate();
    require(std::isfinite(hold_scale) && hold_scale >= 0.0, "hold_scale must be finite and >= 0");
    require(std::isfinite(target_phase_over_pi) && target_phase_over_pi > 0.0,
            "target_phase_over_pi must be finite and > 0");
    require(std::isfinite(coherence_budget_ns) && coherence_budget_ns > 0.0,
            "coherence_budget_ns must be finite and > 0");
    require(n_qubits >= 1 && n_qubits <= ChainState::kMaxQubits,
            "n_qubits must be in 1.." + std::to_string(ChainState::kMaxQubits));
    require(std::isfinite(sigma_over_pi) && sigma_over_pi >= 0.0,
            "sigma_over_pi must be finite and >= 0");
    require(!out_dir.empty(), "out_dir must not be empty");

    switch (cmd) {
    case Command::figure2:
    case Command::prepare:
        break;
    case Command::figure3:
        require(!sigma_grid_over_pi.empty(), "sigma_grid_over_pi must not be empty");
        for (double s : sigma_grid_over_pi) {
            require(std::isfinite(s) && s >= 0.0, "sigma_grid_over_pi entries must be >= 0");
        }
        require(figure3_max_qubits >= 2 && figure3_max_qubits <= ChainState::kMaxQubits,
                "figure3_max_qubits must be in 2.." + std::to_string(ChainState::kMaxQubits));
        require(trials >= 100, "figure3 needs trials >= 100");
        break;
    case Command::measure_demo: {
        require(trials >= 1, "measure-demo needs trials >= 1");
        const auto qubits = resolved_measure_qubits();
        std::set<std::size_t> seen;
        for (std::size_t q : qubits) {
            require(q < n_qubits, "measure_qubits: index " + std::to_string(q) +
                                      " out of range for " + std::to_string(n_qubits) +
                                      " qubits");
            require(seen.insert(q).second, "measure_qubits: duplicate index " + std::to_string(q));
        }
        require(measure_axes.size() == 1 || measure_axes.size() == qubits.size(),
                "measure_axes needs one entry or one per measured qubit");
        for (const auto &a : measure_axes) {
            detail::parse_axis(a);
        }
        break;
    }
    }
}

inline std::vector<std::string> ExperimentConfig::warnings() const {
    std::vector<std::string> out;
    if (device.charging_energy_meV < 100.0 * device.tunnel_coupling_meV) {
        out.push_back("ec_mev < 100 tc_mev: the detuning sweep does not reach the limits "
                      "theta -> 0 and theta -> pi/2");
    }
    DetuningPulse shape = pulse_shape();
    for (auto &w : adiabaticity_warnings(shape, device, coherence_budget_ns)) {
        out.push_back(std::move(w));
    }
    return out;
}

inline std::string ExperimentConfig::to_text() const {
    const DetuningPulse shape = pulse_shape();
    std::ostringstream os;
    auto put = [&](std::string_view k, const std::string &v) { os << k << " = " << v << '\n'; };
    auto join_doubles = [](const std::vector<double> &xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            s += (i ? "," : "") + format_double(xs[i]);
        }
        return s;
    };
    put("dot_radius_nm", format_double(device.dot_radius_nm));
    put("intradot_spacing_nm", format_double(device.intradot_spacing_nm));
    put("intermolecule_spacing_nm", format_double(device.intermolecule_spacing_nm));
    put("relative_permittivity", format_double(device.relative_permittivity));
    put("tc_mev", format_double(device.tunnel_coupling_meV));
    put("ec_mev", format_double(device.charging_energy_meV));
    put("tau1_ns", format_double(shape.ramp_up_ns));
    put("tau1_down_ns", format_double(shape.ramp_down_ns));
    put("eps_low_mev", format_double(shape.eps_low_meV));
    put("eps_high_mev", format_double(shape.eps_high_meV));
    put("hold_scale", format_double(hold_scale));
    put("target_phase_over_pi", format_double(target_phase_over_pi));
    put("coherence_budget_ns", format_double(coherence_budget_ns));
    put("n_qubits", std::to_string(n_qubits));
    put("sigma_over_pi", format_double(sigma_over_pi));
    put("sigma_grid_over_pi", join_doubles(sigma_grid_over_pi));
    put("figure3_max_qubits", std::to_string(figure3_max_qubits));
    put("trials", std::to_string(trials));
    put("seed", std::to_string(seed));
    std::string qs;
    const auto qubits = resolved_measure_qubits();
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        qs += (i ? "," : "") + std::to_string(qubits[i]);
    }
    put("measure_qubits", qs);
    std::string axes;
    for (std::size_t i = 0; i < measure_axes.size(); ++i) {
        axes += (i ? ";" : "") + measure_axes[i];
    }
    put("measure_axes", axes);
    put("dump_state", dump_state ? "true" : "false");
    put("out_dir", out_dir);
    return os.str();
}

}  // namespace dqdcluster::harness
