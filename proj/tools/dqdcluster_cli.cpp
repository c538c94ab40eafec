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

// Command-line front end: figure2, figure3, prepare, measure-demo.
//
// Settings are layered: built-in defaults, then --config FILE, then --set
// KEY=VALUE overrides in order, then the dedicated flags.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dqdcluster/harness/commands.hpp"

namespace {

using dqdcluster::harness::Command;
using dqdcluster::harness::ExperimentConfig;

struct Options {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> qubits;
    std::optional<double> sigma_over_pi;
};

void add_common_flags(CLI::App *sub, Options &opt) {
    sub->add_option("--config", opt.config_path, "key = value config file (or a run manifest)");
    sub->add_option("--set", opt.overrides, "override one config key, KEY=VALUE (repeatable)");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--seed", opt.seed, "base RNG seed");
    sub->add_option("--trials", opt.trials, "Monte Carlo / measurement trials");
    sub->add_option("--qubits", opt.qubits, "number of qubits in the chain");
    sub->add_option("--sigma-over-pi", opt.sigma_over_pi, "phase noise std deviation / pi");
}

ExperimentConfig build_config(const Options &opt) {
    ExperimentConfig cfg;
    if (!opt.config_path.empty()) {
        cfg = dqdcluster::harness::load_config_file(opt.config_path, cfg);
    }
    for (const auto &kv : opt.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw dqdcluster::ValidationError("--set expects KEY=VALUE, got '" + kv + "'");
        }
        dqdcluster::harness::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (opt.out_dir) {
        cfg.out_dir = *opt.out_dir;
    }
    if (opt.seed) {
        cfg.seed = *opt.seed;
    }
    if (opt.trials) {
        cfg.trials = *opt.trials;
    }
    if (opt.qubits) {
        cfg.n_qubits = *opt.qubits;
    }
    if (opt.sigma_over_pi) {
        cfg.sigma_over_pi = *opt.sigma_over_pi;
    }
    return cfg;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Cluster-state preparation in double-dot molecule chains"};
    app.require_subcommand(1);

    Options opt;
    const std::vector<std::pair<Command, std::string>> commands = {
        {Command::figure2, "E_cc against detuning and over the calibrated pulse"},
        {Command::figure3, "cluster fidelity against chain length and phase noise"},
        {Command::prepare, "prepare a cluster state and verify its stabilizers"},
        {Command::measure_demo, "schedule and run single-molecule readout on a cluster"},
    };
    std::vector<std::pair<Command, CLI::App *>> subs;
    for (const auto &[cmd, help] : commands) {
        auto *sub = app.add_subcommand(std::string(dqdcluster::harness::command_name(cmd)), help);
        add_common_flags(sub, opt);
        subs.emplace_back(cmd, sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : dqdcluster::harness::kExitValidation;
    }

    Command cmd = Command::figure2;
    for (const auto &[c, sub] : subs) {
        if (sub->parsed()) {
            cmd = c;
        }
    }

    try {
        const ExperimentConfig cfg = build_config(opt);
        cfg.validate(cmd);
        for (const auto &w : cfg.warnings()) {
            std::cerr << "warning: " << w << '\n';
        }
        const auto result = dqdcluster::harness::run_command(cmd, cfg);
        std::cout << result.report;
        for (const auto &f : result.files) {
            std::cout << "wrote " << f.string() << '\n';
        }
        return result.exit_code;
    } catch (const dqdcluster::CalibrationError &e) {
        std::cerr << "calibration failed: " << e.what() << '\n';
        return dqdcluster::harness::kExitValidation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return dqdcluster::harness::kExitValidation;
    }
}
