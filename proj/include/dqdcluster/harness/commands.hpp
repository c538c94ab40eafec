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
 * Experiment drivers behind the CLI subcommands. Each writes its CSV files
 * plus a `<command>_manifest.txt` into the output directory; the manifest is
 * itself a config file, so `--config <manifest>` reproduces the run.
 *
 * CSV format: header row, '.' decimal separator, 17 significant digits,
 * LF line endings.
 */

#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqdcluster/chain_state.hpp"
#include "dqdcluster/constants.hpp"
#include "dqdcluster/harness/config.hpp"
#include "dqdcluster/measurement.hpp"
#include "dqdcluster/noise.hpp"
#include "dqdcluster/physics.hpp"
#include "dqdcluster/pulse.hpp"
#include "dqdcluster/rng.hpp"

namespace dqdcluster::harness {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitThreshold = 2;

/// Stabilizer threshold below which `prepare` reports failure.
inline constexpr double kPrepareStabilizerTolerance = 1e-6;

class OutputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct CommandResult {
    int exit_code = kExitOk;
    std::string report;
    std::vector<std::filesystem::path> files;
};

namespace detail {

class CsvFile {
  public:
    CsvFile(const std::filesystem::path &path, std::string_view header) : path_(path) {
        out_.open(path, std::ios::binary | std::ios::trunc);
        if (!out_) {
            throw OutputError("cannot write " + path.string());
        }
        out_ << header << '\n';
    }

    template <class... Cells>
    void row(const Cells &...cells) {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
        out_ << '\n';
    }

    std::filesystem::path close() {
        out_.close();
        if (!out_) {
            throw OutputError("error while writing " + path_.string());
        }
        return path_;
    }

  private:
    static std::string cell(double x) { return format_double(x); }
    template <std::integral T>
    static std::string cell(T x) {
        return std::to_string(x);
    }
    static std::string cell(const std::string &s) { return s; }

    std::filesystem::path path_;
    std::ofstream out_;
};

inline std::filesystem::path prepare_out_dir(const ExperimentConfig &cfg) {
    std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw OutputError("cannot create output directory " + dir.string());
    }
    return dir;
}

inline std::filesystem::path write_manifest(const ExperimentConfig &cfg, Command cmd,
                                            const std::filesystem::path &dir) {
    const auto path = dir / (std::string(command_name(cmd)) + "_manifest.txt");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw OutputError("cannot write " + path.string());
    }
    out << "# dqdcluster run manifest\n"
        << "# command = " << command_name(cmd) << '\n'
        << "# version = " << constants::kVersion << '\n'
        << "# rng = " << kRngAlgorithm << '\n'
        << "# coulomb_constant_mev_nm = " << format_double(constants::kCoulombMeVNm) << '\n'
        << "# hbar_mev_ns = " << format_double(constants::kHbarMeVNs) << '\n'
        << "# relative_permittivity = " << format_double(cfg.device.relative_permittivity)
        << '\n'
        << cfg.to_text();
    out.close();
    if (!out) {
        throw OutputError("error while writing " + path.string());
    }
    return path;
}

/// Calibrated pulse: hold time solved for the target phase, then scaled.
inline DetuningPulse calibrated_pulse(const ExperimentConfig &cfg) {
    DetuningPulse pulse = cfg.pulse_shape();
    const double hold = solve_hold_time(
        pulse, cfg.device, PhaseRadians(cfg.target_phase_over_pi * std::numbers::pi));
    pulse.hold_ns = hold * cfg.hold_scale;
    return pulse;
}

inline ChainState prepare_chain(const ExperimentConfig &cfg, const DetuningPulse &pulse) {
    ChainState state = init_plus_chain(cfg.n_qubits);
    if (cfg.n_qubits >= 2) {
        apply_ising_phases_inplace(state, bond_phase_vector(pulse, cfg.device, cfg.n_qubits));
    }
    return state;
}

inline double linspace_at(double lo, double hi, std::size_t i, std::size_t count) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    return lo * (1.0 - f) + hi * f;
}

}  // namespace detail

inline constexpr std::size_t kFigure2Points = 2001;

/// E_cc against detuning, and detuning / E_cc against time over the
/// calibrated pulse.
inline CommandResult run_figure2(const ExperimentConfig &cfg) {
    cfg.validate(Command::figure2);
    const auto dir = detail::prepare_out_dir(cfg);
    const DetuningPulse pulse = detail::calibrated_pulse(cfg);
    CommandResult result;

    detail::CsvFile sweep(dir / "figure2_ecc_vs_detuning.csv",
                          "eps_mev,theta_rad,singlet_admixture,ecc_mev");
    for (std::size_t i = 0; i < kFigure2Points; ++i) {
        const double eps =
            detail::linspace_at(pulse.eps_low_meV, pulse.eps_high_meV, i, kFigure2Points);
        const AdiabaticAngle theta = adiabatic_angle(EnergyMeV(eps), cfg.device.tunnel_coupling_meV);
        sweep.row(eps, theta.radians(), singlet_admixture(theta), ecc(cfg.device, theta).value);
    }
    result.files.push_back(sweep.close());

    detail::CsvFile trace(dir / "figure2_pulse.csv", "t_ns,eps_mev,ecc_mev");
    double ecc_peak = 0.0;
    for (std::size_t i = 0; i < kFigure2Points; ++i) {
        const double t = detail::linspace_at(0.0, pulse.duration_ns(), i, kFigure2Points);
        const EnergyMeV eps = detuning_at(pulse, t);
        const double e = ecc_at_detuning(cfg.device, eps).value;
        ecc_peak = std::max(ecc_peak, e);
        trace.row(t, eps.value, e);
    }
    result.files.push_back(trace.close());
    result.files.push_back(detail::write_manifest(cfg, Command::figure2, dir));

    std::ostringstream rep;
    rep << "tau1_ns = " << format_double(pulse.ramp_up_ns) << '\n'
        << "tau2_ns = " << format_double(pulse.hold_ns) << '\n'
        << "phase_over_pi = " << format_double(phase_integral(pulse, cfg.device).value / std::numbers::pi)
        << '\n'
        << "ecc_peak_mev = " << format_double(ecc_peak) << '\n';
    result.report = rep.str();
    return result;
}

inline constexpr std::string_view kFigure3Header =
    "n,sigma_over_pi,mc_mean,mc_stderr,exact_mean,trials,seed";

/// Fidelity against chain length at sigma_over_pi, and against sigma at
/// figure3_max_qubits. Both estimators on every row.
inline CommandResult run_figure3(const ExperimentConfig &cfg) {
    cfg.validate(Command::figure3);
    const auto dir = detail::prepare_out_dir(cfg);
    CommandResult result;
    auto emit = [&](detail::CsvFile &csv, std::size_t n, double sigma_over_pi) {
        const PhaseNoiseModel model(sigma_over_pi * std::numbers::pi);
        const FidelityEstimate mc = monte_carlo_fidelity(n, model, cfg.trials, cfg.seed);
        const double exact = exact_mean_fidelity(n, model);
        csv.row(n, sigma_over_pi, mc.mean, mc.standard_error, exact, mc.n_trials, mc.base_seed);
        return mc;
    };

    detail::CsvFile by_n(dir / "figure3_vs_n.csv", kFigure3Header);
    FidelityEstimate last{};
    for (std::size_t n = 2; n <= cfg.figure3_max_qubits; ++n) {
        last = emit(by_n, n, cfg.sigma_over_pi);
    }
    result.files.push_back(by_n.close());

    detail::CsvFile by_sigma(dir / "figure3_vs_sigma.csv", kFigure3Header);
    for (double s : cfg.sigma_grid_over_pi) {
        emit(by_sigma, cfg.figure3_max_qubits, s);
    }
    result.files.push_back(by_sigma.close());
    result.files.push_back(detail::write_manifest(cfg, Command::figure3, dir));

    std::ostringstream rep;
    rep << "n = " << cfg.figure3_max_qubits << ", sigma_over_pi = "
        << format_double(cfg.sigma_over_pi) << ": mc_mean = " << format_double(last.mean)
        << " +- " << format_double(last.standard_error) << ", exact_mean = "
        << format_double(exact_mean_fidelity(cfg.figure3_max_qubits,
                                             PhaseNoiseModel(cfg.sigma_over_pi * std::numbers::pi)))
        << '\n';
    result.report = rep.str();
    return result;
}

/// init -> calibrate -> evolve -> verify. Exit code 2 when any stabilizer
/// falls below 1 - kPrepareStabilizerTolerance.
inline CommandResult run_prepare(const ExperimentConfig &cfg) {
    cfg.validate(Command::prepare);
    const auto dir = detail::prepare_out_dir(cfg);
    const DetuningPulse pulse = detail::calibrated_pulse(cfg);
    const ChainState state = detail::prepare_chain(cfg, pulse);
    const double fidelity = state_fidelity(ideal_cluster(cfg.n_qubits), state);

    CommandResult result;
    detail::CsvFile stab(dir / "prepare_stabilizers.csv", "site,expectation");
    double worst = 1.0;
    for (std::size_t site = 0; site < cfg.n_qubits; ++site) {
        const double k = stabilizer_expectation(state, site);
        worst = std::min(worst, k);
        stab.row(site, k);
    }
    result.files.push_back(stab.close());
    if (cfg.dump_state) {
        const auto path = dir / "prepare_state.csv";
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw OutputError("cannot write " + path.string());
        }
        write_state_csv(out, state);
        result.files.push_back(path);
    }
    result.files.push_back(detail::write_manifest(cfg, Command::prepare, dir));

    const bool pass = worst >= 1.0 - kPrepareStabilizerTolerance;
    std::ostringstream rep;
    rep << "n_qubits = " << cfg.n_qubits << '\n'
        << "tau2_ns = " << format_double(pulse.hold_ns) << '\n'
        << "bond_phase_over_pi = "
        << format_double(cfg.n_qubits >= 2 ? phase_integral(pulse, cfg.device).value / std::numbers::pi
                                           : 0.0)
        << '\n'
        << "fidelity = " << format_double(fidelity) << '\n'
        << "min_stabilizer = " << format_double(worst) << '\n'
        << "status = " << (pass ? "PASS" : "FAIL") << '\n';
    result.report = rep.str();
    result.exit_code = pass ? kExitOk : kExitThreshold;
    return result;
}

/// Prepares the cluster, schedules the requested readout and runs it
/// `trials` times. Trial t uses derive_seed(seed, t). Records of trial 0 go
/// to measure_records.csv; joint outcome counts over all trials go to
/// measure_histogram.csv.
inline CommandResult run_measure_demo(const ExperimentConfig &cfg) {
    cfg.validate(Command::measure_demo);
    const auto dir = detail::prepare_out_dir(cfg);
    const DetuningPulse pulse = detail::calibrated_pulse(cfg);
    const ChainState prepared = detail::prepare_chain(cfg, pulse);
    const auto qubits = cfg.resolved_measure_qubits();
    const auto bases = cfg.resolved_measure_bases();
    const RoundSchedule schedule = schedule_rounds(qubits);

    CommandResult result;
    detail::CsvFile sched(dir / "measure_schedule.csv", "round,qubit");
    for (std::size_t r = 0; r < schedule.rounds.size(); ++r) {
        for (std::size_t q : schedule.rounds[r]) {
            sched.row(r, q);
        }
    }
    result.files.push_back(sched.close());

    std::map<std::string, std::size_t> histogram;
    detail::CsvFile records(dir / "measure_records.csv",
                            "round,qubit,axis_x,axis_y,axis_z,outcome,probability");
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        ChainState state = prepared;
        const auto recs = run_schedule(state, schedule, bases, derive_seed(cfg.seed, t));
        if (t == 0) {
            for (const auto &r : recs) {
                records.row(r.round, r.spec.qubit, r.spec.axis.x(), r.spec.axis.y(),
                            r.spec.axis.z(), r.outcome, r.probability);
            }
        }
        if (!recs.empty()) {
            std::map<std::size_t, int> by_qubit;
            for (const auto &r : recs) {
                by_qubit[r.spec.qubit] = r.outcome;
            }
            std::string key;
            for (const auto &[q, o] : by_qubit) {
                key += o > 0 ? '+' : '-';
            }
            ++histogram[key];
        }
    }
    result.files.push_back(records.close());

    detail::CsvFile hist(dir / "measure_histogram.csv", "outcomes_ascending_qubit,count,frequency");
    for (const auto &[key, count] : histogram) {
        hist.row(key, count, static_cast<double>(count) / static_cast<double>(cfg.trials));
    }
    result.files.push_back(hist.close());
    result.files.push_back(detail::write_manifest(cfg, Command::measure_demo, dir));

    std::ostringstream rep;
    rep << "rounds = " << schedule.rounds.size() << '\n'
        << "measured_qubits = " << qubits.size() << '\n'
        << "trials = " << cfg.trials << '\n';
    result.report = rep.str();
    return result;
}

inline CommandResult run_command(Command cmd, const ExperimentConfig &cfg) {
    switch (cmd) {
    case Command::figure2:
        return run_figure2(cfg);
    case Command::figure3:
        return run_figure3(cfg);
    case Command::prepare:
        return run_prepare(cfg);
    case Command::measure_demo:
        return run_measure_demo(cfg);
    }
    throw std::logic_error("unknown command");
}

}  // namespace dqdcluster::harness
