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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dqdcluster/harness/commands.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace dqdcluster;
using namespace dqdcluster::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string &name) {
    const fs::path dir = fs::path(DQDCLUSTER_TEST_SCRATCH) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

using Table = std::vector<std::vector<std::string>>;

Table read_csv(const fs::path &p, std::string *header = nullptr) {
    std::ifstream in(p, std::ios::binary);
    std::string line;
    std::getline(in, line);
    if (header) {
        *header = line;
    }
    Table rows;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

ExperimentConfig base_config(const fs::path &dir) {
    ExperimentConfig cfg;
    cfg.out_dir = dir.string();
    return cfg;
}

#ifdef DQDCLUSTER_CLI_PATH
int run_cli(const std::string &args) {
    const std::string cmd = std::string(DQDCLUSTER_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST(config, parses_keys_and_comments) {
    ExperimentConfig cfg;
    apply_config_text(cfg, "# comment\n"
                           "tc_mev = 0.02\n"
                           "\n"
                           "n_qubits=6\n"
                           "sigma_grid_over_pi = 0, 0.05\n"
                           "measure_qubits = 1,3\n"
                           "measure_axes = x;0.6,0,0.8\n"
                           "dump_state = true\n");
    EXPECT_EQ(cfg.device.tunnel_coupling_meV, 0.02);
    EXPECT_EQ(cfg.n_qubits, 6u);
    EXPECT_EQ(cfg.sigma_grid_over_pi, (std::vector<double>{0.0, 0.05}));
    EXPECT_TRUE(cfg.dump_state);
    const auto bases = cfg.resolved_measure_bases();
    ASSERT_EQ(bases.size(), 2u);
    EXPECT_EQ(bases.at(1), BlochAxis::x_axis());
    EXPECT_EQ(bases.at(3), BlochAxis(0.6, 0.0, 0.8));
}

TEST(config, rejects_unknown_and_malformed) {
    ExperimentConfig cfg;
    EXPECT_THROW(apply_config_text(cfg, "tunnel_coupling = 0.01\n"), ValidationError);
    EXPECT_THROW(apply_config_text(cfg, "tc_mev 0.01\n"), ValidationError);
    EXPECT_THROW(apply_setting(cfg, "n_qubits", "ten"), ValidationError);
    EXPECT_THROW(apply_setting(cfg, "tc_mev", "0.01abc"), ValidationError);
    EXPECT_THROW(apply_setting(cfg, "dump_state", "maybe"), ValidationError);
}

TEST(config, validation_failures) {
    ExperimentConfig cfg;
    cfg.device.tunnel_coupling_meV = 0.0;
    EXPECT_THROW(cfg.validate(Command::prepare), ValidationError);
    cfg = {};
    cfg.n_qubits = 30;
    EXPECT_THROW(cfg.validate(Command::prepare), ValidationError);
    cfg = {};
    cfg.trials = 10;
    EXPECT_THROW(cfg.validate(Command::figure3), ValidationError);
    cfg = {};
    cfg.n_qubits = 4;
    cfg.measure_qubits = std::vector<std::size_t>{1, 4};
    EXPECT_THROW(cfg.validate(Command::measure_demo), ValidationError);
    cfg.measure_qubits = std::vector<std::size_t>{1, 1};
    EXPECT_THROW(cfg.validate(Command::measure_demo), ValidationError);
}

TEST(config, to_text_round_trips) {
    ExperimentConfig cfg;
    cfg.device.tunnel_coupling_meV = 0.013;
    cfg.sigma_over_pi = 0.1 / 3.0;
    cfg.measure_qubits = std::vector<std::size_t>{0, 2};
    cfg.measure_axes = {"x", "0.6,0,0.8"};
    ExperimentConfig back;
    apply_config_text(back, cfg.to_text());
    EXPECT_EQ(back.to_text(), cfg.to_text());
    EXPECT_EQ(back.sigma_over_pi, cfg.sigma_over_pi);
}

TEST(figure2, sweep_and_pulse_trace) {
    const fs::path dir = scratch_dir("figure2");
    const CommandResult r = run_figure2(base_config(dir));
    EXPECT_EQ(r.exit_code, kExitOk);

    std::string header;
    const Table sweep = read_csv(dir / "figure2_ecc_vs_detuning.csv", &header);
    EXPECT_EQ(header, "eps_mev,theta_rad,singlet_admixture,ecc_mev");
    ASSERT_EQ(sweep.size(), kFigure2Points);
    EXPECT_EQ(std::stod(sweep.front()[0]), -2.5);
    EXPECT_EQ(std::stod(sweep.back()[0]), 2.5);
    double peak = 0.0;
    double prev = -1.0;
    for (const auto &row : sweep) {
        peak = std::max(peak, std::stod(row[3]));
        EXPECT_GE(std::stod(row[1]), prev);
        prev = std::stod(row[1]);
    }
    EXPECT_NEAR(peak, 5.54e-4, 0.005 * 5.54e-4);

    const Table trace = read_csv(dir / "figure2_pulse.csv", &header);
    EXPECT_EQ(header, "t_ns,eps_mev,ecc_mev");
    ASSERT_EQ(trace.size(), kFigure2Points);
    EXPECT_EQ(std::stod(trace.front()[1]), -2.5);
    EXPECT_NEAR(std::stod(trace.back()[0]),
                2.0 + oracle::golden("hold_time_ns_tau1_1ns"), 1e-9);
    EXPECT_TRUE(fs::exists(dir / "figure2_manifest.txt"));
}

TEST(figure3, rows_and_trends) {
    const fs::path dir = scratch_dir("figure3");
    ExperimentConfig cfg = base_config(dir);
    cfg.trials = 2000;
    const CommandResult r = run_figure3(cfg);
    EXPECT_EQ(r.exit_code, kExitOk);

    std::string header;
    const Table by_n = read_csv(dir / "figure3_vs_n.csv", &header);
    EXPECT_EQ(header, "n,sigma_over_pi,mc_mean,mc_stderr,exact_mean,trials,seed");
    ASSERT_EQ(by_n.size(), 19u);
    EXPECT_EQ(by_n.front()[0], "2");
    EXPECT_EQ(by_n.back()[0], "20");
    EXPECT_NEAR(std::stod(by_n.back()[4]), 0.957, 0.02);
    for (std::size_t i = 1; i < by_n.size(); ++i) {
        EXPECT_LT(std::stod(by_n[i][4]), std::stod(by_n[i - 1][4]));
    }

    const Table by_sigma = read_csv(dir / "figure3_vs_sigma.csv");
    ASSERT_EQ(by_sigma.size(), 11u);
    EXPECT_EQ(std::stod(by_sigma.front()[2]), 1.0);
    EXPECT_EQ(std::stod(by_sigma.front()[4]), 1.0);
    for (std::size_t i = 1; i < by_sigma.size(); ++i) {
        EXPECT_LT(std::stod(by_sigma[i][4]), std::stod(by_sigma[i - 1][4]));
    }
}

TEST(prepare, default_chain_passes) {
    const fs::path dir = scratch_dir("prepare_ok");
    ExperimentConfig cfg = base_config(dir);
    cfg.dump_state = true;
    const CommandResult r = run_prepare(cfg);
    EXPECT_EQ(r.exit_code, kExitOk);
    EXPECT_NE(r.report.find("status = PASS"), std::string::npos);
    const Table stab = read_csv(dir / "prepare_stabilizers.csv");
    ASSERT_EQ(stab.size(), 10u);
    for (const auto &row : stab) {
        EXPECT_GE(std::stod(row[1]), 1.0 - 1e-8);
    }
    EXPECT_EQ(read_csv(dir / "prepare_state.csv").size(), 1024u);
}

TEST(prepare, half_hold_fails_threshold) {
    const fs::path dir = scratch_dir("prepare_half");
    ExperimentConfig cfg = base_config(dir);
    cfg.n_qubits = 2;
    cfg.tau1_ns = 0.0;
    cfg.hold_scale = 0.5;
    const CommandResult r = run_prepare(cfg);
    EXPECT_EQ(r.exit_code, kExitThreshold);
    // A pi/2 bond phase gives (5 + 3 cos(pi/2)) / 8 = 0.625.
    const auto pos = r.report.find("fidelity = ");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_NEAR(std::stod(r.report.substr(pos + 11)), 0.625, 1e-9);
}

TEST(prepare, single_qubit_is_trivially_ideal) {
    const fs::path dir = scratch_dir("prepare_one");
    ExperimentConfig cfg = base_config(dir);
    cfg.n_qubits = 1;
    const CommandResult r = run_prepare(cfg);
    EXPECT_EQ(r.exit_code, kExitOk);
    EXPECT_NE(r.report.find("fidelity = 1\n"), std::string::npos);
}

TEST(measure_demo, all_qubits_two_rounds) {
    const fs::path dir = scratch_dir("measure_all");
    ExperimentConfig cfg = base_config(dir);
    cfg.n_qubits = 5;
    cfg.trials = 10;
    const CommandResult r = run_measure_demo(cfg);
    EXPECT_EQ(r.exit_code, kExitOk);
    const Table sched = read_csv(dir / "measure_schedule.csv");
    ASSERT_EQ(sched.size(), 5u);
    EXPECT_EQ(sched[0], (std::vector<std::string>{"0", "0"}));
    EXPECT_EQ(sched[3], (std::vector<std::string>{"1", "1"}));
    EXPECT_EQ(read_csv(dir / "measure_records.csv").size(), 5u);
}

TEST(measure_demo, empty_request) {
    const fs::path dir = scratch_dir("measure_empty");
    ExperimentConfig cfg = base_config(dir);
    cfg.n_qubits = 3;
    cfg.trials = 5;
    cfg.measure_qubits = std::vector<std::size_t>{};
    const CommandResult r = run_measure_demo(cfg);
    EXPECT_EQ(r.exit_code, kExitOk);
    EXPECT_NE(r.report.find("rounds = 0"), std::string::npos);
    EXPECT_TRUE(read_csv(dir / "measure_schedule.csv").empty());
    EXPECT_TRUE(read_csv(dir / "measure_histogram.csv").empty());
}

TEST(measure_demo, histogram_matches_born_rule) {
    const fs::path dir = scratch_dir("measure_hist");
    ExperimentConfig cfg = base_config(dir);
    cfg.n_qubits = 3;
    cfg.trials = 10'000;
    cfg.measure_axes = {"z"};
    run_measure_demo(cfg);
    // All z outcomes of a 3-chain cluster are equally likely.
    const Table hist = read_csv(dir / "measure_histogram.csv");
    double tv = 0.0;
    double seen = 0.0;
    for (const auto &row : hist) {
        tv += std::fabs(std::stod(row[2]) - 0.125);
        seen += 0.125;
    }
    tv += 1.0 - seen;  // outcomes that never occurred
    EXPECT_LT(0.5 * tv, 0.02);
}

TEST(manifest, rerun_is_byte_identical) {
    const fs::path a = scratch_dir("manifest_a");
    ExperimentConfig cfg = base_config(a);
    cfg.n_qubits = 4;
    cfg.trials = 300;
    cfg.seed = 424242;
    cfg.sigma_over_pi = 0.05;
    cfg.figure3_max_qubits = 6;
    cfg.measure_axes = {"0.6,0,0.8"};
    const std::vector<Command> cmds = {Command::figure2, Command::figure3, Command::prepare,
                                       Command::measure_demo};
    for (Command c : cmds) {
        const CommandResult first = run_command(c, cfg);
        const fs::path manifest = a / (std::string(command_name(c)) + "_manifest.txt");
        const fs::path b = scratch_dir("manifest_b");
        ExperimentConfig replay = load_config_file(manifest);
        replay.out_dir = b.string();
        const CommandResult second = run_command(c, replay);
        ASSERT_EQ(first.files.size(), second.files.size());
        for (const auto &f : first.files) {
            if (f.extension() == ".csv") {
                EXPECT_EQ(slurp(f), slurp(b / f.filename())) << f;
            }
        }
    }
}

#ifdef DQDCLUSTER_CLI_PATH
TEST(cli, exit_codes) {
    const fs::path dir = scratch_dir("cli");
    const std::string out = " --out " + (dir / "x").string();
    EXPECT_EQ(run_cli("prepare --qubits 4" + out), 0);
    EXPECT_EQ(run_cli("prepare --qubits 2 --set tau1_ns=0 --set hold_scale=0.5" + out), 2);
    EXPECT_EQ(run_cli("prepare --set tc_mev=0" + out), 1);
    EXPECT_EQ(run_cli("prepare --set no_such_key=1" + out), 1);
    EXPECT_EQ(run_cli("prepare --config " + (dir / "missing.cfg").string() + out), 1);
    EXPECT_EQ(run_cli("figure3 --trials 10" + out), 1);
    EXPECT_EQ(run_cli("bogus"), 1);

    std::ofstream(dir / "run.cfg") << "n_qubits = 3\nmeasure_axes = x\n";
    EXPECT_EQ(run_cli("measure-demo --trials 20 --config " + (dir / "run.cfg").string() + out), 0);
    EXPECT_EQ(read_csv(dir / "x" / "measure_schedule.csv").size(), 3u);
}
#endif  // DQDCLUSTER_CLI_PATH
