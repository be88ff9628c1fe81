// nomawf - optimal water-filling power allocation for downlink multi-cluster NOMA
// Copyright (C) 2026 the nomawf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "nomawf/allocator.hpp"
#include "nomawf/harness.hpp"
#include "nomawf/io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

namespace
{
// exit statuses: 0 success, 2 infeasible instance, 1 error
constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kInfeasible = 2;

int run_solve(const std::string &instance_path, const std::string &out_path)
{
    return nomawf::solve_file(instance_path, out_path) == nomawf::SolveFileStatus::solved
               ? kOk
               : kInfeasible;
}

int run_feasibility(const std::string &instance_path, const std::string &out_path)
{
    const auto instance = nomawf::load_problem_instance(instance_path);
    const auto report = nomawf::feasibility(instance);
    const std::string text = nomawf::feasibility_to_json(instance, report).dump(2) + "\n";
    if (out_path.empty())
    {
        std::cout << text;
    }
    else
    {
        std::ofstream f(out_path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open '" + out_path + "' for writing");
        f << text;
    }
    return report.feasible ? kOk : kInfeasible;
}

int run_sweep_cmd(const std::string &config_path, std::uint64_t seed, bool seed_set, int trials,
                  const std::string &out_path)
{
    auto config = nomawf::load_experiment_config(config_path);
    if (seed_set)
        config.scenario.seed = seed;
    if (trials > 0)
        config.trials = trials;
    if (!out_path.empty())
        config.output_path = out_path;

    const auto rows = nomawf::run_sweep(config);
    nomawf::emit_csv(rows, config.output_path);
    std::cout << "wrote " << rows.size() << " rows to " << config.output_path << "\n";
    return kOk;
}

int run_verify(std::uint64_t seed, int instances, const std::string &out_path)
{
    const auto report = nomawf::verify_against_oracle(seed, instances);
    const std::string text = nomawf::verify_report_to_json(report).dump(2) + "\n";
    if (out_path.empty())
    {
        std::cout << text;
    }
    else
    {
        std::ofstream f(out_path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open '" + out_path + "' for writing");
        f << text;
    }
    return report.pass ? kOk : kError;
}
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"globally optimal power allocation for downlink multi-cluster NOMA"};
    app.require_subcommand(1);

    std::string instance_path, config_path, out_path;
    std::uint64_t seed = 0;
    int trials = 0;
    int instances = 1000;

    auto *solve_cmd = app.add_subcommand("solve", "solve one problem instance file");
    solve_cmd->add_option("instance", instance_path, "instance JSON path")->required();
    solve_cmd->add_option("--out", out_path, "output path (default: stdout)");

    auto *feas_cmd = app.add_subcommand("feasibility", "feasibility report for an instance file");
    feas_cmd->add_option("instance", instance_path, "instance JSON path")->required();
    feas_cmd->add_option("--out", out_path, "output path (default: stdout)");

    auto *sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep, CSV output");
    sweep_cmd->add_option("config", config_path, "experiment config JSON path")->required();
    auto *seed_opt = sweep_cmd->add_option("--seed", seed, "override scenario seed");
    sweep_cmd->add_option("--trials", trials, "override trial count");
    sweep_cmd->add_option("--out", out_path, "override output CSV path");

    auto *verify_cmd = app.add_subcommand("verify", "solver vs. oracle agreement suite");
    verify_cmd->add_option("--seed", seed, "corpus seed");
    verify_cmd->add_option("--trials", instances, "number of random instances");
    verify_cmd->add_option("--out", out_path, "output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (solve_cmd->parsed())
            return run_solve(instance_path, out_path);
        if (feas_cmd->parsed())
            return run_feasibility(instance_path, out_path);
        if (sweep_cmd->parsed())
            return run_sweep_cmd(config_path, seed, !seed_opt->empty(), trials, out_path);
        return run_verify(seed, instances, out_path);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
}
