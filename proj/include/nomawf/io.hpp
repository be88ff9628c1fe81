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

#ifndef NOMAWF_IO_HPP
#define NOMAWF_IO_HPP

#include "nomawf/allocator.hpp"
#include "nomawf/harness.hpp"
#include "nomawf/model.hpp"

#include <json.hpp>

#include <string>

namespace nomawf
{

/// Instance document: bandwidth_hz, p_max_watt, optional p_mask_watt array
/// (defaults to p_max per cluster), clusters[].subchannel_id and
/// clusters[].users[].{user_id, cnr_per_watt, min_rate_bps}.
/// All parse errors name the offending field.
ProblemInstance parse_problem_instance(const nlohmann::json &doc);
ProblemInstance load_problem_instance(const std::string &path);

/// Experiment document mirroring ExperimentConfig; every missing key falls
/// back to the default downlink scenario (46 dBm, 500 m cell, 5 MHz,
/// -174 dBm/Hz, 8 dB shadowing, 30 users, 3 Mbps demands, 500 trials).
ExperimentConfig parse_experiment_config(const nlohmann::json &doc);
ExperimentConfig load_experiment_config(const std::string &path);

nlohmann::json solution_to_json(const ProblemInstance &instance, const PowerSolution &solution);
nlohmann::json feasibility_to_json(const ProblemInstance &instance,
                                   const FeasibilityReport &report);
nlohmann::json verify_report_to_json(const VerifyReport &report);

enum class SolveFileStatus
{
    solved,
    infeasible
};

/// Reads an instance document, solves it and writes either the solution or
/// a structured infeasibility report. Empty output_path writes to stdout.
SolveFileStatus solve_file(const std::string &instance_path, const std::string &output_path,
                           double eps = 1e-10, int max_iter = 200);

} // namespace nomawf

#endif
