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

#ifndef NOMAWF_HARNESS_HPP
#define NOMAWF_HARNESS_HPP

#include "nomawf/channel.hpp"
#include "nomawf/grouping.hpp"
#include "nomawf/model.hpp"
#include "nomawf/oracle.hpp"
#include "nomawf/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nomawf
{

enum class SweepVariable
{
    min_rate_bps,
    num_users
};

std::string sweep_variable_label(SweepVariable v);

struct ExperimentConfig
{
    ScenarioConfig scenario;
    std::vector<SchemeSpec> schemes;
    SweepVariable sweep_variable = SweepVariable::min_rate_bps;
    std::vector<double> sweep_values;
    double fixed_min_rate_bps = 3e6;
    int fixed_num_users = 30;
    int trials = 500;
    std::string output_path = "results.csv";
    double eps = 1e-10;
    int max_iter = 200;
};

struct TrialResult
{
    bool feasible = false;
    bool converged = true;
    double sum_rate_bps = 0.0; // zero when infeasible
};

/// One Monte Carlo trial: realization -> grouping -> problem (masks default
/// to p_max) -> feasibility -> solve. The realization depends only on
/// trial_seed, so the same trial shares geometry and shadowing across
/// schemes and sweep points.
TrialResult run_trial(const ScenarioConfig &scenario, const SchemeSpec &scheme,
                      double min_rate_bps, int num_users, std::uint64_t trial_seed,
                      double eps = 1e-10, int max_iter = 200);

struct SweepRow
{
    SweepVariable variable = SweepVariable::min_rate_bps;
    double value = 0.0;
    SchemeSpec scheme;
    int trials_run = 0; // trials minus nonconverged ones
    double outage_probability = 0.0;
    double avg_sum_rate_bps = 0.0; // infeasible trials count as zero rate
    int infeasible_count = 0;
    int nonconverged_count = 0; // excluded from outage and rate averages
};

/// Full factorial over sweep points x schemes x trials. Trial seeds are
/// derived from (scenario.seed, trial index) only, pairing the channel draw
/// across schemes. Deterministic row order: sweep point major, scheme minor.
std::vector<SweepRow> run_sweep(const ExperimentConfig &config);

/// CSV with header sweep_variable,sweep_value,scheme,u_max,trials,
/// outage_probability,avg_sum_rate_bps,infeasible_count,nonconverged_count.
/// Doubles are rendered shortest-round-trip, always with a decimal point.
std::string csv_string(const std::vector<SweepRow> &rows);
void emit_csv(const std::vector<SweepRow> &rows, const std::string &path);

std::uint64_t derive_trial_seed(std::uint64_t experiment_seed, std::uint64_t trial_index);

/// Random cluster for verification corpora: cnr log-uniform over six orders
/// of magnitude, normalized demands uniform in [0, 4].
ClusterInstance random_cluster(SplitRng &rng, int subchannel_id, int size, double bandwidth_hz);

/// Random feasible instance: masks and the cellular budget drawn with slack
/// above the per-cluster q_min, so the solver always has room.
ProblemInstance random_feasible_instance(SplitRng &rng, int max_clusters, int max_cluster_size);

struct VerifyReport
{
    int instances = 0;
    oracle::OracleReport budget_gap;     // vs p_max, bisection vs breakpoint
    oracle::OracleReport objective_gap;  // relative, on the attained sum-rate
    oracle::OracleReport qmin_gap;       // relative, recursion vs bisection
    bool pass = false;
};

/// Cross-checks the allocator against the oracle module on random feasible
/// instances (clusters <= 8, sizes <= 6): budgets within 1e-6 * p_max,
/// objective within 1e-8 relative, q_min within 1e-9 relative.
VerifyReport verify_against_oracle(std::uint64_t seed, int instances);

} // namespace nomawf

#endif
