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

#include "nomawf/harness.hpp"

#include "nomawf/allocator.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace nomawf
{

namespace
{
    std::string format_double(double x)
    {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), x);
        std::string s(buf, res.ptr);
        // keep the column unambiguously floating-point
        if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
            s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
            s += ".0";
        return s;
    }
} // namespace

std::string sweep_variable_label(SweepVariable v)
{
    return v == SweepVariable::min_rate_bps ? "min_rate_bps" : "num_users";
}

std::uint64_t derive_trial_seed(std::uint64_t experiment_seed, std::uint64_t trial_index)
{
    return SplitRng(experiment_seed).split(trial_index).state();
}

TrialResult run_trial(const ScenarioConfig &scenario, const SchemeSpec &scheme,
                      double min_rate_bps, int num_users, std::uint64_t trial_seed, double eps,
                      int max_iter)
{
    ScenarioConfig sc = scenario;
    sc.num_users = num_users;

    const ChannelRealization realization = generate_realization(sc, trial_seed);
    const int n_sub = num_subchannels(scheme, num_users);
    const Eigen::MatrixXd cnrs = realize_cnrs(sc, realization, n_sub);
    const Eigen::ArrayXd demands = Eigen::ArrayXd::Constant(num_users, min_rate_bps);

    auto clusters = group_users(cnrs, demands, scheme, sc.total_bandwidth_hz);
    const double p_max = dbm_to_watt(sc.bs_power_dbm);
    const auto n_clusters = static_cast<Eigen::Index>(clusters.size());
    ProblemInstance instance = make_problem(std::move(clusters), p_max,
                                            Eigen::ArrayXd::Constant(n_clusters, p_max));

    const SolveResult res = solve(instance, eps, max_iter);
    if (!res.solution)
        return TrialResult{false, true, 0.0};
    if (!res.solution->converged)
        return TrialResult{true, false, 0.0};

    double sum_rate = 0.0;
    for (const auto &[id, r] : res.solution->rates_bps)
        sum_rate += r;
    return TrialResult{true, true, sum_rate};
}

std::vector<SweepRow> run_sweep(const ExperimentConfig &config)
{
    if (config.trials < 1)
        throw std::invalid_argument("trials must be >= 1");
    if (config.sweep_values.empty())
        throw std::invalid_argument("sweep_values must be non-empty");
    if (config.schemes.empty())
        throw std::invalid_argument("schemes must be non-empty");

    std::vector<SweepRow> rows;
    rows.reserve(config.sweep_values.size() * config.schemes.size());

    for (double point : config.sweep_values)
        for (const SchemeSpec &scheme : config.schemes)
        {
            const int num_users = config.sweep_variable == SweepVariable::num_users
                                      ? static_cast<int>(point)
                                      : config.fixed_num_users;
            const double min_rate = config.sweep_variable == SweepVariable::min_rate_bps
                                        ? point
                                        : config.fixed_min_rate_bps;

            SweepRow row;
            row.variable = config.sweep_variable;
            row.value = point;
            row.scheme = scheme;

            double rate_sum = 0.0;
            for (int t = 0; t < config.trials; ++t)
            {
                const std::uint64_t trial_seed =
                    derive_trial_seed(config.scenario.seed, static_cast<std::uint64_t>(t));
                const TrialResult r = run_trial(config.scenario, scheme, min_rate, num_users,
                                                trial_seed, config.eps, config.max_iter);
                if (!r.converged)
                {
                    ++row.nonconverged_count;
                    continue;
                }
                if (!r.feasible)
                {
                    ++row.infeasible_count;
                    continue; // contributes zero rate
                }
                rate_sum += r.sum_rate_bps;
            }

            row.trials_run = config.trials - row.nonconverged_count;
            if (row.trials_run > 0)
            {
                row.outage_probability =
                    static_cast<double>(row.infeasible_count) / row.trials_run;
                row.avg_sum_rate_bps = rate_sum / row.trials_run;
            }
            rows.push_back(row);
        }
    return rows;
}

std::string csv_string(const std::vector<SweepRow> &rows)
{
    std::string out = "sweep_variable,sweep_value,scheme,u_max,trials,outage_probability,"
                      "avg_sum_rate_bps,infeasible_count,nonconverged_count\n";
    for (const SweepRow &r : rows)
    {
        out += sweep_variable_label(r.variable);
        out += ',';
        out += format_double(r.value);
        out += ',';
        out += scheme_label(r.scheme);
        out += ',';
        out += std::to_string(r.scheme.kind == SchemeKind::noma ? r.scheme.u_max : 0);
        out += ',';
        out += std::to_string(r.trials_run);
        out += ',';
        out += format_double(r.outage_probability);
        out += ',';
        out += format_double(r.avg_sum_rate_bps);
        out += ',';
        out += std::to_string(r.infeasible_count);
        out += ',';
        out += std::to_string(r.nonconverged_count);
        out += '\n';
    }
    return out;
}

void emit_csv(const std::vector<SweepRow> &rows, const std::string &path)
{
    if (rows.empty())
        throw std::invalid_argument("refusing to write an empty result table");
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    f << csv_string(rows);
    if (!f)
        throw std::runtime_error("write failed for '" + path + "'");
}

ClusterInstance random_cluster(SplitRng &rng, int subchannel_id, int size, double bandwidth_hz)
{
    std::vector<UserChannel> users;
    users.reserve(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k)
    {
        UserChannel u;
        u.user_id = subchannel_id * 1000 + k;
        u.cnr = std::pow(10.0, rng.next_uniform(-2.0, 4.0));
        u.min_rate_bps = rng.next_uniform(0.0, 4.0) * bandwidth_hz;
        users.push_back(u);
    }
    return make_cluster(subchannel_id, std::move(users), bandwidth_hz);
}

ProblemInstance random_feasible_instance(SplitRng &rng, int max_clusters, int max_cluster_size)
{
    const int n_clusters = 1 + static_cast<int>(rng.next_uniform(0.0, 1.0) * max_clusters) %
                                   std::max(1, max_clusters);
    const double bandwidth = std::pow(10.0, rng.next_uniform(0.0, 6.0));

    std::vector<ClusterInstance> clusters;
    Eigen::ArrayXd masks(n_clusters);
    Eigen::ArrayXd qmins(n_clusters);
    for (int n = 0; n < n_clusters; ++n)
    {
        const int size = 1 + static_cast<int>(rng.next_uniform(0.0, 1.0) * max_cluster_size) %
                                 std::max(1, max_cluster_size);
        clusters.push_back(random_cluster(rng, n, size, bandwidth));
        qmins[n] = q_min(clusters.back());
        // headroom above q_min keeps the box non-degenerate
        masks[n] = (qmins[n] + 1e-6) * rng.next_uniform(1.5, 4.0);
    }

    const double p_max =
        qmins.sum() + rng.next_uniform(0.05, 1.0) * (masks.sum() - qmins.sum());
    return make_problem(std::move(clusters), p_max, std::move(masks));
}

VerifyReport verify_against_oracle(std::uint64_t seed, int instances)
{
    VerifyReport report;
    report.instances = instances;
    SplitRng root(seed);

    const auto note = [](oracle::OracleReport &r, double abs_gap, double rel_gap,
                         const std::string &where) {
        if (abs_gap > r.max_abs_gap)
            r.max_abs_gap = abs_gap;
        if (rel_gap > r.max_rel_gap)
        {
            r.max_rel_gap = rel_gap;
            r.argmax_case = where;
        }
    };

    bool pass = true;
    for (int i = 0; i < instances; ++i)
    {
        SplitRng rng = root.split(static_cast<std::uint64_t>(i));
        const ProblemInstance instance = random_feasible_instance(rng, 8, 6);
        const std::string tag =
            "instance " + std::to_string(i) + " (seed " + std::to_string(seed) + ")";

        std::vector<VirtualUser> vus;
        double shift_sum = 0.0;
        for (std::size_t n = 0; n < instance.clusters.size(); ++n)
        {
            const ClusterInstance &cluster = instance.clusters[n];
            vus.push_back(
                make_virtual_user(cluster, instance.p_mask_watt[static_cast<Eigen::Index>(n)]));
            shift_sum += vus.back().c_watt / vus.back().alpha;

            const double qm_closed = q_min(cluster);
            const double qm_oracle = oracle::qmin_by_bisection(cluster);
            const double gap = std::abs(qm_closed - qm_oracle);
            const double rel = gap / std::max({qm_closed, qm_oracle, 1e-300});
            note(report.qmin_gap, gap, rel, tag);
            if (rel > 1e-9)
                pass = false;
        }

        const WaterfillResult wf = waterfill(vus, instance.p_max_watt);
        const Eigen::ArrayXd oracle_shifted =
            oracle::breakpoint_waterfill(vus, instance.p_max_watt - shift_sum);

        double objective = 0.0;
        double oracle_objective = 0.0;
        for (std::size_t n = 0; n < instance.clusters.size(); ++n)
        {
            const auto idx = static_cast<Eigen::Index>(n);
            const double q_oracle = oracle_shifted[idx] + vus[n].c_watt / vus[n].alpha;
            const double gap = std::abs(wf.budgets_watt[idx] - q_oracle);
            note(report.budget_gap, gap, gap / instance.p_max_watt, tag);
            if (gap > 1e-6 * instance.p_max_watt)
                pass = false;

            objective += cluster_rate_at_budget(instance.clusters[n], wf.budgets_watt[idx]);
            oracle_objective += cluster_rate_at_budget(instance.clusters[n], q_oracle);
        }
        const double obj_gap = std::abs(objective - oracle_objective);
        const double obj_rel = obj_gap / std::max({objective, oracle_objective, 1e-300});
        note(report.objective_gap, obj_gap, obj_rel, tag);
        if (obj_rel > 1e-8)
            pass = false;
    }

    report.pass = pass;
    return report;
}

} // namespace nomawf
