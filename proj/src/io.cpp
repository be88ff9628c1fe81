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

#include "nomawf/io.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace nomawf
{

namespace
{
    using nlohmann::json;

    [[noreturn]] void fail(const std::string &context, const std::string &what)
    {
        throw std::runtime_error(context + ": " + what);
    }

    const json &require(const json &j, const char *field, const std::string &context)
    {
        const auto it = j.find(field);
        if (it == j.end())
            fail(context, std::string("missing field '") + field + "'");
        return *it;
    }

    double require_number(const json &j, const char *field, const std::string &context)
    {
        const json &v = require(j, field, context);
        if (!v.is_number())
            fail(context, std::string("field '") + field + "' must be a number");
        return v.get<double>();
    }

    int require_int(const json &j, const char *field, const std::string &context)
    {
        const json &v = require(j, field, context);
        if (!v.is_number_integer())
            fail(context, std::string("field '") + field + "' must be an integer");
        return v.get<int>();
    }

    json load_json(const std::string &path)
    {
        std::ifstream f(path);
        if (!f)
            throw std::runtime_error("cannot open '" + path + "'");
        try
        {
            return json::parse(f);
        }
        catch (const json::parse_error &e)
        {
            throw std::runtime_error("parse error in '" + path + "': " + e.what());
        }
    }

    SchemeSpec parse_scheme(const json &j, const std::string &context)
    {
        SchemeSpec spec;
        const json &kind = require(j, "kind", context);
        if (!kind.is_string())
            fail(context, "field 'kind' must be a string");
        const std::string k = kind.get<std::string>();
        if (k == "fully_sc_sic")
            spec.kind = SchemeKind::fully_sc_sic;
        else if (k == "noma")
            spec.kind = SchemeKind::noma;
        else if (k == "fdma")
            spec.kind = SchemeKind::fdma;
        else
            fail(context, "field 'kind' must be one of fully_sc_sic, noma, fdma");
        if (spec.kind == SchemeKind::noma)
            spec.u_max = require_int(j, "u_max", context);
        return spec;
    }
} // namespace

ProblemInstance parse_problem_instance(const json &doc)
{
    const std::string ctx = "instance";
    const double bandwidth = require_number(doc, "bandwidth_hz", ctx);
    const double p_max = require_number(doc, "p_max_watt", ctx);

    const json &jclusters = require(doc, "clusters", ctx);
    if (!jclusters.is_array() || jclusters.empty())
        fail(ctx, "field 'clusters' must be a non-empty array");

    std::vector<ClusterInstance> clusters;
    clusters.reserve(jclusters.size());
    for (std::size_t n = 0; n < jclusters.size(); ++n)
    {
        const std::string cctx = ctx + ".clusters[" + std::to_string(n) + "]";
        const json &jc = jclusters[n];
        const int subchannel = require_int(jc, "subchannel_id", cctx);
        const json &jusers = require(jc, "users", cctx);
        if (!jusers.is_array() || jusers.empty())
            fail(cctx, "field 'users' must be a non-empty array");

        std::vector<UserChannel> users;
        users.reserve(jusers.size());
        for (std::size_t k = 0; k < jusers.size(); ++k)
        {
            const std::string uctx = cctx + ".users[" + std::to_string(k) + "]";
            const json &ju = jusers[k];
            UserChannel u;
            u.user_id = require_int(ju, "user_id", uctx);
            u.cnr = require_number(ju, "cnr_per_watt", uctx);
            u.min_rate_bps = require_number(ju, "min_rate_bps", uctx);
            users.push_back(u);
        }
        clusters.push_back(make_cluster(subchannel, std::move(users), bandwidth));
    }

    Eigen::ArrayXd masks;
    if (doc.contains("p_mask_watt"))
    {
        const json &jm = doc["p_mask_watt"];
        if (!jm.is_array() || jm.size() != clusters.size())
            fail(ctx, "field 'p_mask_watt' must be an array with one entry per cluster");
        masks.resize(static_cast<Eigen::Index>(jm.size()));
        for (std::size_t n = 0; n < jm.size(); ++n)
        {
            if (!jm[n].is_number())
                fail(ctx, "field 'p_mask_watt[" + std::to_string(n) + "]' must be a number");
            masks[static_cast<Eigen::Index>(n)] = jm[n].get<double>();
        }
    }
    else
    {
        masks = Eigen::ArrayXd::Constant(static_cast<Eigen::Index>(clusters.size()), p_max);
    }

    return make_problem(std::move(clusters), p_max, std::move(masks));
}

ProblemInstance load_problem_instance(const std::string &path)
{
    return parse_problem_instance(load_json(path));
}

ExperimentConfig parse_experiment_config(const json &doc)
{
    const std::string ctx = "config";
    ExperimentConfig cfg;

    if (doc.contains("scenario"))
    {
        const json &s = doc["scenario"];
        ScenarioConfig &sc = cfg.scenario;
        sc.num_users = s.value("num_users", sc.num_users);
        sc.cell_radius_m = s.value("cell_radius_m", sc.cell_radius_m);
        sc.min_distance_m = s.value("min_distance_m", sc.min_distance_m);
        sc.total_bandwidth_hz = s.value("total_bandwidth_hz", sc.total_bandwidth_hz);
        sc.bs_power_dbm = s.value("bs_power_dbm", sc.bs_power_dbm);
        sc.noise_density_dbm_hz = s.value("noise_density_dbm_hz", sc.noise_density_dbm_hz);
        sc.shadowing_sigma_db = s.value("shadowing_sigma_db", sc.shadowing_sigma_db);
        sc.seed = s.value("seed", sc.seed);
    }

    if (doc.contains("schemes"))
    {
        const json &js = doc["schemes"];
        if (!js.is_array() || js.empty())
            fail(ctx, "field 'schemes' must be a non-empty array");
        for (std::size_t i = 0; i < js.size(); ++i)
            cfg.schemes.push_back(parse_scheme(js[i], ctx + ".schemes[" + std::to_string(i) + "]"));
    }
    else
    {
        cfg.schemes = {SchemeSpec{SchemeKind::fully_sc_sic, 0}, SchemeSpec{SchemeKind::noma, 6},
                       SchemeSpec{SchemeKind::noma, 4}, SchemeSpec{SchemeKind::noma, 2},
                       SchemeSpec{SchemeKind::fdma, 0}};
    }

    if (doc.contains("sweep"))
    {
        const json &js = doc["sweep"];
        const json &var = require(js, "variable", ctx + ".sweep");
        const std::string v = var.is_string() ? var.get<std::string>() : "";
        if (v == "min_rate_bps")
            cfg.sweep_variable = SweepVariable::min_rate_bps;
        else if (v == "num_users")
            cfg.sweep_variable = SweepVariable::num_users;
        else
            fail(ctx, "field 'sweep.variable' must be min_rate_bps or num_users");
        const json &vals = require(js, "values", ctx + ".sweep");
        if (!vals.is_array() || vals.empty())
            fail(ctx, "field 'sweep.values' must be a non-empty array");
        for (const auto &x : vals)
        {
            if (!x.is_number())
                fail(ctx, "field 'sweep.values' must contain numbers only");
            cfg.sweep_values.push_back(x.get<double>());
        }
    }
    else
    {
        cfg.sweep_variable = SweepVariable::min_rate_bps;
        for (int i = 1; i <= 20; ++i)
            cfg.sweep_values.push_back(0.25e6 * i);
    }

    cfg.fixed_min_rate_bps = doc.value("fixed_min_rate_bps", cfg.fixed_min_rate_bps);
    cfg.fixed_num_users = doc.value("fixed_num_users", cfg.fixed_num_users);
    cfg.trials = doc.value("trials", cfg.trials);
    cfg.output_path = doc.value("output_path", cfg.output_path);
    cfg.eps = doc.value("eps", cfg.eps);
    cfg.max_iter = doc.value("max_iter", cfg.max_iter);
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string &path)
{
    return parse_experiment_config(load_json(path));
}

json solution_to_json(const ProblemInstance &instance, const PowerSolution &solution)
{
    json out;
    out["feasible"] = true;
    out["converged"] = solution.converged;
    out["iterations"] = solution.iterations;
    out["dual_nu"] = solution.dual_nu;

    json clusters = json::array();
    for (std::size_t n = 0; n < instance.clusters.size(); ++n)
        clusters.push_back({{"subchannel_id", instance.clusters[n].subchannel_id},
                            {"budget_watt",
                             solution.cluster_budgets_watt[static_cast<Eigen::Index>(n)]}});
    out["clusters"] = clusters;

    double sum_rate = 0.0;
    json users = json::array();
    for (const auto &[id, p] : solution.powers_watt)
    {
        const double r = solution.rates_bps.at(id);
        users.push_back({{"user_id", id}, {"power_watt", p}, {"rate_bps", r}});
        sum_rate += r;
    }
    out["users"] = users;
    out["sum_rate_bps"] = sum_rate;
    return out;
}

json feasibility_to_json(const ProblemInstance &instance, const FeasibilityReport &report)
{
    json out;
    out["feasible"] = report.feasible;
    json qmin = json::array();
    for (Eigen::Index n = 0; n < report.cluster_q_min_watt.size(); ++n)
        qmin.push_back(report.cluster_q_min_watt[n]);
    out["cluster_q_min_watt"] = qmin;
    out["p_max_watt"] = instance.p_max_watt;

    if (!report.feasible)
    {
        if (report.violation == Violation::p_mask)
        {
            const auto n = report.cluster_index;
            out["violated"] = "p_mask";
            out["cluster_index"] = n;
            out["p_mask_watt"] = instance.p_mask_watt[n];
            out["message"] = "cluster " + std::to_string(n) + " needs " +
                             std::to_string(report.cluster_q_min_watt[n]) +
                             " W but its mask allows " +
                             std::to_string(instance.p_mask_watt[n]) + " W";
        }
        else
        {
            out["violated"] = "cellular";
            out["message"] = "minimum budgets sum to " +
                             std::to_string(report.cluster_q_min_watt.sum()) +
                             " W, above p_max " + std::to_string(instance.p_max_watt) + " W";
        }
    }
    return out;
}

json verify_report_to_json(const VerifyReport &report)
{
    const auto gap = [](const oracle::OracleReport &r) {
        return json{{"max_abs_gap", r.max_abs_gap},
                    {"max_rel_gap", r.max_rel_gap},
                    {"argmax_case", r.argmax_case}};
    };
    return json{{"instances", report.instances},
                {"budget_gap", gap(report.budget_gap)},
                {"objective_gap", gap(report.objective_gap)},
                {"qmin_gap", gap(report.qmin_gap)},
                {"pass", report.pass}};
}

SolveFileStatus solve_file(const std::string &instance_path, const std::string &output_path,
                           double eps, int max_iter)
{
    const ProblemInstance instance = load_problem_instance(instance_path);
    const SolveResult res = solve(instance, eps, max_iter);

    const json doc = res.solution ? solution_to_json(instance, *res.solution)
                                  : feasibility_to_json(instance, res.feasibility);
    const std::string text = doc.dump(2) + "\n";

    if (output_path.empty())
    {
        std::cout << text;
    }
    else
    {
        std::ofstream f(output_path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open '" + output_path + "' for writing");
        f << text;
        if (!f)
            throw std::runtime_error("write failed for '" + output_path + "'");
    }
    return res.solution ? SolveFileStatus::solved : SolveFileStatus::infeasible;
}

} // namespace nomawf
