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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nomawf
{

namespace
{
    constexpr double LN2 = 0.6931471805599453094172321215;

    double head_cnr(const ClusterInstance &cluster) { return cluster.head().cnr; }

    // relative tolerance for budgets handed to the closed form
    constexpr double kBudgetTol = 1e-9;

    void check_budget(double q, double qmin)
    {
        const double slack = kBudgetTol * std::max({qmin, q, 1e-300});
        if (q < qmin - slack)
            throw std::invalid_argument("budget " + std::to_string(q) +
                                        " W below cluster q_min " + std::to_string(qmin) + " W");
    }

    double marginal_utility(double bandwidth_hz, double h_eff, double q_shifted)
    {
        return bandwidth_hz * h_eff / (LN2 * (1.0 + q_shifted * h_eff));
    }
} // namespace

RateFraction rate_fraction(double min_rate_bps, double bandwidth_hz)
{
    RateFraction f;
    f.r = min_rate_bps / bandwidth_hz;
    // expm1 keeps both betas accurate at small demands
    f.beta_pm = std::expm1(f.r * LN2);
    f.beta_sr = -std::expm1(-f.r * LN2);
    return f;
}

double q_min(const ClusterInstance &cluster)
{
    // tight-rate recursion, head downward: every member gets exactly the
    // power that makes its own rate equal its demand given the stronger
    // members' (already fixed) powers
    double assigned = 0.0;
    for (Eigen::Index k = cluster.size() - 1; k >= 0; --k)
    {
        const auto &u = cluster.users[static_cast<std::size_t>(k)];
        const RateFraction f = rate_fraction(u.min_rate_bps, cluster.bandwidth_hz);
        assigned += f.beta_pm * (assigned + 1.0 / u.cnr);
    }
    return assigned;
}

FeasibilityReport feasibility(const ProblemInstance &instance)
{
    FeasibilityReport report;
    const auto n_clusters = static_cast<Eigen::Index>(instance.clusters.size());
    report.cluster_q_min_watt.resize(n_clusters);
    for (Eigen::Index n = 0; n < n_clusters; ++n)
        report.cluster_q_min_watt[n] = q_min(instance.clusters[static_cast<std::size_t>(n)]);

    for (Eigen::Index n = 0; n < n_clusters; ++n)
        if (report.cluster_q_min_watt[n] > instance.p_mask_watt[n])
        {
            report.violation = Violation::p_mask;
            report.cluster_index = n;
            return report;
        }

    if (report.cluster_q_min_watt.sum() > instance.p_max_watt)
    {
        report.violation = Violation::cellular;
        return report;
    }

    report.feasible = true;
    return report;
}

ClusterConstants intra_cluster_constants(const ClusterInstance &cluster)
{
    const Eigen::Index m = cluster.size();
    ClusterConstants cc;
    cc.slope.resize(m);
    cc.intercept.resize(m);

    // running products over members weaker than the current one
    double prod = 1.0;        // prod of (1 - beta_sr,j)
    double weighted = 0.0;    // sum of beta_sr,j / h_j damped by the members in between
    double intercept_sum = 0.0;

    for (Eigen::Index k = 0; k + 1 < m; ++k)
    {
        const auto &u = cluster.users[static_cast<std::size_t>(k)];
        const RateFraction f = rate_fraction(u.min_rate_bps, cluster.bandwidth_hz);
        cc.slope[k] = f.beta_sr * prod;
        cc.intercept[k] = f.beta_sr * (1.0 / u.cnr - weighted);
        intercept_sum += cc.intercept[k];
        weighted = (1.0 - f.beta_sr) * weighted + f.beta_sr / u.cnr;
        prod *= 1.0 - f.beta_sr;
    }

    cc.slope[m - 1] = prod;             // alpha
    cc.intercept[m - 1] = -intercept_sum; // -c
    return cc;
}

VirtualUser make_virtual_user(const ClusterInstance &cluster, double p_mask_watt)
{
    const ClusterConstants cc = intra_cluster_constants(cluster);
    const Eigen::Index m = cluster.size();

    VirtualUser v;
    v.alpha = cc.slope[m - 1];
    v.c_watt = -cc.intercept[m - 1];
    v.h_eff = v.alpha * head_cnr(cluster);
    v.q_min_watt = q_min(cluster);
    const double shift = v.c_watt / v.alpha;
    v.q_min_shifted_watt = std::max(0.0, v.q_min_watt - shift);
    v.p_mask_watt = p_mask_watt;
    v.p_mask_shifted_watt = p_mask_watt - shift;
    v.bandwidth_hz = cluster.bandwidth_hz;
    return v;
}

Eigen::ArrayXd intra_cluster_allocate(const ClusterInstance &cluster, double q_watt)
{
    check_budget(q_watt, q_min(cluster));
    const ClusterConstants cc = intra_cluster_constants(cluster);
    return (cc.slope * q_watt + cc.intercept).max(0.0);
}

double cluster_rate_at_budget(const ClusterInstance &cluster, double q_watt)
{
    check_budget(q_watt, q_min(cluster));
    const ClusterConstants cc = intra_cluster_constants(cluster);
    const Eigen::Index m = cluster.size();

    double demand_sum = 0.0;
    for (Eigen::Index k = 0; k + 1 < m; ++k)
        demand_sum += cluster.users[static_cast<std::size_t>(k)].min_rate_bps;

    const double head_power = std::max(0.0, cc.slope[m - 1] * q_watt + cc.intercept[m - 1]);
    return demand_sum +
           cluster.bandwidth_hz * std::log1p(head_power * head_cnr(cluster)) / LN2;
}

WaterfillResult waterfill(const std::vector<VirtualUser> &virtual_users, double p_max_watt,
                          double eps, int max_iter)
{
    const auto n = static_cast<Eigen::Index>(virtual_users.size());
    if (n < 1)
        throw std::invalid_argument("waterfill needs at least one virtual user");
    if (!(eps > 0.0))
        throw std::invalid_argument("eps must be positive");

    const double ws = virtual_users.front().bandwidth_hz;
    Eigen::ArrayXd inv_h(n), lo(n), hi(n), shift(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const VirtualUser &v = virtual_users[static_cast<std::size_t>(i)];
        if (v.bandwidth_hz != ws)
            throw std::invalid_argument("virtual users must share one subchannel bandwidth");
        if (!(v.h_eff > 0.0))
            throw std::invalid_argument("virtual user h_eff must be positive");
        inv_h[i] = 1.0 / v.h_eff;
        lo[i] = v.q_min_shifted_watt;
        hi[i] = v.p_mask_shifted_watt;
        shift[i] = v.c_watt / v.alpha;
    }

    const double p_max_shifted = p_max_watt - shift.sum();
    const double feas_slack = 1e-9 * std::max(1.0, std::abs(p_max_shifted));
    if ((lo > hi + feas_slack).any() || lo.sum() > p_max_shifted + feas_slack)
        throw std::invalid_argument("waterfill called on an infeasible instance");

    WaterfillResult result;

    // with the equality budget unreachable, the strictly increasing objective
    // saturates every mask
    if (hi.sum() <= p_max_shifted)
    {
        result.budgets_watt = hi + shift;
        double nu = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < n; ++i)
            nu = std::min(nu, marginal_utility(ws, 1.0 / inv_h[i], hi[i]));
        result.dual_nu = nu;
        result.converged = true;
        return result;
    }

    const auto shifted_sum = [&](double nu) {
        const double level = ws / (LN2 * nu);
        return (level - inv_h).max(lo).min(hi).sum();
    };

    // bracket: nu_l floods every box, nu_h drains to the q_min edges
    double nu_l = ws / (LN2 * (p_max_shifted + (inv_h + hi).maxCoeff()));
    double nu_h = ws * (1.0 / inv_h.minCoeff()) / LN2 * 1e6;
    for (int guard = 0; guard < 200 && shifted_sum(nu_l) < p_max_shifted; ++guard)
        nu_l *= 0.5;
    for (int guard = 0; guard < 200 && shifted_sum(nu_h) > p_max_shifted; ++guard)
        nu_h *= 2.0;

    const double denom = std::max(std::abs(p_max_shifted), std::numeric_limits<double>::min());
    double best_nu = 0.5 * (nu_l + nu_h);
    double best_residual = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it)
    {
        const double nu_m = 0.5 * (nu_l + nu_h);
        const double total = shifted_sum(nu_m);
        const double residual = std::abs(p_max_shifted - total) / denom;
        result.iterations = it;
        if (residual < best_residual)
        {
            best_residual = residual;
            best_nu = nu_m;
        }
        if (residual <= eps)
        {
            result.converged = true;
            break;
        }
        if (total < p_max_shifted)
            nu_h = nu_m;
        else
            nu_l = nu_m;
    }

    const double level = ws / (LN2 * best_nu);
    result.budgets_watt = (level - inv_h).max(lo).min(hi) + shift;
    result.dual_nu = best_nu;
    result.residual = best_residual;
    return result;
}

SolveResult solve(const ProblemInstance &instance, double eps, int max_iter)
{
    SolveResult result;
    result.feasibility = feasibility(instance);
    if (!result.feasibility.feasible)
        return result;

    std::vector<VirtualUser> vus;
    vus.reserve(instance.clusters.size());
    for (std::size_t i = 0; i < instance.clusters.size(); ++i)
        vus.push_back(make_virtual_user(instance.clusters[i],
                                        instance.p_mask_watt[static_cast<Eigen::Index>(i)]));

    const WaterfillResult wf = waterfill(vus, instance.p_max_watt, eps, max_iter);

    PowerSolution sol;
    sol.cluster_budgets_watt = wf.budgets_watt;
    sol.dual_nu = wf.dual_nu;
    sol.iterations = wf.iterations;
    sol.converged = wf.converged;

    for (std::size_t i = 0; i < instance.clusters.size(); ++i)
    {
        const ClusterInstance &cluster = instance.clusters[i];
        const Eigen::ArrayXd powers =
            intra_cluster_allocate(cluster, wf.budgets_watt[static_cast<Eigen::Index>(i)]);
        for (Eigen::Index k = 0; k < cluster.size(); ++k)
        {
            const int id = cluster.users[static_cast<std::size_t>(k)].user_id;
            sol.powers_watt[id] = powers[k];
            sol.rates_bps[id] = rate(cluster, powers, k);
        }
    }

    result.solution = std::move(sol);
    return result;
}

} // namespace nomawf
