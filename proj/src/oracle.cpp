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

#include "nomawf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nomawf::oracle
{

namespace
{
    // bisect rate(powers with powers[k] = p, k) == demand for p
    double tight_power(const ClusterInstance &cluster, Eigen::ArrayXd &powers, Eigen::Index k)
    {
        const double demand = cluster.users[static_cast<std::size_t>(k)].min_rate_bps;
        if (demand == 0.0)
            return 0.0;

        const auto rate_at = [&](double p) {
            powers[k] = p;
            return rate(cluster, powers, k);
        };

        double hi = 1.0;
        while (rate_at(hi) < demand && hi < 1e300)
            hi *= 2.0;
        double lo = 0.0;
        for (int it = 0; it < 200 && (hi - lo) > 1e-16 * hi; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            if (rate_at(mid) < demand)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }
} // namespace

double qmin_by_bisection(const ClusterInstance &cluster)
{
    Eigen::ArrayXd powers = Eigen::ArrayXd::Zero(cluster.size());
    for (Eigen::Index k = cluster.size() - 1; k >= 0; --k)
        powers[k] = tight_power(cluster, powers, k);
    return powers.sum();
}

GridSearchResult grid_search_intra(const ClusterInstance &cluster, double q_watt,
                                   int grid_points)
{
    const Eigen::Index m = cluster.size();
    if (m > 3)
        throw std::invalid_argument("grid_search_intra handles clusters of size <= 3");
    if (grid_points < 1)
        throw std::invalid_argument("grid_points must be >= 1");

    GridSearchResult best;
    const auto consider = [&](const Eigen::ArrayXd &p) {
        for (Eigen::Index k = 0; k < m; ++k)
        {
            const double demand = cluster.users[static_cast<std::size_t>(k)].min_rate_bps;
            if (rate(cluster, p, k) < demand * (1.0 - 1e-12))
                return;
        }
        const double sum = cluster_sum_rate(cluster, p);
        if (!best.found || sum > best.sum_rate_bps)
        {
            best.found = true;
            best.powers_watt = p;
            best.sum_rate_bps = sum;
        }
    };

    const double step = q_watt / grid_points;
    Eigen::ArrayXd p(m);
    if (m == 1)
    {
        p[0] = q_watt;
        consider(p);
    }
    else if (m == 2)
    {
        for (int i = 0; i <= grid_points; ++i)
        {
            p[0] = step * i;
            p[1] = q_watt - p[0];
            consider(p);
        }
    }
    else
    {
        for (int i = 0; i <= grid_points; ++i)
            for (int j = 0; i + j <= grid_points; ++j)
            {
                p[0] = step * i;
                p[1] = step * j;
                p[2] = std::max(0.0, q_watt - p[0] - p[1]);
                consider(p);
            }
    }
    return best;
}

Eigen::ArrayXd breakpoint_waterfill(const std::vector<VirtualUser> &virtual_users,
                                    double p_max_shifted_watt)
{
    const auto n = static_cast<Eigen::Index>(virtual_users.size());
    if (n < 1)
        throw std::invalid_argument("breakpoint_waterfill needs at least one virtual user");

    Eigen::ArrayXd inv_h(n), lo(n), hi(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const VirtualUser &v = virtual_users[static_cast<std::size_t>(i)];
        inv_h[i] = 1.0 / v.h_eff;
        lo[i] = v.q_min_shifted_watt;
        hi[i] = v.p_mask_shifted_watt;
    }

    if (hi.sum() <= p_max_shifted_watt)
        return hi;
    const double feas_slack = 1e-9 * std::max(1.0, std::abs(p_max_shifted_watt));
    if (lo.sum() > p_max_shifted_watt + feas_slack)
        throw std::invalid_argument("breakpoint_waterfill called on an infeasible instance");

    const auto filled = [&](double level) -> Eigen::ArrayXd {
        return (level - inv_h).max(lo).min(hi);
    };

    // water levels where some box edge activates; between two consecutive
    // levels the total fill is linear in the level
    std::vector<double> levels;
    levels.reserve(static_cast<std::size_t>(2 * n));
    for (Eigen::Index i = 0; i < n; ++i)
    {
        levels.push_back(inv_h[i] + lo[i]);
        levels.push_back(inv_h[i] + hi[i]);
    }
    std::sort(levels.begin(), levels.end());

    if (p_max_shifted_watt <= filled(levels.front()).sum())
        return filled(levels.front()); // everything pinned at its lower edge

    for (std::size_t s = 0; s + 1 < levels.size(); ++s)
    {
        const double a = levels[s];
        const double b = levels[s + 1];
        if (!(b > a))
            continue;
        const double fa = filled(a).sum();
        const double fb = filled(b).sum();
        if (p_max_shifted_watt > fb)
            continue;
        const double level =
            (fb > fa) ? a + (p_max_shifted_watt - fa) * (b - a) / (fb - fa) : a;
        return filled(level);
    }
    return filled(levels.back());
}

} // namespace nomawf::oracle
