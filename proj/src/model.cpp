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

#include "nomawf/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace nomawf
{

namespace
{
    constexpr double INV_LN2 = 1.4426950408889634073599246810;

    void check_user(const UserChannel &u)
    {
        if (!(u.cnr > 0.0) || !std::isfinite(u.cnr))
            throw std::invalid_argument("user " + std::to_string(u.user_id) +
                                        ": cnr must be positive and finite");
        if (u.min_rate_bps < 0.0 || !std::isfinite(u.min_rate_bps))
            throw std::invalid_argument("user " + std::to_string(u.user_id) +
                                        ": min_rate_bps must be nonnegative and finite");
    }
} // namespace

ClusterInstance make_cluster(int subchannel_id, std::vector<UserChannel> users,
                             double bandwidth_hz)
{
    if (users.empty())
        throw std::invalid_argument("cluster must contain at least one user");
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw std::invalid_argument("bandwidth_hz must be positive and finite");

    for (const auto &u : users)
        check_user(u);

    // decoding order: ascending cnr, exact ties broken by user_id (lower id weaker)
    std::sort(users.begin(), users.end(), [](const UserChannel &a, const UserChannel &b) {
        return a.cnr < b.cnr || (a.cnr == b.cnr && a.user_id < b.user_id);
    });

    for (std::size_t i = 1; i < users.size(); ++i)
        if (users[i - 1].user_id == users[i].user_id)
            throw std::invalid_argument("duplicate user_id " +
                                        std::to_string(users[i].user_id) + " in cluster");

    return ClusterInstance{subchannel_id, std::move(users), bandwidth_hz};
}

ProblemInstance make_problem(std::vector<ClusterInstance> clusters, double p_max_watt,
                             Eigen::ArrayXd p_mask_watt)
{
    if (clusters.empty())
        throw std::invalid_argument("problem must contain at least one cluster");
    if (!(p_max_watt > 0.0) || !std::isfinite(p_max_watt))
        throw std::invalid_argument("p_max_watt must be positive and finite");
    if (p_mask_watt.size() != static_cast<Eigen::Index>(clusters.size()))
        throw std::invalid_argument("p_mask_watt needs one entry per cluster");
    for (Eigen::Index n = 0; n < p_mask_watt.size(); ++n)
        if (!(p_mask_watt[n] > 0.0) || !std::isfinite(p_mask_watt[n]))
            throw std::invalid_argument("p_mask_watt[" + std::to_string(n) +
                                        "] must be positive and finite");

    const double ws = clusters.front().bandwidth_hz;
    std::set<int> seen;
    for (const auto &cl : clusters)
    {
        if (cl.bandwidth_hz != ws)
            throw std::invalid_argument("all clusters must share the same bandwidth (equal split)");
        for (const auto &u : cl.users)
            if (!seen.insert(u.user_id).second)
                throw std::invalid_argument("user " + std::to_string(u.user_id) +
                                            " appears in more than one cluster");
    }

    return ProblemInstance{std::move(clusters), p_max_watt, std::move(p_mask_watt)};
}

double dbm_to_watt(double x_dbm)
{
    return std::pow(10.0, (x_dbm - 30.0) / 10.0);
}

double sinr(const ClusterInstance &cluster, const Eigen::Ref<const Eigen::ArrayXd> &powers_watt,
            Eigen::Index user_index)
{
    const Eigen::Index m = cluster.size();
    if (powers_watt.size() != m)
        throw std::invalid_argument("powers_watt needs one entry per cluster member");
    if (user_index < 0 || user_index >= m)
        throw std::out_of_range("user_index out of range");

    // stronger users (decoded after this one) are the remaining interference
    double interference = 0.0;
    for (Eigen::Index j = user_index + 1; j < m; ++j)
        interference += powers_watt[j];

    const double h = cluster.users[static_cast<std::size_t>(user_index)].cnr;
    return powers_watt[user_index] * h / (interference * h + 1.0);
}

double rate(const ClusterInstance &cluster, const Eigen::Ref<const Eigen::ArrayXd> &powers_watt,
            Eigen::Index user_index)
{
    return cluster.bandwidth_hz * std::log1p(sinr(cluster, powers_watt, user_index)) * INV_LN2;
}

double cluster_sum_rate(const ClusterInstance &cluster,
                        const Eigen::Ref<const Eigen::ArrayXd> &powers_watt)
{
    double sum = 0.0;
    for (Eigen::Index k = 0; k < cluster.size(); ++k)
        sum += rate(cluster, powers_watt, k);
    return sum;
}

} // namespace nomawf
