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

#include "nomawf/grouping.hpp"

#include <cmath>
#include <stdexcept>

namespace nomawf
{

std::string scheme_label(const SchemeSpec &spec)
{
    switch (spec.kind)
    {
    case SchemeKind::fully_sc_sic:
        return "fully_sc_sic";
    case SchemeKind::noma:
        return "noma";
    case SchemeKind::fdma:
        return "fdma";
    }
    throw std::invalid_argument("unknown scheme kind");
}

int num_subchannels(const SchemeSpec &spec, int num_users)
{
    if (num_users < 1)
        throw std::invalid_argument("num_users must be >= 1");
    switch (spec.kind)
    {
    case SchemeKind::fully_sc_sic:
        return 1;
    case SchemeKind::fdma:
        return num_users;
    case SchemeKind::noma:
        if (spec.u_max < 2)
            throw std::invalid_argument("noma requires u_max >= 2");
        return (num_users + spec.u_max - 1) / spec.u_max;
    }
    throw std::invalid_argument("unknown scheme kind");
}

std::vector<ClusterInstance> group_users(const Eigen::MatrixXd &cnrs,
                                         const Eigen::Ref<const Eigen::ArrayXd> &min_rate_bps,
                                         const SchemeSpec &spec, double total_bandwidth_hz)
{
    const int num_users = static_cast<int>(cnrs.rows());
    const int n_sub = static_cast<int>(cnrs.cols());
    if (num_users < 1 || n_sub < 1)
        throw std::invalid_argument("cnr table must be non-empty");
    if (min_rate_bps.size() != num_users)
        throw std::invalid_argument("min_rate_bps needs one entry per user");
    if (num_users < n_sub)
        throw std::invalid_argument("fewer users than subchannels: an empty cluster would result");

    int capacity = 0;
    switch (spec.kind)
    {
    case SchemeKind::fully_sc_sic:
        capacity = num_users;
        break;
    case SchemeKind::fdma:
        capacity = 1;
        break;
    case SchemeKind::noma:
        if (spec.u_max < 2)
            throw std::invalid_argument("noma requires u_max >= 2");
        capacity = spec.u_max;
        break;
    }
    if (static_cast<long>(capacity) * n_sub < num_users)
        throw std::invalid_argument("scheme cannot fit all users: capacity * subchannels < users");

    std::vector<bool> assigned(static_cast<std::size_t>(num_users), false);
    std::vector<std::vector<int>> members(static_cast<std::size_t>(n_sub));
    int remaining = num_users;

    while (remaining > 0)
    {
        for (int n = 0; n < n_sub && remaining > 0; ++n)
        {
            auto &cluster = members[static_cast<std::size_t>(n)];
            if (static_cast<int>(cluster.size()) >= capacity)
                continue;

            // strongest candidate on this subchannel; ties go to the lower id
            int best = -1;
            for (int k = 0; k < num_users; ++k)
                if (!assigned[static_cast<std::size_t>(k)] &&
                    (best < 0 || cnrs(k, n) > cnrs(best, n)))
                    best = k;

            cluster.push_back(best);
            assigned[static_cast<std::size_t>(best)] = true;
            --remaining;
        }
    }

    const double ws = total_bandwidth_hz / static_cast<double>(n_sub);
    std::vector<ClusterInstance> clusters;
    clusters.reserve(static_cast<std::size_t>(n_sub));
    for (int n = 0; n < n_sub; ++n)
    {
        std::vector<UserChannel> users;
        users.reserve(members[static_cast<std::size_t>(n)].size());
        for (int k : members[static_cast<std::size_t>(n)])
            users.push_back(UserChannel{k, cnrs(k, n), min_rate_bps[k]});
        clusters.push_back(make_cluster(n, std::move(users), ws));
    }
    return clusters;
}

} // namespace nomawf
